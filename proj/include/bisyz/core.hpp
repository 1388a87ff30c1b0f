#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace bisyz {

using Rational = mpq_class;
using Integer = mpz_class;

/* gmpxx has no long long overloads; long is 64-bit on every supported
   platform, so routing through it is lossless. */
inline Integer to_integer(long long value) {
  return Integer(static_cast<long>(value));
}

inline Rational to_rational(long long num, long long den = 1) {
  Rational value(to_integer(num), to_integer(den));
  value.canonicalize();
  return value;
}

/* First factor dimension m, second factor dimension n; both >= 1. */
struct Ambient {
  int m = 1;
  int n = 1;
  int dim() const { return m + n; }
  bool operator==(const Ambient&) const = default;
};

/* Bidegree (a,b) of the polarization, a,b >= 1. */
struct Polarization {
  int a = 1;
  int b = 1;
  bool operator==(const Polarization&) const = default;
};

/* An arbitrary integer bidegree (p,q); effectivity means p,q >= 0. */
struct Bidegree {
  long long p = 0;
  long long q = 0;
  bool effective() const { return p >= 0 && q >= 0; }
  long long total() const { return p + q; }
  bool operator==(const Bidegree&) const = default;
};

/* Monomial x_0^{alpha_0}..x_m^{alpha_m} y_0^{beta_0}..y_n^{beta_n}. */
struct BigradedMonomial {
  std::vector<int> alpha;
  std::vector<int> beta;
  Bidegree bidegree() const;
  bool operator==(const BigradedMonomial&) const = default;
};

/* rank = r-1, c1 = (-a,-b), slope = -L^{m+n}/(r-1), exact. */
struct BundleNumerics {
  long long rank = 0;
  Bidegree c1;
  Rational slope;
};

Integer binomial(long long n, long long k);

long long dim_graded_piece(const Ambient& amb, const Bidegree& deg);

/* Canonical order: lexicographic on the concatenated exponent vector,
   largest first; x0^a y0^b precedes everything else of its bidegree. */
bool canonical_less(const BigradedMonomial& u, const BigradedMonomial& v);

std::vector<BigradedMonomial> enumerate_monomials(const Ambient& amb,
                                                  const Bidegree& deg);

BigradedMonomial monomial_lcm(const BigradedMonomial& u,
                              const BigradedMonomial& v);
bool monomial_divides(const BigradedMonomial& u, const BigradedMonomial& v);
BigradedMonomial monomial_product(const BigradedMonomial& u,
                                  const BigradedMonomial& v);

/* Total degree of lcm(u,v) minus the common bidegree total; for two
   monomials of bidegree (a,b) this is the twist of their Koszul syzygy. */
long long lcm_twist(const BigradedMonomial& u, const BigradedMonomial& v);

long long top_self_intersection(const Ambient& amb, const Polarization& L);

/* D.L^{m+n-1} = C(m+n-1,m-1) a^{m-1} b^n x + C(m+n-1,m) a^m b^{n-1} y. */
long long mixed_intersection(const Ambient& amb, const Polarization& L,
                             const Bidegree& D);

Rational line_bundle_slope(const Ambient& amb, const Polarization& L,
                           const Bidegree& D);

BundleNumerics syzygy_bundle_numerics(const Ambient& amb,
                                      const Polarization& L, long long r);

/* Grammar: term (ws term)*, term = ('x'|'y') index ('^' exp)?.
   Unmentioned variables get exponent 0; "1" denotes degree (0,0). */
BigradedMonomial parse_monomial(const std::string& text, const Ambient& amb);
std::string monomial_text(const BigradedMonomial& mono);

std::uint64_t fnv1a(const void* data, std::size_t size,
                    std::uint64_t seed = 14695981039346656037ull);
std::uint64_t fnv1a(const std::string& text,
                    std::uint64_t seed = 14695981039346656037ull);
std::string hex64(std::uint64_t value);

struct BisyzError {
  std::string message;
};

/* Violated preconditions (range, bpf, grammar); CLI exit code 2. */
struct PreconditionError : BisyzError {};

}  // namespace bisyz
