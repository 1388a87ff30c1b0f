#include "bisyz/core.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace bisyz {

Bidegree BigradedMonomial::bidegree() const {
  long long p = std::accumulate(alpha.begin(), alpha.end(), 0ll);
  long long q = std::accumulate(beta.begin(), beta.end(), 0ll);
  return {p, q};
}

Integer binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  Integer result = 1;
  for (long long i = 1; i <= k; ++i) {
    result *= to_integer(n - k + i);
    result /= to_integer(i);
  }
  return result;
}

long long dim_graded_piece(const Ambient& amb, const Bidegree& deg) {
  if (!deg.effective()) return 0;
  Integer d = binomial(amb.m + deg.p, amb.m) * binomial(amb.n + deg.q, amb.n);
  return d.get_si();
}

bool canonical_less(const BigradedMonomial& u, const BigradedMonomial& v) {
  if (u.alpha != v.alpha)
    return std::lexicographical_compare(v.alpha.begin(), v.alpha.end(),
                                        u.alpha.begin(), u.alpha.end());
  return std::lexicographical_compare(v.beta.begin(), v.beta.end(),
                                      u.beta.begin(), u.beta.end());
}

namespace {

/* Compositions of total into parts slots, largest-first lexicographic. */
void compositions(int total, int parts, std::vector<int>& prefix,
                  std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    prefix.push_back(total);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int head = total; head >= 0; --head) {
    prefix.push_back(head);
    compositions(total - head, parts - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<BigradedMonomial> enumerate_monomials(const Ambient& amb,
                                                  const Bidegree& deg) {
  std::vector<BigradedMonomial> result;
  if (!deg.effective()) return result;
  std::vector<std::vector<int>> alphas, betas;
  std::vector<int> prefix;
  compositions(static_cast<int>(deg.p), amb.m + 1, prefix, alphas);
  compositions(static_cast<int>(deg.q), amb.n + 1, prefix, betas);
  result.reserve(alphas.size() * betas.size());
  for (const auto& a : alphas)
    for (const auto& b : betas) result.push_back({a, b});
  return result;
}

BigradedMonomial monomial_lcm(const BigradedMonomial& u,
                              const BigradedMonomial& v) {
  if (u.alpha.size() != v.alpha.size() || u.beta.size() != v.beta.size())
    throw BisyzError{"monomial_lcm: mismatched ambient"};
  BigradedMonomial out = u;
  for (std::size_t i = 0; i < out.alpha.size(); ++i)
    out.alpha[i] = std::max(out.alpha[i], v.alpha[i]);
  for (std::size_t i = 0; i < out.beta.size(); ++i)
    out.beta[i] = std::max(out.beta[i], v.beta[i]);
  return out;
}

bool monomial_divides(const BigradedMonomial& u, const BigradedMonomial& v) {
  if (u.alpha.size() != v.alpha.size() || u.beta.size() != v.beta.size())
    throw BisyzError{"monomial_divides: mismatched ambient"};
  for (std::size_t i = 0; i < u.alpha.size(); ++i)
    if (u.alpha[i] > v.alpha[i]) return false;
  for (std::size_t i = 0; i < u.beta.size(); ++i)
    if (u.beta[i] > v.beta[i]) return false;
  return true;
}

BigradedMonomial monomial_product(const BigradedMonomial& u,
                                  const BigradedMonomial& v) {
  if (u.alpha.size() != v.alpha.size() || u.beta.size() != v.beta.size())
    throw BisyzError{"monomial_product: mismatched ambient"};
  BigradedMonomial out = u;
  for (std::size_t i = 0; i < out.alpha.size(); ++i) out.alpha[i] += v.alpha[i];
  for (std::size_t i = 0; i < out.beta.size(); ++i) out.beta[i] += v.beta[i];
  return out;
}

long long lcm_twist(const BigradedMonomial& u, const BigradedMonomial& v) {
  const Bidegree lcm_deg = monomial_lcm(u, v).bidegree();
  const Bidegree u_deg = u.bidegree();
  return lcm_deg.total() - u_deg.total();
}

namespace {

Integer ipow(long long base, int exp) {
  Integer out = 1;
  for (int i = 0; i < exp; ++i) out *= to_integer(base);
  return out;
}

}  // namespace

long long top_self_intersection(const Ambient& amb, const Polarization& L) {
  Integer v = binomial(amb.m + amb.n, amb.m) * ipow(L.a, amb.m) *
              ipow(L.b, amb.n);
  return v.get_si();
}

long long mixed_intersection(const Ambient& amb, const Polarization& L,
                             const Bidegree& D) {
  Integer cx = binomial(amb.m + amb.n - 1, amb.m - 1) * ipow(L.a, amb.m - 1) *
               ipow(L.b, amb.n);
  Integer cy = binomial(amb.m + amb.n - 1, amb.m) * ipow(L.a, amb.m) *
               ipow(L.b, amb.n - 1);
  Integer v = cx * to_integer(D.p) + cy * to_integer(D.q);
  return v.get_si();
}

Rational line_bundle_slope(const Ambient& amb, const Polarization& L,
                           const Bidegree& D) {
  return to_rational(mixed_intersection(amb, L, D));
}

BundleNumerics syzygy_bundle_numerics(const Ambient& amb,
                                      const Polarization& L, long long r) {
  if (r < 2) throw PreconditionError{{"syzygy_bundle_numerics: r must be >= 2"}};
  BundleNumerics out;
  out.rank = r - 1;
  out.c1 = {-L.a, -L.b};
  out.slope = to_rational(-top_self_intersection(amb, L), r - 1);
  return out;
}

BigradedMonomial parse_monomial(const std::string& text, const Ambient& amb) {
  BigradedMonomial mono;
  mono.alpha.assign(amb.m + 1, 0);
  mono.beta.assign(amb.n + 1, 0);
  std::size_t i = 0;
  const auto fail = [&](const std::string& what) {
    throw PreconditionError{{"parse_monomial: " + what + " in \"" + text + "\""}};
  };
  const auto read_uint = [&]() -> int {
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
      fail("expected digit");
    long long value = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      value = value * 10 + (text[i] - '0');
      if (value > 1000000) fail("number out of range");
      ++i;
    }
    return static_cast<int>(value);
  };
  bool any_term = false;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*') {
      ++i;
      continue;
    }
    if (text[i] == '1' && !any_term) {
      ++i;
      while (i < text.size() &&
             std::isspace(static_cast<unsigned char>(text[i])))
        ++i;
      if (i != text.size()) fail("unexpected text after constant");
      return mono;
    }
    char var = text[i];
    if (var != 'x' && var != 'y') fail("expected variable");
    ++i;
    int index = read_uint();
    int limit = var == 'x' ? amb.m : amb.n;
    if (index > limit) fail("variable index out of range");
    int exp = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      exp = read_uint();
    }
    if (var == 'x')
      mono.alpha[index] += exp;
    else
      mono.beta[index] += exp;
    any_term = true;
  }
  if (!any_term) fail("empty monomial");
  return mono;
}

std::string monomial_text(const BigradedMonomial& mono) {
  std::ostringstream out;
  bool first = true;
  const auto emit = [&](char var, std::size_t index, int exp) {
    if (exp == 0) return;
    if (!first) out << ' ';
    first = false;
    out << var << index;
    if (exp > 1) out << '^' << exp;
  };
  for (std::size_t i = 0; i < mono.alpha.size(); ++i)
    emit('x', i, mono.alpha[i]);
  for (std::size_t i = 0; i < mono.beta.size(); ++i) emit('y', i, mono.beta[i]);
  if (first) return "1";
  return out.str();
}

std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t seed) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= bytes[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t fnv1a(const std::string& text, std::uint64_t seed) {
  return fnv1a(text.data(), text.size(), seed);
}

std::string hex64(std::uint64_t value) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[value & 0xf];
    value >>= 4;
  }
  return out;
}

}  // namespace bisyz
