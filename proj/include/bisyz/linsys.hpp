#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bisyz/core.hpp"
#include "json.hpp"

namespace bisyz {

enum class SystemKind { Monomial, General };

/* Coefficient entries are sampled uniformly from [-kCoeffRange, kCoeffRange]. */
inline constexpr long long kCoeffRange = 1000000;

struct BpfStatus {
  enum class Kind {
    Certified,
    RefutedAtTorusFixedPoint,
    AssertedGeneric,
    Unknown
  };
  Kind kind = Kind::Unknown;
  int i = -1;  // witness indices, set iff refuted
  int j = -1;
  std::string text() const;
  bool operator==(const BpfStatus&) const = default;
};

struct LinearSystem {
  Ambient ambient;
  Polarization polarization;
  SystemKind kind = SystemKind::Monomial;
  /* Canonical order, pairwise distinct, all of bidegree (a,b). */
  std::vector<BigradedMonomial> support;
  /* r x |support|, present iff kind == General; full row rank. */
  std::vector<std::vector<Integer>> coeffs;
  std::uint64_t field_prime = 0;  // 0 means rationals
  bool has_seed = false;
  std::uint64_t seed = 0;
  int seed_retries = 0;

  long long r() const {
    return kind == SystemKind::Monomial
               ? static_cast<long long>(support.size())
               : static_cast<long long>(coeffs.size());
  }
};

/* Validates bidegrees, rejects duplicates, sorts the support canonically. */
LinearSystem make_monomial_system(const Ambient& amb, const Polarization& L,
                                  std::vector<BigradedMonomial> monomials);

/* Same support validation; coefficient rows must have length |support| and
   exact row rank r (over Q, or over F_p when field_prime != 0). */
LinearSystem make_general_system(const Ambient& amb, const Polarization& L,
                                 std::vector<BigradedMonomial> support,
                                 std::vector<std::vector<Integer>> coeffs,
                                 std::uint64_t field_prime = 0);

/* The (m+1)(n+1) monomials x_i^a y_j^b in canonical order. */
std::vector<BigradedMonomial> pure_power_set(const Ambient& amb,
                                             const Polarization& L);

BpfStatus basepoint_free_monomial(const LinearSystem& sys);
BpfStatus basepoint_free_general(const LinearSystem& sys);
BpfStatus basepoint_free(const LinearSystem& sys);

/* Throws PreconditionError when basepoint-freeness fails (monomial systems
   must be Certified; general systems must not be refuted). */
void require_basepoint_free(const LinearSystem& sys);

/* Pure function of (support, r, seed); retries seed+k on rank failure and
   records k in seed_retries. */
LinearSystem random_general_system(const Ambient& amb, const Polarization& L,
                                   std::vector<BigradedMonomial> support,
                                   long long r, std::uint64_t seed,
                                   std::uint64_t field_prime = 0);

nlohmann::json linear_system_json(const LinearSystem& sys);
LinearSystem linear_system_from_json(const nlohmann::json& doc);

}  // namespace bisyz
