#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "bisyz/linsys.hpp"

using namespace bisyz;

namespace {

const Ambient kP1P1{1, 1};
const Polarization kL21{2, 1};

std::vector<BigradedMonomial> parse_all(
    const Ambient& amb, const std::vector<std::string>& texts) {
  std::vector<BigradedMonomial> out;
  for (const auto& text : texts) out.push_back(parse_monomial(text, amb));
  return out;
}

}  // namespace

TEST_CASE("pure power set") {
  const auto pures = pure_power_set(kP1P1, kL21);
  REQUIRE(pures.size() == 4);
  const auto expected = parse_all(
      kP1P1, {"x0^2 y0", "x0^2 y1", "x1^2 y0", "x1^2 y1"});
  for (const auto& mono : expected)
    CHECK(std::count(pures.begin(), pures.end(), mono) == 1);
  for (std::size_t i = 0; i + 1 < pures.size(); ++i)
    CHECK(canonical_less(pures[i], pures[i + 1]));

  CHECK(pure_power_set(Ambient{2, 3}, Polarization{3, 2}).size() == 12);
}

TEST_CASE("monomial system construction validates and sorts") {
  auto support = parse_all(
      kP1P1, {"x1^2 y1", "x0^2 y0", "x0 x1 y0", "x0^2 y1", "x1^2 y0"});
  const LinearSystem sys = make_monomial_system(kP1P1, kL21, support);
  CHECK(sys.r() == 5);
  CHECK(sys.kind == SystemKind::Monomial);
  for (std::size_t i = 0; i + 1 < sys.support.size(); ++i)
    CHECK(canonical_less(sys.support[i], sys.support[i + 1]));

  SUBCASE("wrong bidegree is rejected") {
    support.push_back(parse_monomial("x0 y0", kP1P1));
    CHECK_THROWS_AS(make_monomial_system(kP1P1, kL21, support),
                    PreconditionError);
  }
  SUBCASE("duplicates are rejected") {
    support.push_back(parse_monomial("x0^2 y0", kP1P1));
    CHECK_THROWS_AS(make_monomial_system(kP1P1, kL21, support),
                    PreconditionError);
  }
  SUBCASE("wrong ambient is rejected") {
    support.push_back(parse_monomial("x0^2 x2^0 y0", Ambient{2, 1}));
    CHECK_THROWS_AS(make_monomial_system(kP1P1, kL21, support),
                    PreconditionError);
  }
}

TEST_CASE("basepoint-freeness of monomial systems") {
  const auto pures = pure_power_set(kP1P1, kL21);
  CHECK(basepoint_free(make_monomial_system(kP1P1, kL21, pures)).kind ==
        BpfStatus::Kind::Certified);

  auto missing_corner = parse_all(kP1P1, {"x0^2 y0", "x0^2 y1", "x1^2 y0"});
  const auto status =
      basepoint_free(make_monomial_system(kP1P1, kL21, missing_corner));
  CHECK(status.kind == BpfStatus::Kind::RefutedAtTorusFixedPoint);
  CHECK(status.i == 1);
  CHECK(status.j == 1);

  auto v1 = pures;
  v1.push_back(parse_monomial("x0 x1 y0", kP1P1));
  const LinearSystem sys = make_monomial_system(kP1P1, kL21, v1);
  CHECK(basepoint_free(sys).kind == BpfStatus::Kind::Certified);
  CHECK_NOTHROW(require_basepoint_free(sys));
  CHECK_THROWS_AS(
      require_basepoint_free(
          make_monomial_system(kP1P1, kL21, missing_corner)),
      PreconditionError);
}

TEST_CASE("random general systems are reproducible") {
  const auto support = enumerate_monomials(kP1P1, Bidegree{2, 1});
  const LinearSystem one = random_general_system(kP1P1, kL21, support, 4, 42);
  const LinearSystem two = random_general_system(kP1P1, kL21, support, 4, 42);
  const LinearSystem other =
      random_general_system(kP1P1, kL21, support, 4, 43);
  CHECK(one.r() == 4);
  CHECK(one.kind == SystemKind::General);
  CHECK(one.coeffs == two.coeffs);
  CHECK(one.coeffs != other.coeffs);
  CHECK(one.has_seed);
  CHECK(one.seed == 42);
  for (const auto& row : one.coeffs) {
    CHECK(row.size() == support.size());
    const Integer bound = to_integer(kCoeffRange);
    for (const Integer& value : row) {
      CHECK(value <= bound);
      CHECK(value >= -bound);
    }
  }
  CHECK(basepoint_free(one).kind == BpfStatus::Kind::AssertedGeneric);
}

TEST_CASE("general systems over a prime field") {
  const auto support = enumerate_monomials(kP1P1, Bidegree{2, 1});
  const LinearSystem sys =
      random_general_system(kP1P1, kL21, support, 4, 7, 101);
  CHECK(sys.field_prime == 101);
  CHECK(sys.r() == 4);
}

TEST_CASE("system JSON round trip") {
  auto v1 = pure_power_set(kP1P1, kL21);
  v1.push_back(parse_monomial("x0 x1 y0", kP1P1));
  const LinearSystem mono = make_monomial_system(kP1P1, kL21, v1);
  const LinearSystem mono_back = linear_system_from_json(
      linear_system_json(mono));
  CHECK(mono_back.ambient.m == 1);
  CHECK(mono_back.ambient.n == 1);
  CHECK(mono_back.polarization.a == 2);
  CHECK(mono_back.polarization.b == 1);
  CHECK(mono_back.kind == SystemKind::Monomial);
  CHECK(mono_back.support == mono.support);

  const auto support = enumerate_monomials(kP1P1, Bidegree{2, 1});
  const LinearSystem gen =
      random_general_system(kP1P1, kL21, support, 4, 42, 101);
  const LinearSystem gen_back =
      linear_system_from_json(linear_system_json(gen));
  CHECK(gen_back.kind == SystemKind::General);
  CHECK(gen_back.coeffs == gen.coeffs);
  CHECK(gen_back.field_prime == 101);
  CHECK(gen_back.has_seed);
  CHECK(gen_back.seed == 42);
}
