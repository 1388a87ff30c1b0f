#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "bisyz/core.hpp"

using namespace bisyz;

TEST_CASE("binomial coefficients") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(10, 5) == 252);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(6, 0) == 1);
  CHECK(binomial(52, 26) == Integer("495918532948104"));
}

TEST_CASE("graded piece dimensions") {
  CHECK(dim_graded_piece(Ambient{1, 1}, Bidegree{2, 1}) == 6);
  CHECK(dim_graded_piece(Ambient{2, 3}, Bidegree{5, 2}) == 210);
  CHECK(dim_graded_piece(Ambient{1, 1}, Bidegree{0, 0}) == 1);
  CHECK(dim_graded_piece(Ambient{2, 2}, Bidegree{-1, 3}) == 0);
  CHECK(dim_graded_piece(Ambient{2, 2}, Bidegree{3, -1}) == 0);
}

TEST_CASE("monomial enumeration is canonical, complete, duplicate-free") {
  for (int m = 1; m <= 2; ++m)
    for (int n = 1; n <= 2; ++n)
      for (long long a = 0; a <= 3; ++a)
        for (long long b = 0; b <= 2; ++b) {
          const Ambient amb{m, n};
          const Bidegree deg{a, b};
          const auto monos = enumerate_monomials(amb, deg);
          CHECK(static_cast<long long>(monos.size()) ==
                dim_graded_piece(amb, deg));
          for (std::size_t i = 0; i + 1 < monos.size(); ++i)
            CHECK(canonical_less(monos[i], monos[i + 1]));
          for (const auto& mono : monos) {
            CHECK(mono.bidegree().p == a);
            CHECK(mono.bidegree().q == b);
          }
        }
}

TEST_CASE("monomial lattice operations") {
  const Ambient amb{1, 1};
  const auto u = parse_monomial("x0^2 y0", amb);
  const auto v = parse_monomial("x1^2 y1", amb);
  const auto w = parse_monomial("x0 x1 y0", amb);
  CHECK(monomial_lcm(u, v) == parse_monomial("x0^2 x1^2 y0 y1", amb));
  CHECK(monomial_divides(w, monomial_lcm(u, w)));
  CHECK_FALSE(monomial_divides(v, monomial_lcm(u, w)));
  CHECK(monomial_product(u, v) == parse_monomial("x0^2 x1^2 y0 y1", amb));
  CHECK(lcm_twist(u, v) == 3);
  CHECK(lcm_twist(u, w) == 1);
  CHECK(lcm_twist(u, u) == 0);
}

TEST_CASE("intersection numbers") {
  CHECK(top_self_intersection(Ambient{1, 1}, Polarization{2, 1}) == 4);
  CHECK(top_self_intersection(Ambient{2, 3}, Polarization{5, 2}) == 2000);
  CHECK(mixed_intersection(Ambient{1, 1}, Polarization{2, 1},
                           Bidegree{1, 0}) == 1);
  CHECK(mixed_intersection(Ambient{1, 1}, Polarization{2, 1},
                           Bidegree{0, 1}) == 2);
  SUBCASE("L itself closes the top power") {
    for (int m = 1; m <= 3; ++m)
      for (int n = 1; n <= 3; ++n)
        for (int a = 1; a <= 4; ++a)
          for (int b = 1; b <= 4; ++b) {
            const Ambient amb{m, n};
            const Polarization L{a, b};
            CHECK(mixed_intersection(amb, L, Bidegree{a, b}) ==
                  top_self_intersection(amb, L));
          }
  }
}

TEST_CASE("bundle numerics") {
  const auto five = syzygy_bundle_numerics(Ambient{1, 1}, Polarization{2, 1}, 5);
  CHECK(five.rank == 4);
  CHECK(five.c1.p == -2);
  CHECK(five.c1.q == -1);
  CHECK(five.slope == to_rational(-1));
  CHECK(syzygy_bundle_numerics(Ambient{1, 1}, Polarization{1, 1}, 7).slope ==
        to_rational(-1, 3));
  CHECK(syzygy_bundle_numerics(Ambient{1, 1}, Polarization{2, 1}, 2).slope ==
        to_rational(-4));
  CHECK_THROWS_AS(syzygy_bundle_numerics(Ambient{1, 1}, Polarization{2, 1}, 1),
                  PreconditionError);
}

TEST_CASE("slope of a twist line bundle") {
  CHECK(line_bundle_slope(Ambient{1, 1}, Polarization{2, 1}, Bidegree{-1, 0}) ==
        to_rational(-1));
  CHECK(line_bundle_slope(Ambient{2, 2}, Polarization{1, 1}, Bidegree{0, 0}) ==
        to_rational(0));
}

TEST_CASE("monomial text round trip") {
  for (const Ambient amb : {Ambient{1, 1}, Ambient{2, 1}, Ambient{1, 2}}) {
    for (const auto& mono : enumerate_monomials(amb, Bidegree{2, 2})) {
      CHECK(parse_monomial(monomial_text(mono), amb) == mono);
    }
  }
  const Ambient amb{1, 1};
  CHECK(monomial_text(parse_monomial("1", amb)) == "1");
  CHECK(parse_monomial("x0*x1*y0", amb) ==
        parse_monomial("x0 x1 y0", amb));
  CHECK(parse_monomial("x0 x0 y0^2", amb) ==
        parse_monomial("x0^2 y0^2", amb));
}

TEST_CASE("monomial grammar rejections") {
  const Ambient amb{1, 1};
  CHECK_THROWS_AS(parse_monomial("z0", amb), PreconditionError);
  CHECK_THROWS_AS(parse_monomial("x2", amb), PreconditionError);
  CHECK_THROWS_AS(parse_monomial("x0^", amb), PreconditionError);
  CHECK_THROWS_AS(parse_monomial("x", amb), PreconditionError);
  CHECK_THROWS_AS(parse_monomial("", amb), PreconditionError);
  CHECK_THROWS_AS(parse_monomial("1 x0", amb), PreconditionError);
}

TEST_CASE("fnv1a hashing") {
  CHECK(hex64(fnv1a(std::string{})) == "cbf29ce484222325");
  CHECK(fnv1a(std::string("a")) != fnv1a(std::string("b")));
  CHECK(hex64(0) == "0000000000000000");
}

TEST_CASE("exact integer helpers") {
  CHECK(to_integer(-3) == Integer(-3));
  CHECK(to_rational(1, 3) + to_rational(2, 3) == to_rational(1));
  CHECK(to_rational(2, 4) == to_rational(1, 2));
}
