#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bisyz/core.hpp"
#include "json.hpp"

namespace bisyz {

/* Tangent data of the moduli point of the syzygy bundle, conditional on
   stability (recorded, never checked here). */
struct ModuliReport {
  Ambient ambient;
  Polarization polarization;
  long long r = 0;
  long long h0 = 0;
  bool complete = false;
  /* a: dim >= 4; b: dim 3 complete; c: dim 3 non-complete; d: dim 2. */
  std::string case_label;
  std::vector<std::pair<std::string, long long>> hypotheses;
  bool smooth_point = true;
  /* Case c with h3(O(-L)) != 0: the smoothness hypothesis fails, so the
     conclusion is unknown rather than negated. */
  bool smooth_not_established = false;
  long long tangent_dim = 0;
  bool rigid = false;
  bool assumes_stable = true;
};

/* h^i(P^n, O(d)): C(n+d,n) at i=0 for d>=0, C(-d-1,n) at i=n for
   d<=-n-1, zero otherwise. */
long long h_projective(int n, long long d, int i);

/* Künneth: sum over i1+i2=i of h^{i1}(P^m,O(p))·h^{i2}(P^n,O(q)). */
long long h_product(const Ambient& amb, const Bidegree& deg, int i);

/* Tangent dimension r(h0-r), plus r·h2(O(-a,-b)) on two-dimensional
   products; requires m+n+1 <= r <= h0. */
ModuliReport moduli_tangent_dim(const Ambient& amb, const Polarization& L,
                                long long r);

nlohmann::json moduli_report_json(const ModuliReport& report);

}  // namespace bisyz
