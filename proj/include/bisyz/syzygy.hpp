#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bisyz/core.hpp"
#include "bisyz/linalg.hpp"
#include "bisyz/linsys.hpp"
#include "json.hpp"

namespace bisyz {

struct TwistQuery {
  long long q = 1;
  Bidegree twist;
};

struct SyzygyProfile {
  std::string system_id;
  /* (twist, h0) sorted by (x+y, x). */
  std::vector<std::pair<Bidegree, long long>> table;
  long long t_min = 0;
  bool has_mingens = false;
  /* (twist, count) sorted by (x+y, x), counts > 0 only. */
  std::vector<std::pair<Bidegree, long long>> mingens;
  bool truncated = false;
  long long truncated_at = 0;
};

std::string system_hash(const LinearSystem& sys);

/* h⁰(M_V(x,y)) = dim ker(⊕_i R_(x,y)·e_i → R_(a+x,b+y)); 0 off the
   effective cone. */
long long h0_twist(const LinearSystem& sys, const Bidegree& twist);

/* h⁰(⋀^q M_V(x,y)) via the Koszul contraction kernel; q = 1 agrees with
   h0_twist, q = r-1 with dim R_(x-a,y-b). */
long long h0_wedge_twist(const LinearSystem& sys, const TwistQuery& query);

/* Matrix of ⋀^q V⊗R_(x,y) -> ⋀^{q-1} V⊗R_(a+x,b+y), e_S⊗g ↦
   Σ_j (-1)^{j-1} e_{S∖i_j}⊗f_{i_j}g; exposed for chain-property tests. */
QMatrix koszul_contraction_matrix(const LinearSystem& sys, long long q,
                                  const Bidegree& twist);

/* t_min = least x+y >= 1 with h0_twist > 0; at most a+b. */
long long min_syzygy_total_degree(const LinearSystem& sys);

/* For monomial systems max pairwise lcm twist (the Taylor bound), else a+b. */
long long default_generator_bound(const LinearSystem& sys);

/* Minimal generator counts of the syzygy module by twist, for twists of
   total degree <= bound. */
std::vector<std::pair<Bidegree, long long>> minimal_generator_bidegrees(
    const LinearSystem& sys, long long bound);

SyzygyProfile syzygy_profile(const LinearSystem& sys, long long table_bound,
                             bool with_mingens, long long mingens_bound);

nlohmann::json syzygy_profile_json(const SyzygyProfile& profile);

}  // namespace bisyz
