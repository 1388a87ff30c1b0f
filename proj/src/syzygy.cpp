#include "bisyz/syzygy.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace bisyz {

namespace {

std::size_t basis_index(const std::vector<BigradedMonomial>& basis,
                        const BigradedMonomial& mono) {
  auto it = std::lower_bound(basis.begin(), basis.end(), mono, canonical_less);
  if (it == basis.end() || !(*it == mono))
    throw BisyzError{"basis_index: monomial not in basis"};
  return static_cast<std::size_t>(it - basis.begin());
}

/* All k-subsets of {0..r-1} in lexicographic order. */
std::vector<std::vector<int>> lex_subsets(int r, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > r) return out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    int pos = k - 1;
    while (pos >= 0 && cur[pos] == r - k + pos) --pos;
    if (pos < 0) break;
    ++cur[pos];
    for (int i = pos + 1; i < k; ++i) cur[i] = cur[i - 1] + 1;
  }
  return out;
}

std::size_t subset_index(const std::vector<std::vector<int>>& subsets,
                         const std::vector<int>& subset) {
  auto it = std::lower_bound(subsets.begin(), subsets.end(), subset);
  if (it == subsets.end() || *it != subset)
    throw BisyzError{"subset_index: subset not found"};
  return static_cast<std::size_t>(it - subsets.begin());
}

/* Zero kernel mod p proves zero kernel over Q; a nonzero answer is
   recomputed with exact rational rank. */
long long kernel_dim_hybrid(const QMatrix& mat, std::uint64_t field_prime) {
  if (mat.cols == 0) return 0;
  if (mat.rows == 0) return static_cast<long long>(mat.cols);
  if (field_prime != 0) {
    PMatrix reduced = reduce_mod_p(mat, field_prime);
    return static_cast<long long>(mat.cols - rank(std::move(reduced)));
  }
  PMatrix prescan = reduce_mod_p(mat, kDefaultPrime);
  std::size_t rank_p = rank(std::move(prescan));
  if (rank_p == mat.cols) return 0;
  return static_cast<long long>(mat.cols - rank(mat));
}

/* Coefficient of support monomial s in section i. */
struct SectionTerms {
  const LinearSystem& sys;
  std::vector<std::pair<std::size_t, Integer>> operator()(long long i) const {
    std::vector<std::pair<std::size_t, Integer>> terms;
    if (sys.kind == SystemKind::Monomial) {
      terms.emplace_back(static_cast<std::size_t>(i), Integer(1));
    } else {
      for (std::size_t s = 0; s < sys.support.size(); ++s)
        if (sys.coeffs[i][s] != 0) terms.emplace_back(s, sys.coeffs[i][s]);
    }
    return terms;
  }
};

}  // namespace

std::string system_hash(const LinearSystem& sys) {
  return hex64(fnv1a(linear_system_json(sys).dump()));
}

QMatrix koszul_contraction_matrix(const LinearSystem& sys, long long q,
                                  const Bidegree& twist) {
  const long long r = sys.r();
  if (q < 1 || q > r - 1)
    throw PreconditionError{{"koszul_contraction_matrix: q out of range"}};
  if (!twist.effective())
    throw BisyzError{"koszul_contraction_matrix: twist not effective"};
  const Ambient& amb = sys.ambient;
  const Polarization& L = sys.polarization;
  Bidegree target{L.a + twist.p, L.b + twist.q};
  std::vector<BigradedMonomial> dom = enumerate_monomials(amb, twist);
  std::vector<BigradedMonomial> img = enumerate_monomials(amb, target);
  std::vector<std::vector<int>> cols_sets =
      lex_subsets(static_cast<int>(r), static_cast<int>(q));
  std::vector<std::vector<int>> rows_sets =
      lex_subsets(static_cast<int>(r), static_cast<int>(q - 1));
  QMatrix mat(rows_sets.size() * img.size(), cols_sets.size() * dom.size());
  SectionTerms terms{sys};
  for (std::size_t si = 0; si < cols_sets.size(); ++si) {
    const std::vector<int>& subset = cols_sets[si];
    for (std::size_t j = 0; j < subset.size(); ++j) {
      int sign = (j % 2 == 0) ? 1 : -1;
      std::vector<int> rest;
      rest.reserve(subset.size() - 1);
      for (std::size_t t = 0; t < subset.size(); ++t)
        if (t != j) rest.push_back(subset[t]);
      std::size_t rest_idx = subset_index(rows_sets, rest);
      for (const auto& [s, coeff] : terms(subset[j])) {
        const BigradedMonomial& mono = sys.support[s];
        for (std::size_t ui = 0; ui < dom.size(); ++ui) {
          BigradedMonomial prod = monomial_product(mono, dom[ui]);
          std::size_t wi = basis_index(img, prod);
          std::size_t row = rest_idx * img.size() + wi;
          std::size_t col = si * dom.size() + ui;
          mat.at(row, col) += sign * mpq_class(coeff);
          mat.at(row, col).canonicalize();
        }
      }
    }
  }
  return mat;
}

long long h0_twist(const LinearSystem& sys, const Bidegree& twist) {
  if (!twist.effective()) return 0;
  std::vector<BigradedMonomial> dom =
      enumerate_monomials(sys.ambient, twist);
  if (sys.kind == SystemKind::Monomial) {
    std::set<std::pair<std::vector<int>, std::vector<int>>> products;
    for (const BigradedMonomial& f : sys.support)
      for (const BigradedMonomial& u : dom) {
        BigradedMonomial prod = monomial_product(f, u);
        products.insert({std::move(prod.alpha), std::move(prod.beta)});
      }
    return sys.r() * static_cast<long long>(dom.size()) -
           static_cast<long long>(products.size());
  }
  QMatrix mat = koszul_contraction_matrix(sys, 1, twist);
  return kernel_dim_hybrid(mat, sys.field_prime);
}

long long h0_wedge_twist(const LinearSystem& sys, const TwistQuery& query) {
  const long long r = sys.r();
  if (query.q < 1 || query.q > r - 1)
    throw PreconditionError{{"h0_wedge_twist: need 1 <= q <= r-1, got q=" +
                             std::to_string(query.q)}};
  require_basepoint_free(sys);
  if (!query.twist.effective()) return 0;
  if (query.q == 1) return h0_twist(sys, query.twist);
  QMatrix mat = koszul_contraction_matrix(sys, query.q, query.twist);
  return kernel_dim_hybrid(mat, sys.field_prime);
}

long long min_syzygy_total_degree(const LinearSystem& sys) {
  require_basepoint_free(sys);
  if (sys.r() < 2)
    throw PreconditionError{{"min_syzygy_total_degree: need r >= 2"}};
  const long long ab = sys.polarization.a + sys.polarization.b;
  for (long long d = 1; d <= ab; ++d)
    for (long long x = 0; x <= d; ++x)
      if (h0_twist(sys, Bidegree{x, d - x}) > 0) return d;
  throw BisyzError{
      "min_syzygy_total_degree: no syzygy within a+b, violating the Koszul "
      "bound"};
}

long long default_generator_bound(const LinearSystem& sys) {
  const long long ab = sys.polarization.a + sys.polarization.b;
  if (sys.kind != SystemKind::Monomial) return ab;
  long long best = 0;
  for (std::size_t i = 0; i < sys.support.size(); ++i)
    for (std::size_t j = i + 1; j < sys.support.size(); ++j)
      best = std::max(best, lcm_twist(sys.support[i], sys.support[j]));
  return best > 0 ? best : ab;
}

namespace {

/* Rows spanning sum over variables v of v * (syzygies at twist - deg v),
   in the coordinates of ⊕_i R_twist e_i. */
template <typename Vec>
std::vector<Vec> shifted_rows(
    const LinearSystem& sys, const Bidegree& twist,
    const std::vector<BigradedMonomial>& dom,
    const std::function<std::vector<Vec>(const Bidegree&)>& kernel_at) {
  const Ambient& amb = sys.ambient;
  const long long r = sys.r();
  std::vector<Vec> rows;
  std::vector<std::pair<int, bool>> variables;
  for (int k = 0; k <= amb.m; ++k) variables.push_back({k, true});
  for (int k = 0; k <= amb.n; ++k) variables.push_back({k, false});
  for (const auto& [index, is_x] : variables) {
    Bidegree lower{twist.p - (is_x ? 1 : 0), twist.q - (is_x ? 0 : 1)};
    if (!lower.effective()) continue;
    std::vector<BigradedMonomial> dom_lower =
        enumerate_monomials(amb, lower);
    std::vector<Vec> kernel = kernel_at(lower);
    for (const Vec& vec : kernel) {
      Vec shifted(r * dom.size(), typename Vec::value_type(0));
      for (long long i = 0; i < r; ++i)
        for (std::size_t u = 0; u < dom_lower.size(); ++u) {
          const auto& coeff = vec[i * dom_lower.size() + u];
          if (coeff == typename Vec::value_type(0)) continue;
          BigradedMonomial lifted = dom_lower[u];
          if (is_x)
            ++lifted.alpha[index];
          else
            ++lifted.beta[index];
          std::size_t ui = basis_index(dom, lifted);
          shifted[i * dom.size() + ui] = coeff;
        }
      rows.push_back(std::move(shifted));
    }
  }
  return rows;
}

}  // namespace

std::vector<std::pair<Bidegree, long long>> minimal_generator_bidegrees(
    const LinearSystem& sys, long long bound) {
  require_basepoint_free(sys);
  if (sys.r() < 2)
    throw PreconditionError{{"minimal_generator_bidegrees: need r >= 2"}};
  std::vector<std::pair<Bidegree, long long>> out;
  for (long long d = 1; d <= bound; ++d) {
    for (long long x = 0; x <= d; ++x) {
      Bidegree twist{x, d - x};
      long long kd = h0_twist(sys, twist);
      if (kd == 0) continue;
      std::vector<BigradedMonomial> dom =
          enumerate_monomials(sys.ambient, twist);
      long long span;
      if (sys.field_prime != 0) {
        std::function<std::vector<std::vector<std::uint64_t>>(const Bidegree&)>
            kernel_at = [&](const Bidegree& lower) {
              QMatrix m = koszul_contraction_matrix(sys, 1, lower);
              return kernel_basis(reduce_mod_p(m, sys.field_prime));
            };
        std::vector<std::vector<std::uint64_t>> rows =
            shifted_rows<std::vector<std::uint64_t>>(sys, twist, dom,
                                                     kernel_at);
        PMatrix stack(rows.size(), sys.r() * dom.size(), sys.field_prime);
        for (std::size_t i = 0; i < rows.size(); ++i)
          for (std::size_t j = 0; j < rows[i].size(); ++j)
            stack.at(i, j) = rows[i][j];
        span = static_cast<long long>(rank(std::move(stack)));
      } else {
        std::function<std::vector<std::vector<mpq_class>>(const Bidegree&)>
            kernel_at = [&](const Bidegree& lower) {
              return kernel_basis(koszul_contraction_matrix(sys, 1, lower));
            };
        std::vector<std::vector<mpq_class>> rows =
            shifted_rows<std::vector<mpq_class>>(sys, twist, dom, kernel_at);
        QMatrix stack(rows.size(), sys.r() * dom.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
          for (std::size_t j = 0; j < rows[i].size(); ++j)
            stack.at(i, j) = rows[i][j];
        span = static_cast<long long>(rank(std::move(stack)));
      }
      long long count = kd - span;
      if (count > 0) out.push_back({twist, count});
    }
  }
  return out;
}

SyzygyProfile syzygy_profile(const LinearSystem& sys, long long table_bound,
                             bool with_mingens, long long mingens_bound) {
  SyzygyProfile profile;
  profile.system_id = system_hash(sys);
  for (long long d = 0; d <= table_bound; ++d)
    for (long long x = 0; x <= d; ++x) {
      Bidegree twist{x, d - x};
      profile.table.push_back({twist, h0_twist(sys, twist)});
    }
  profile.t_min = min_syzygy_total_degree(sys);
  if (with_mingens) {
    profile.has_mingens = true;
    profile.mingens = minimal_generator_bidegrees(sys, mingens_bound);
    if (mingens_bound < default_generator_bound(sys)) {
      profile.truncated = true;
      profile.truncated_at = mingens_bound;
    }
  }
  return profile;
}

nlohmann::json syzygy_profile_json(const SyzygyProfile& profile) {
  nlohmann::json doc;
  doc["system"] = profile.system_id;
  nlohmann::json table = nlohmann::json::array();
  for (const auto& [twist, h0] : profile.table)
    table.push_back({twist.p, twist.q, h0});
  doc["table"] = std::move(table);
  doc["t_min"] = profile.t_min;
  if (profile.has_mingens) {
    nlohmann::json mingens = nlohmann::json::array();
    for (const auto& [twist, count] : profile.mingens)
      mingens.push_back({twist.p, twist.q, count});
    doc["mingens"] = std::move(mingens);
    if (profile.truncated) doc["truncated_at"] = profile.truncated_at;
  }
  return doc;
}

}  // namespace bisyz
