#include "bisyz/constructions.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

#include "bisyz/syzygy.hpp"

namespace bisyz {

namespace {

constexpr long long kPoolCap = 320;
constexpr long long kNodeCap = 5000000;

Integer make_int(long long value) {
  return Integer(static_cast<long>(value));
}

Rational make_ratio(long long num, long long den) {
  Rational value(make_int(num), make_int(den));
  value.canonicalize();
  return value;
}

using ExponentKey = std::pair<std::vector<int>, std::vector<int>>;

ExponentKey key_of(const BigradedMonomial& mono) {
  return {mono.alpha, mono.beta};
}

/* Factor-transposed coordinates with a >= b; family recipes are stated for
   that orientation and transposed back on emission. */
struct OrientedParams {
  int m = 1, n = 1, a = 1, b = 1;
  bool transposed = false;
};

OrientedParams orient(int m, int n, int a, int b) {
  if (a >= b) return {m, n, a, b, false};
  return {n, m, b, a, true};
}

BigradedMonomial transpose_monomial(const BigradedMonomial& mono) {
  return BigradedMonomial{mono.beta, mono.alpha};
}

BigradedMonomial block_monomial(int m, int n, int x_lo, long long e_lo,
                                int x_hi, long long e_hi, int y_lo,
                                long long f_lo, int y_hi, long long f_hi) {
  BigradedMonomial mono;
  mono.alpha.assign(m + 1, 0);
  mono.beta.assign(n + 1, 0);
  mono.alpha[x_lo] += static_cast<int>(e_lo);
  mono.alpha[x_hi] += static_cast<int>(e_hi);
  mono.beta[y_lo] += static_cast<int>(f_lo);
  mono.beta[y_hi] += static_cast<int>(f_hi);
  return mono;
}

struct FamilyContext {
  int m = 1, n = 1;
  long long a = 1, b = 1;
  long long t = 2, F = 1;
  int eps = 0;
  bool even_branch = false;
  bool anchored = false;
  CaseLabel label = CaseLabel::A;
  Subcase subcase = Subcase::None;
};

/* Forward alternation starts 1,0,1,..; the anchored variant fixes the tail
   values at (1-eps, eps) instead and alternates backwards from there. */
long long alternation(long long k, long long F, int eps, bool anchored) {
  if (anchored) return (eps + F - 1 - k) % 2;
  return k % 2;
}

void emit_x_split_blocks(const FamilyContext& ctx, int lo_block, int hi_block,
                         std::vector<BigradedMonomial>& out) {
  const long long step = ctx.t - 1;
  const long long a_last = ctx.even_branch ? ctx.F - 2 : ctx.F - 1;
  for (int i = lo_block; i <= hi_block; ++i) {
    for (long long k = 1; k <= a_last; ++k) {
      const long long delta = alternation(k, ctx.F, ctx.eps, ctx.anchored);
      out.push_back(block_monomial(ctx.m, ctx.n, i - 1, ctx.a - k * step, i,
                                   k * step, 0, ctx.b - delta, 1, delta));
    }
  }
  for (int i = lo_block; i <= hi_block; ++i) {
    for (long long k = 1; k <= ctx.F - 1; ++k) {
      const long long gamma = 1 + alternation(k, ctx.F, ctx.eps, ctx.anchored);
      out.push_back(block_monomial(ctx.m, ctx.n, i, ctx.a - k * step, i + 1,
                                   k * step, 0, ctx.b - gamma, 1, gamma));
    }
  }
}

std::vector<BigradedMonomial> emit_case_a(const FamilyContext& ctx) {
  std::vector<BigradedMonomial> out;
  const long long step = ctx.t - 1;
  const long long a_last = ctx.even_branch ? ctx.F - 2 : ctx.F - 1;
  for (long long k = 1; k <= a_last; ++k) {
    const long long delta = alternation(k, ctx.F, ctx.eps, ctx.anchored);
    out.push_back(block_monomial(1, 1, 0, ctx.a - k * step, 1, k * step, 0,
                                 ctx.b - delta, 1, delta));
  }
  const long long j_first = ctx.subcase == Subcase::NarrowB ? 1 : 0;
  for (long long j = j_first; j <= ctx.F - 1; ++j) {
    const long long gamma = step + alternation(j, ctx.F, ctx.eps, ctx.anchored);
    out.push_back(block_monomial(1, 1, 0, ctx.a - 1 - j * step, 1,
                                 1 + j * step, 0, ctx.b - gamma, 1, gamma));
  }
  return out;
}

std::vector<BigradedMonomial> emit_case_c(const FamilyContext& ctx) {
  std::vector<BigradedMonomial> out;
  const long long step = ctx.t - 1;
  const long long a_last = ctx.even_branch ? ctx.F - 2 : ctx.F - 1;
  for (int i = 0; i <= ctx.n; ++i) {
    const int inext = (i + 1) % (ctx.n + 1);
    for (long long k = 1; k <= a_last; ++k) {
      const long long delta = alternation(k, ctx.F, ctx.eps, ctx.anchored);
      out.push_back(block_monomial(ctx.m, ctx.n, 0, ctx.a - k * step, 1,
                                   k * step, i, ctx.b - delta, inext, delta));
    }
  }
  return out;
}

std::vector<BigradedMonomial> emit_family(const FamilyContext& ctx) {
  std::vector<BigradedMonomial> out;
  switch (ctx.label) {
    case CaseLabel::A:
      return emit_case_a(ctx);
    case CaseLabel::B:
      emit_x_split_blocks(ctx, 1, ctx.m - 1, out);
      return out;
    case CaseLabel::C:
      return emit_case_c(ctx);
    case CaseLabel::D:
      if (ctx.m >= ctx.n) {
        emit_x_split_blocks(ctx, 1, ctx.m - 1, out);
        return out;
      }
      return emit_case_c(ctx);
  }
  return out;
}

struct VerifyReport {
  bool ok = false;
  std::string failing_condition;
  std::string detail;
  long long t_min = 0;
  bool bound_met = false;
};

VerifyReport verify_family(const Ambient& amb, const Polarization& pol,
                           const std::vector<BigradedMonomial>& monomials,
                           long long t, const Rational& bound) {
  VerifyReport rep;
  std::set<ExponentKey> seen;
  for (const auto& mono : monomials) {
    if (!seen.insert(key_of(mono)).second) {
      rep.failing_condition = "distinct";
      rep.detail = "duplicate " + monomial_text(mono);
      return rep;
    }
  }
  for (const auto& pure : pure_power_set(amb, pol)) {
    if (seen.find(key_of(pure)) == seen.end()) {
      rep.failing_condition = "pure-powers-present";
      rep.detail = "missing " + monomial_text(pure);
      return rep;
    }
  }
  for (std::size_t i = 0; i < monomials.size(); ++i) {
    for (std::size_t j = i + 1; j < monomials.size(); ++j) {
      if (lcm_twist(monomials[i], monomials[j]) < t) {
        rep.failing_condition = "pairwise-lcm-twist";
        rep.detail = monomial_text(monomials[i]) + " vs " +
                     monomial_text(monomials[j]);
        return rep;
      }
    }
  }
  rep.bound_met =
      cmp(Rational(static_cast<long>(monomials.size())), bound) >= 0;
  if (!rep.bound_met) {
    rep.failing_condition = "dimension-bound";
    rep.detail = "N=" + std::to_string(monomials.size()) + " < " +
                 bound.get_str();
    return rep;
  }
  const LinearSystem sys = make_monomial_system(amb, pol, monomials);
  rep.t_min = min_syzygy_total_degree(sys);
  if (rep.t_min < t) {
    rep.failing_condition = "syzygy-degree";
    rep.detail = "t_min=" + std::to_string(rep.t_min) + " < " +
                 std::to_string(t);
    return rep;
  }
  rep.ok = true;
  return rep;
}

struct RebuildResult {
  bool found = false;
  std::vector<BigradedMonomial> non_pures;
  bool exhausted = false;
  bool pool_complete = false;
};

std::vector<BigradedMonomial> staircase_pool(const OrientedParams& op,
                                             CaseLabel label) {
  std::vector<BigradedMonomial> pool;
  const bool x_split =
      label == CaseLabel::A || label == CaseLabel::B ||
      (label == CaseLabel::D && op.m >= op.n);
  if (x_split) {
    for (int p = 0; p < op.m; ++p)
      for (long long u = 1; u <= op.a - 1; ++u)
        for (long long v = 0; v <= op.b; ++v)
          pool.push_back(block_monomial(op.m, op.n, p, op.a - u, p + 1, u, 0,
                                        op.b - v, 1, v));
  } else {
    for (int i = 0; i <= op.n; ++i) {
      const int inext = (i + 1) % (op.n + 1);
      for (long long u = 1; u <= op.a - 1; ++u)
        for (long long v = 0; v <= op.b; ++v)
          pool.push_back(block_monomial(op.m, op.n, 0, op.a - u, 1, u, i,
                                        op.b - v, inext, v));
    }
  }
  return pool;
}

/* Subring basis for the two-block delegation: full exponents on the larger
   factor, the smaller factor confined to its first two variables. */
std::vector<BigradedMonomial> subring_pool(const OrientedParams& op) {
  std::vector<BigradedMonomial> pool;
  if (op.m >= op.n) {
    for (auto mono : enumerate_monomials(Ambient{op.m, 1},
                                         Bidegree{op.a, op.b})) {
      mono.beta.resize(op.n + 1, 0);
      pool.push_back(std::move(mono));
    }
  } else {
    for (auto mono : enumerate_monomials(Ambient{1, op.n},
                                         Bidegree{op.a, op.b})) {
      mono.alpha.resize(op.m + 1, 0);
      pool.push_back(std::move(mono));
    }
  }
  return pool;
}

/* Greedy then branch-and-bound search for a pairwise-compatible family of
   size >= target containing all pure powers, in oriented coordinates. */
RebuildResult rebuild_family(const OrientedParams& op, CaseLabel label,
                             long long t, long long target) {
  RebuildResult result;
  const Ambient amb{op.m, op.n};
  const Polarization pol{op.a, op.b};
  const auto pures = pure_power_set(amb, pol);

  std::vector<BigradedMonomial> pool;
  const long long complete_size =
      dim_graded_piece(amb, Bidegree{op.a, op.b});
  if (complete_size <= kPoolCap) {
    pool = enumerate_monomials(amb, Bidegree{op.a, op.b});
    result.pool_complete = true;
  } else if (label == CaseLabel::D) {
    const long long subring_size =
        op.m >= op.n
            ? dim_graded_piece(Ambient{op.m, 1}, Bidegree{op.a, op.b})
            : dim_graded_piece(Ambient{1, op.n}, Bidegree{op.a, op.b});
    pool = subring_size <= kPoolCap ? subring_pool(op)
                                    : staircase_pool(op, label);
  } else {
    pool = staircase_pool(op, label);
  }

  std::set<ExponentKey> pure_keys;
  for (const auto& pure : pures) pure_keys.insert(key_of(pure));

  std::set<ExponentKey> pool_seen;
  std::vector<BigradedMonomial> candidates;
  for (const auto& mono : pool) {
    if (pure_keys.count(key_of(mono))) continue;
    if (!pool_seen.insert(key_of(mono)).second) continue;
    bool compatible = true;
    for (const auto& pure : pures) {
      if (lcm_twist(mono, pure) < t) {
        compatible = false;
        break;
      }
    }
    if (compatible) candidates.push_back(mono);
  }
  std::sort(candidates.begin(), candidates.end(), canonical_less);

  const long long need = target - static_cast<long long>(pures.size());
  if (need <= 0) {
    result.found = true;
    return result;
  }

  const int count = static_cast<int>(candidates.size());
  std::vector<std::vector<char>> conflict(count, std::vector<char>(count, 0));
  for (int i = 0; i < count; ++i)
    for (int j = i + 1; j < count; ++j)
      if (lcm_twist(candidates[i], candidates[j]) < t)
        conflict[i][j] = conflict[j][i] = 1;

  std::vector<int> chosen;
  for (int i = 0; i < count; ++i) {
    bool compatible = true;
    for (int c : chosen) {
      if (conflict[c][i]) {
        compatible = false;
        break;
      }
    }
    if (compatible) chosen.push_back(i);
  }
  if (static_cast<long long>(chosen.size()) >= need) {
    result.found = true;
    for (int c : chosen) result.non_pures.push_back(candidates[c]);
    return result;
  }

  /* Branch on each candidate in canonical order, include-first; prune when
     even taking every remaining compatible vertex cannot reach the target. */
  long long nodes = 0;
  bool capped = false;
  std::vector<int> stack;
  std::vector<char> alive(count, 1);
  std::vector<int> best;

  const auto dfs = [&](auto&& self, int idx) -> bool {
    if (static_cast<long long>(stack.size()) >= need) {
      best = stack;
      return true;
    }
    if (++nodes > kNodeCap) {
      capped = true;
      return false;
    }
    long long possible = stack.size();
    for (int i = idx; i < count; ++i) possible += alive[i];
    if (possible < need) return false;
    int next = idx;
    while (next < count && !alive[next]) ++next;
    if (next >= count) return false;

    std::vector<int> killed;
    stack.push_back(next);
    alive[next] = 0;
    for (int i = next + 1; i < count; ++i) {
      if (alive[i] && conflict[next][i]) {
        alive[i] = 0;
        killed.push_back(i);
      }
    }
    if (self(self, next + 1)) return true;
    stack.pop_back();
    for (int i : killed) alive[i] = 1;
    if (capped) return false;
    if (self(self, next + 1)) return true;
    alive[next] = 1;
    return false;
  };
  const bool found = dfs(dfs, 0);
  if (!found) {
    result.exhausted = !capped;
    return result;
  }

  std::vector<char> in_best(count, 0);
  for (int c : best) in_best[c] = 1;
  for (int i = 0; i < count; ++i) {
    if (in_best[i]) continue;
    bool compatible = true;
    for (int c = 0; c < count && compatible; ++c)
      if (in_best[c] && conflict[c][i]) compatible = false;
    if (compatible) {
      best.push_back(i);
      in_best[i] = 1;
    }
  }
  std::sort(best.begin(), best.end());
  result.found = true;
  for (int c : best) result.non_pures.push_back(candidates[c]);
  return result;
}

Rational ceil_rational(const Rational& value) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), value.get_num().get_mpz_t(),
             value.get_den().get_mpz_t());
  return Rational(q);
}

}  // namespace

std::string range_class_text(RangeClassValue value) {
  switch (value) {
    case RangeClassValue::InvalidTooSmall:
      return "invalid-too-small";
    case RangeClassValue::GapGeneral:
      return "gap-general";
    case RangeClassValue::RangeB:
      return "range-b";
    case RangeClassValue::RangeA:
      return "range-a";
    case RangeClassValue::InvalidTooLarge:
      return "invalid-too-large";
  }
  return "unknown";
}

std::string case_label_text(CaseLabel label) {
  switch (label) {
    case CaseLabel::A:
      return "A";
    case CaseLabel::B:
      return "B";
    case CaseLabel::C:
      return "C";
    case CaseLabel::D:
      return "D";
  }
  return "?";
}

std::string subcase_text(Subcase subcase) {
  switch (subcase) {
    case Subcase::WideB:
      return "wide-b";
    case Subcase::NarrowB:
      return "narrow-b";
    case Subcase::None:
      return "none";
  }
  return "none";
}

std::string strategy_label_text(BuildStrategy strategy) {
  switch (strategy) {
    case BuildStrategy::Pure:
      return "pure";
    case BuildStrategy::Anchored:
      return "anchored";
    case BuildStrategy::Rebuilt:
      return "rebuilt";
  }
  return "pure";
}

RangeClass range_classify(int m, int n, int a, int b, long long r) {
  if (m < 1 || n < 1 || a < 1 || b < 1)
    throw PreconditionError{{"ambient dimensions and bidegree must be >= 1"}};
  const long long ap = std::max(a, b);
  const long long bp = std::min(a, b);
  const long long mn = std::min(m, n);
  RangeClass rc;
  rc.threshold = make_ratio(ap * (m + n), bp * mn) + 1;
  rc.upper = make_ratio(ap * (m + n), mn) + 1;
  rc.h0 = dim_graded_piece(Ambient{m, n}, Bidegree{a, b});
  rc.monomial_gap_note = r < static_cast<long long>(m + 1) * (n + 1);
  rc.corollary1_applies = ap < mn * bp;
  rc.corollary2_applies =
      make_int(ap * (m + n)) <
      make_int((static_cast<long long>(m) * n + m + n) * mn * bp);
  if (r <= m + n)
    rc.value = RangeClassValue::InvalidTooSmall;
  else if (r > rc.h0)
    rc.value = RangeClassValue::InvalidTooLarge;
  else if (cmp(Rational(static_cast<long>(r)), rc.threshold) <= 0)
    rc.value = RangeClassValue::GapGeneral;
  else if (cmp(Rational(static_cast<long>(r)), rc.upper) <= 0)
    rc.value = RangeClassValue::RangeB;
  else
    rc.value = RangeClassValue::RangeA;
  return rc;
}

long long t_r(int m, int n, int a, int b, long long r) {
  const RangeClass rc = range_classify(m, n, a, b, r);
  if (rc.value != RangeClassValue::RangeB) {
    std::ostringstream msg;
    msg << "r=" << r << " lies in " << range_class_text(rc.value)
        << ", not range-b; no syzygy level t is defined";
    throw PreconditionError{{msg.str()}};
  }
  const long long ap = std::max(a, b);
  const long long bp = std::min(a, b);
  const long long mn = std::min(m, n);
  const Integer lhs = make_int(ap * (m + n));
  for (long long t = 2; t <= bp; ++t) {
    if (lhs < make_int((r - 1) * t * mn) &&
        make_int((r - 1) * (t - 1) * mn) <= lhs)
      return t;
  }
  throw BisyzError{"no admissible syzygy level for r=" + std::to_string(r)};
}

int epsilon(long long a_prime, long long t) {
  if (t < 2 || a_prime < 1)
    throw PreconditionError{{"epsilon requires t >= 2 and a' >= 1"}};
  return static_cast<int>((a_prime / (t - 1)) % 2);
}

ConstructionRecipe build_W(int m, int n, int a, int b, long long r) {
  const long long t = t_r(m, n, a, b, r);
  const OrientedParams op = orient(m, n, a, b);
  const long long F = op.a / (t - 1);
  const int eps = epsilon(op.a, t);
  const bool even_branch = op.a % (t - 1) == 0 && F % 2 == 0;

  CaseLabel label;
  if (op.m == 1 && op.n == 1)
    label = CaseLabel::A;
  else if (op.m > 1 && op.n == 1)
    label = CaseLabel::B;
  else if (op.m == 1 && op.n > 1)
    label = CaseLabel::C;
  else
    label = CaseLabel::D;
  const Subcase subcase =
      label == CaseLabel::A
          ? (2 * (t - 1) <= op.b ? Subcase::WideB : Subcase::NarrowB)
          : Subcase::None;

  const Ambient amb{m, n};
  const Polarization pol{a, b};
  const auto pures = pure_power_set(amb, pol);
  const Rational bound =
      make_ratio(static_cast<long long>(op.a) * (m + n),
                 (t - 1) * std::min(m, n)) +
      1;

  ConstructionRecipe recipe;
  recipe.m = m;
  recipe.n = n;
  recipe.a = a;
  recipe.b = b;
  recipe.r = r;
  recipe.case_label = label;
  recipe.subcase = subcase;
  recipe.t = t;
  recipe.eps = eps;
  recipe.dimension_bound = bound;

  std::string first_failure;
  std::vector<BigradedMonomial> first_candidates;
  for (int attempt = 0; attempt < 2; ++attempt) {
    const bool anchored = attempt == 1;
    FamilyContext ctx;
    ctx.m = op.m;
    ctx.n = op.n;
    ctx.a = op.a;
    ctx.b = op.b;
    ctx.t = t;
    ctx.F = F;
    ctx.eps = eps;
    ctx.even_branch = even_branch;
    ctx.anchored = anchored;
    ctx.label = label;
    ctx.subcase = subcase;
    auto family = emit_family(ctx);
    if (op.transposed)
      for (auto& mono : family) mono = transpose_monomial(mono);

    std::vector<BigradedMonomial> all = pures;
    std::set<ExponentKey> seen;
    for (const auto& pure : pures) seen.insert(key_of(pure));
    for (const auto& mono : family)
      if (seen.insert(key_of(mono)).second) all.push_back(mono);

    const VerifyReport rep = verify_family(amb, pol, all, t, bound);
    if (rep.ok) {
      recipe.N = static_cast<long long>(all.size());
      recipe.tail_adjusted = anchored;
      recipe.strategy = anchored ? BuildStrategy::Anchored : BuildStrategy::Pure;
      recipe.monomials = std::move(all);
      recipe.verified_t_min = rep.t_min;
      recipe.bound_met = true;
      return recipe;
    }
    if (attempt == 0) {
      first_failure = rep.failing_condition + " (" + rep.detail + ")";
      first_candidates = std::move(all);
    }
  }

  const long long target_ll = ceil_rational(bound).get_num().get_si();
  const long long target = std::max(target_ll, r);
  const RebuildResult rb = rebuild_family(op, label, t, target);
  if (rb.found) {
    std::vector<BigradedMonomial> non_pures = rb.non_pures;
    if (op.transposed)
      for (auto& mono : non_pures) mono = transpose_monomial(mono);
    std::sort(non_pures.begin(), non_pures.end(), canonical_less);
    std::vector<BigradedMonomial> all = pures;
    all.insert(all.end(), non_pures.begin(), non_pures.end());
    const VerifyReport rep = verify_family(amb, pol, all, t, bound);
    if (rep.ok) {
      recipe.N = static_cast<long long>(all.size());
      recipe.tail_adjusted = false;
      recipe.strategy = BuildStrategy::Rebuilt;
      recipe.monomials = std::move(all);
      recipe.verified_t_min = rep.t_min;
      recipe.bound_met = true;
      return recipe;
    }
    ConstructionError err;
    err.failing_condition = rep.failing_condition;
    err.candidates = std::move(all);
    err.message = "rebuilt family failed verification: " +
                  rep.failing_condition + " (" + rep.detail + ")";
    throw err;
  }

  ConstructionError err;
  err.failing_condition = first_failure.empty() ? "dimension-bound"
                                                : first_failure;
  err.candidates = std::move(first_candidates);
  err.search_exhausted = rb.exhausted;
  err.pool_complete = rb.pool_complete;
  std::ostringstream msg;
  msg << "no monomial family with all pure powers, pairwise syzygy twist >= "
      << t << " and dimension >= " << bound.get_str() << " was found for (m,n,a,b)=("
      << m << "," << n << "," << a << "," << b << "); recipe variants failed ("
      << err.failing_condition << "); rebuild search "
      << (rb.exhausted ? "ran to completion" : "hit the node cap") << " over a "
      << (rb.pool_complete ? "complete" : "partial") << " candidate pool";
  err.message = msg.str();
  throw err;
}

LinearSystem build_V(int m, int n, int a, int b, long long r) {
  const long long pure_count = static_cast<long long>(m + 1) * (n + 1);
  if (r < pure_count) {
    ConstructionUnavailable err;
    err.message = "r=" + std::to_string(r) +
                  " is below the pure-power count " +
                  std::to_string(pure_count) +
                  "; no basepoint-free monomial system of that dimension "
                  "exists";
    throw err;
  }
  ConstructionRecipe recipe = build_W(m, n, a, b, r);
  if (r > recipe.N) {
    ConstructionUnavailable err;
    err.message = "r=" + std::to_string(r) +
                  " exceeds the constructed family dimension N=" +
                  std::to_string(recipe.N);
    throw err;
  }
  std::vector<BigradedMonomial> taken(
      recipe.monomials.begin(),
      recipe.monomials.begin() + static_cast<std::size_t>(r));
  LinearSystem sys = make_monomial_system(Ambient{m, n}, Polarization{a, b},
                                          std::move(taken));
  if (basepoint_free_monomial(sys).kind != BpfStatus::Kind::Certified)
    throw BisyzError{"constructed system is not basepoint-free"};
  if (min_syzygy_total_degree(sys) < recipe.t)
    throw BisyzError{"constructed system violates the syzygy degree bound"};
  return sys;
}

nlohmann::json range_class_json(const RangeClass& range, long long r) {
  nlohmann::json doc;
  doc["r"] = r;
  doc["class"] = range_class_text(range.value);
  doc["threshold"] = range.threshold.get_str();
  doc["upper"] = range.upper.get_str();
  doc["h0"] = range.h0;
  doc["monomial_gap_note"] = range.monomial_gap_note;
  doc["corollary1_applies"] = range.corollary1_applies;
  doc["corollary2_applies"] = range.corollary2_applies;
  return doc;
}

nlohmann::json recipe_json(const ConstructionRecipe& recipe) {
  nlohmann::json doc;
  doc["parameters"] = {{"m", recipe.m},
                       {"n", recipe.n},
                       {"a", recipe.a},
                       {"b", recipe.b},
                       {"r", recipe.r}};
  doc["case"] = case_label_text(recipe.case_label);
  doc["subcase"] = subcase_text(recipe.subcase);
  doc["t_r"] = recipe.t;
  doc["epsilon"] = recipe.eps;
  doc["N"] = recipe.N;
  doc["tail_adjusted"] = recipe.tail_adjusted;
  doc["strategy"] = strategy_label_text(recipe.strategy);
  doc["repaired"] = recipe.strategy == BuildStrategy::Rebuilt;
  nlohmann::json monomials = nlohmann::json::array();
  for (const auto& mono : recipe.monomials)
    monomials.push_back(monomial_text(mono));
  doc["monomials"] = std::move(monomials);
  doc["verification"] = {{"t_min", recipe.verified_t_min},
                         {"bound", recipe.dimension_bound.get_str()},
                         {"bound_met", recipe.bound_met},
                         {"distinct", true},
                         {"pure_powers_present", true}};
  return doc;
}

}  // namespace bisyz
