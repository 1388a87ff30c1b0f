/* End-to-end acceptance checks. Each criterion prints one PASS/FAIL line
   (with wall time) and failure details below it; the exit code is the
   number of failed criteria. */

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bisyz/constructions.hpp"
#include "bisyz/linalg.hpp"
#include "bisyz/moduli.hpp"
#include "bisyz/search.hpp"
#include "bisyz/stability.hpp"
#include "bisyz/syzygy.hpp"

namespace fs = std::filesystem;
using namespace bisyz;

namespace {

struct Criterion {
  std::string name;
  double limit_ms = 0.0;  // 0 = no stated bound
  std::vector<std::string> problems;

  void fail(const std::string& detail) { problems.push_back(detail); }
  void check(bool ok, const std::string& detail) {
    if (!ok) problems.push_back(detail);
  }
};

int g_failures = 0;

template <typename Body>
void run_criterion(int index, const std::string& name, double limit_ms,
                   Body&& body) {
  Criterion crit{name, limit_ms, {}};
  const auto start = std::chrono::steady_clock::now();
  try {
    body(crit);
  } catch (const BisyzError& err) {
    crit.fail("unexpected error: " + err.message);
  } catch (const std::exception& err) {
    crit.fail(std::string("unexpected error: ") + err.what());
  }
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  if (crit.limit_ms > 0 && ms > crit.limit_ms) {
    std::ostringstream over;
    over << "time " << ms << " ms exceeds the " << crit.limit_ms
         << " ms bound";
    crit.fail(over.str());
  }
  const bool pass = crit.problems.empty();
  if (!pass) ++g_failures;
  std::printf("%s  %d  %s  (%.1f ms)\n", pass ? "PASS" : "FAIL", index,
              crit.name.c_str(), ms);
  for (const std::string& problem : crit.problems)
    std::printf("        %s\n", problem.c_str());
  std::fflush(stdout);
}

LinearSystem pures_plus(const Ambient& amb, const Polarization& L,
                        const std::vector<std::string>& extra) {
  auto support = pure_power_set(amb, L);
  for (const auto& text : extra)
    support.push_back(parse_monomial(text, amb));
  return make_monomial_system(amb, L, support);
}

std::string point_text(int m, int n, int a, int b, long long r) {
  std::ostringstream out;
  out << "(" << m << "," << n << "),(" << a << "," << b << "),r=" << r;
  return out.str();
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

/* ---- criterion 1: the worked example systems --------------------------- */

void example_systems(Criterion& crit) {
  const Ambient amb{1, 1};
  const Polarization L{2, 1};
  const LinearSystem v1 = pures_plus(amb, L, {"x0 x1 y0"});
  const LinearSystem v2 = pures_plus(amb, L, {"x0 x1 y1"});
  for (const auto& [name, sys] :
       std::vector<std::pair<std::string, const LinearSystem*>>{
           {"V1", &v1}, {"V2", &v2}}) {
    const Certificate cert =
        certify(*sys, CertifyStrategy::GapThenBruteForce);
    const StabilityVerdict verdict = cert.verdict();
    crit.check(verdict.kind == VerdictKind::NotStable,
               name + ": expected NotStable, got " +
                   verdict_kind_text(verdict.kind));
    if (!verdict.witness) {
      crit.fail(name + ": no witness");
      continue;
    }
    crit.check(verdict.witness->q == 1 && verdict.witness->twist.p == 1 &&
                   verdict.witness->twist.q == 0,
               name + ": wrong witness twist");
    crit.check(!verdict.witness->strict,
               name + ": comparison should be an equality");
  }

  const LinearSystem w1 = pures_plus(amb, L, {});
  const LinearSystem w2 = make_monomial_system(
      amb, L, enumerate_monomials(amb, Bidegree{2, 1}));
  for (const auto& [name, sys] :
       std::vector<std::pair<std::string, const LinearSystem*>>{
           {"W1", &w1}, {"W2", &w2}}) {
    const Certificate cert = certify(*sys, CertifyStrategy::BruteForceOnly);
    crit.check(cert.verdict().kind == VerdictKind::StableCertified,
               name + ": expected StableCertified, got " +
                   verdict_kind_text(cert.verdict().kind));
    crit.check(cert.verdict().method ==
                   VerdictMethod::BruteForceCohomological,
               name + ": expected the brute-force method");
  }
}

/* ---- criterion 2: the per-r answer table at (1,1),(2,1) ----------------- */

void answer_table(Criterion& crit) {
  const fs::path dir = fs::path("acceptance-scratch") / "table";
  fs::remove_all(dir);
  const BrennerReportTable report =
      brenner_report(Ambient{1, 1}, Polarization{2, 1},
                     CertifyStrategy::GapThenBruteForce, 1, dir.string());
  std::map<long long, std::string> outcomes;
  for (const auto& row : report.rows) outcomes[row.r] = row.outcome;
  crit.check(outcomes[4] == "YES", "r=4: expected YES, got " + outcomes[4]);
  crit.check(outcomes[5] == "NO", "r=5: expected NO, got " + outcomes[5]);
  crit.check(outcomes[6] == "YES", "r=6: expected YES, got " + outcomes[6]);
}

/* ---- criterion 3: exhaustive stability above the gap at (1,1),(2,2) ----- */

void exhaustive_above_gap(Criterion& crit) {
  const Ambient amb{1, 1};
  const Polarization L{2, 2};
  const auto pures = pure_power_set(amb, L);
  std::vector<BigradedMonomial> others;
  for (const auto& mono : enumerate_monomials(amb, Bidegree{2, 2}))
    if (std::count(pures.begin(), pures.end(), mono) == 0)
      others.push_back(mono);

  for (long long r = 6; r <= 9; ++r) {
    const std::size_t k = static_cast<std::size_t>(r - 4);
    long long count = 0;
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    while (true) {
      auto support = pures;
      for (std::size_t idx : pick) support.push_back(others[idx]);
      const LinearSystem sys = make_monomial_system(amb, L, support);
      ++count;
      const Certificate cert = certify(sys, CertifyStrategy::BruteForceOnly);
      if (cert.verdict().kind != VerdictKind::StableCertified) {
        std::string line = "r=" + std::to_string(r) + " support " +
                           std::to_string(count) + ": " +
                           verdict_kind_text(cert.verdict().kind);
        if (cert.verdict().witness.has_value()) {
          const SlopeWitness& w = *cert.verdict().witness;
          line += " (h0=" + std::to_string(w.h0) +
                  " at q=" + std::to_string(w.q) + ", twist (" +
                  std::to_string(w.twist.p) + "," + std::to_string(w.twist.q) +
                  "), slope comparison " +
                  (w.strict ? "strict" : "equal") + "); support {";
          bool first = true;
          for (const auto& mono : support) {
            if (!first) line += ", ";
            line += monomial_text(mono);
            first = false;
          }
          line += "}";
        }
        crit.fail(line);
      }
      // next lexicographic k-subset
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == others.size() - k + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
    const Integer expected = binomial(5, r - 4);
    crit.check(to_integer(count) == expected,
               "r=" + std::to_string(r) + ": checked " +
                   std::to_string(count) + " supports, expected " +
                   expected.get_str());
  }
}

/* ---- criterion 4: construction grid ------------------------------------ */

void construction_grid(Criterion& crit) {
  const std::vector<std::pair<int, int>> factors{{1, 1}, {1, 2}, {1, 3},
                                                 {2, 2}, {2, 3}, {3, 3}};
  // build_W depends on r only through t, so cache per (m,n,a,b,t).
  std::map<std::tuple<int, int, int, int, long long>, std::string> failed_w;
  std::map<std::tuple<int, int, int, int, long long>, bool> ok_w;

  for (const auto& [m, n] : factors) {
    for (int a = 2; a <= 6; ++a) {
      for (int b = 2; b <= a; ++b) {
        const long long pp = static_cast<long long>(m + 1) * (n + 1);
        const RangeClass probe = range_classify(m, n, a, b, m + n + 1);
        for (long long r = std::max<long long>(m + n + 1, pp);
             r <= probe.h0; ++r) {
          if (range_classify(m, n, a, b, r).value != RangeClassValue::RangeB)
            continue;
          const std::string point = point_text(m, n, a, b, r);
          long long t = 0;
          try {
            t = t_r(m, n, a, b, r);
          } catch (const BisyzError& err) {
            crit.fail(point + ": t_r failed: " + err.message);
            continue;
          }
          const auto key = std::make_tuple(m, n, a, b, t);
          if (auto it = failed_w.find(key); it != failed_w.end()) {
            crit.fail(point + ": " + it->second);
            continue;
          }
          if (!ok_w.count(key)) {
            try {
              const ConstructionRecipe recipe = build_W(m, n, a, b, r);
              std::string problem;
              // i: distinct monomials of bidegree (a,b), pure powers present
              std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
              for (const auto& mono : recipe.monomials) {
                if (!(mono.bidegree() == Bidegree{a, b}))
                  problem = "family monomial of wrong bidegree";
                if (!seen.insert({mono.alpha, mono.beta}).second)
                  problem = "family repeats a monomial";
              }
              for (const auto& pure :
                   pure_power_set(Ambient{m, n}, Polarization{a, b}))
                if (!seen.count({pure.alpha, pure.beta}))
                  problem = "family misses a pure power";
              // ii: pairwise lcm twists at least t
              for (std::size_t i = 0; i < recipe.monomials.size(); ++i)
                for (std::size_t j = i + 1; j < recipe.monomials.size(); ++j)
                  if (lcm_twist(recipe.monomials[i], recipe.monomials[j]) < t)
                    problem = "pairwise lcm twist below t";
              // iii: independent first-syzygy degree
              const LinearSystem family = make_monomial_system(
                  Ambient{m, n}, Polarization{a, b}, recipe.monomials);
              if (min_syzygy_total_degree(family) < t)
                problem = "family has a syzygy below total degree t";
              // dimension bound
              const Rational bound =
                  to_rational(static_cast<long long>(a) * (m + n),
                              (t - 1) * std::min(m, n)) +
                  to_rational(1);
              if (to_rational(static_cast<long long>(
                      recipe.monomials.size())) < bound)
                problem = "family size misses the dimension bound";
              if (problem.empty()) {
                ok_w[key] = true;
              } else {
                failed_w[key] = problem;
                crit.fail(point + ": " + problem);
                continue;
              }
            } catch (const ConstructionError& err) {
              failed_w[key] =
                  "build_W: " + err.message +
                  (err.search_exhausted ? " [search exhausted]" : "") +
                  (err.pool_complete ? " [complete pool]" : "");
              crit.fail(point + ": " + failed_w[key]);
              continue;
            } catch (const BisyzError& err) {
              failed_w[key] = "build_W: " + err.message;
              crit.fail(point + ": " + failed_w[key]);
              continue;
            }
          }
          try {
            const LinearSystem sys = build_V(m, n, a, b, r);
            if (basepoint_free(sys).kind != BpfStatus::Kind::Certified) {
              crit.fail(point + ": build_V is not basepoint-free");
              continue;
            }
            const StabilityVerdict verdict = certify_degree_gap(sys);
            if (verdict.kind != VerdictKind::StableCertified)
              crit.fail(point + ": degree gap gave " +
                        verdict_kind_text(verdict.kind));
          } catch (const BisyzError& err) {
            crit.fail(point + ": build_V: " + err.message);
          }
        }
      }
    }
  }
}

/* ---- criterion 5: section-count oracles -------------------------------- */

void oracle_equivalence(Criterion& crit) {
  std::mt19937_64 rng(20240817);
  std::uniform_int_distribution<int> dim_pick(1, 2);
  std::uniform_int_distribution<int> deg_pick(1, 2);
  std::uniform_int_distribution<long long> twist_pick(0, 2);
  int instances = 0;
  while (instances < 120) {
    const Ambient amb{dim_pick(rng), dim_pick(rng)};
    const Polarization L{deg_pick(rng), deg_pick(rng)};
    const auto pures = pure_power_set(amb, L);
    std::vector<BigradedMonomial> others;
    for (const auto& mono : enumerate_monomials(amb, Bidegree{L.a, L.b}))
      if (std::count(pures.begin(), pures.end(), mono) == 0)
        others.push_back(mono);
    std::shuffle(others.begin(), others.end(), rng);
    std::uniform_int_distribution<std::size_t> extra_pick(0, others.size());
    auto support = pures;
    const std::size_t extras = extra_pick(rng);
    support.insert(support.end(), others.begin(), others.begin() + extras);
    const LinearSystem sys = make_monomial_system(amb, L, support);
    const long long r = sys.r();
    const Bidegree twist{twist_pick(rng), twist_pick(rng)};
    ++instances;

    const long long fast = h0_twist(sys, twist);
    const QMatrix mat = koszul_contraction_matrix(sys, 1, twist);
    const long long exact = static_cast<long long>(mat.cols - rank(mat));
    if (fast != exact)
      crit.fail("instance " + std::to_string(instances) +
                ": fast path " + std::to_string(fast) + " vs kernel " +
                std::to_string(exact));

    const long long wedge1 = h0_wedge_twist(sys, TwistQuery{1, twist});
    if (wedge1 != fast)
      crit.fail("instance " + std::to_string(instances) +
                ": q=1 wedge disagrees with h0_twist");

    const long long det =
        h0_wedge_twist(sys, TwistQuery{r - 1, twist});
    const long long expected =
        dim_graded_piece(amb, Bidegree{twist.p - L.a, twist.q - L.b});
    if (det != expected)
      crit.fail("instance " + std::to_string(instances) +
                ": determinant identity " + std::to_string(det) + " vs " +
                std::to_string(expected));
  }
  crit.check(instances >= 100, "fewer than 100 instances");
}

/* ---- criterion 6: koszul chain property -------------------------------- */

void koszul_soundness(Criterion& crit) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 6; ++trial) {
    const Ambient amb{1, 1};
    const Polarization L{2, 1};
    const auto support = enumerate_monomials(amb, Bidegree{L.a, L.b});
    std::uniform_int_distribution<long long> r_pick(4, 6);
    const long long r = r_pick(rng);
    const LinearSystem sys =
        random_general_system(amb, L, support, r, 1000 + trial);
    for (long long q = 2; q <= std::min<long long>(4, r - 1); ++q) {
      for (const Bidegree twist : {Bidegree{0, 0}, Bidegree{1, 1}}) {
        const QMatrix inner = koszul_contraction_matrix(sys, q, twist);
        const QMatrix outer = koszul_contraction_matrix(
            sys, q - 1, Bidegree{twist.p + L.a, twist.q + L.b});
        // outer * inner must vanish
        for (std::size_t col = 0; col < inner.cols; ++col) {
          std::vector<mpq_class> image(inner.rows, 0);
          for (std::size_t row = 0; row < inner.rows; ++row)
            image[row] = inner.at(row, col);
          for (std::size_t row = 0; row < outer.rows; ++row) {
            mpq_class sum = 0;
            for (std::size_t mid = 0; mid < outer.cols; ++mid)
              if (outer.at(row, mid) != 0 && image[mid] != 0)
                sum += outer.at(row, mid) * image[mid];
            if (sum != 0) {
              crit.fail("trial " + std::to_string(trial) + " q=" +
                        std::to_string(q) + ": composite is nonzero");
              return;
            }
          }
        }
      }
    }
  }
}

/* ---- criterion 7: moduli tangent dimensions ----------------------------- */

void moduli_dimensions(Criterion& crit) {
  const ModuliReport rigid =
      moduli_tangent_dim(Ambient{2, 2}, Polarization{1, 1}, 9);
  crit.check(rigid.tangent_dim == 0 && rigid.rigid,
             "(2,2),(1,1),r=9: expected the rigid point");

  const ModuliReport eight =
      moduli_tangent_dim(Ambient{1, 1}, Polarization{2, 1}, 4);
  crit.check(eight.tangent_dim == 8,
             "(1,1),(2,1),r=4: expected 8, got " +
                 std::to_string(eight.tangent_dim));
  const long long correction21 =
      h_product(Ambient{1, 1}, Bidegree{-2, -1}, 2);
  crit.check(correction21 == 0, "correction term at (2,1) should vanish");

  const long long correction22 =
      h_product(Ambient{1, 1}, Bidegree{-2, -2}, 2);
  crit.check(correction22 == 1, "correction term at (2,2) should be 1");
  for (long long r = 4; r <= 9; ++r) {
    const ModuliReport report =
        moduli_tangent_dim(Ambient{1, 1}, Polarization{2, 2}, r);
    const long long expected = r * (9 - r) + r * correction22;
    if (report.tangent_dim != expected)
      crit.fail("(1,1),(2,2),r=" + std::to_string(r) + ": expected " +
                std::to_string(expected) + ", got " +
                std::to_string(report.tangent_dim));
  }
}

/* ---- criterion 8: sweep determinism and resume -------------------------- */

void sweep_determinism(Criterion& crit) {
  const fs::path dir = fs::path("acceptance-scratch") / "sweep";
  fs::remove_all(dir);
  fs::create_directories(dir);
  SearchTask task;
  task.ambient = Ambient{1, 1};
  task.polarization = Polarization{2, 2};
  task.r = 5;

  const fs::path baseline = dir / "baseline.jsonl";
  const SweepSummary full =
      sweep(task, baseline.string(), (dir / "baseline.cp").string());
  const std::string want = slurp(baseline);
  crit.check(full.complete && !want.empty(), "baseline sweep is empty");

  SearchTask interrupted = task;
  interrupted.max_supports = 1;
  const fs::path resumed = dir / "resumed.jsonl";
  sweep(interrupted, resumed.string(), (dir / "resumed.cp").string());
  SearchTask finish = task;
  finish.jobs = 2;
  sweep(finish, resumed.string(), (dir / "resumed.cp").string());
  crit.check(slurp(resumed) == want,
             "interrupt + resume differs from the uninterrupted run");

  SearchTask parallel = task;
  parallel.jobs = 4;
  const fs::path jobs = dir / "jobs.jsonl";
  sweep(parallel, jobs.string(), (dir / "jobs.cp").string());
  crit.check(slurp(jobs) == want, "jobs=4 run differs from jobs=1");
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  run_criterion(1, "worked example systems certify as stated", 1000.0,
                example_systems);
  run_criterion(2, "subspace answer table at (1,1),(2,1)", 1000.0,
                answer_table);
  run_criterion(3, "exhaustive stability above the gap at (1,1),(2,2)",
                30000.0, exhaustive_above_gap);
  run_criterion(4, "construction grid over both ranges of factors",
                300000.0, construction_grid);
  run_criterion(5, "section-count oracle equivalences", 60000.0,
                oracle_equivalence);
  run_criterion(6, "koszul differentials compose to zero", 0.0,
                koszul_soundness);
  run_criterion(7, "moduli tangent dimensions", 1000.0, moduli_dimensions);
  run_criterion(8, "sweep determinism and resume", 0.0, sweep_determinism);
  std::printf("%d of 8 criteria passed\n", 8 - g_failures);
  return g_failures;
}
