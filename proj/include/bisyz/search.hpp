#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bisyz/core.hpp"
#include "bisyz/linsys.hpp"
#include "bisyz/stability.hpp"
#include "json.hpp"

namespace bisyz {

struct SearchTask {
  Ambient ambient;
  Polarization polarization;
  long long r = 0;
  CertifyStrategy strategy = CertifyStrategy::GapThenBruteForce;
  /* Quotient by S_{m+1} x S_{n+1}, plus the factor swap when m = n and
     a = b. */
  bool symmetry = true;
  long long max_supports = 0;        // 0 = unlimited
  double time_budget_seconds = 0.0;  // 0 = unlimited
  int jobs = 1;
};

struct OrbitInfo {
  std::vector<BigradedMonomial> canonical;
  long long size = 1;
};

/* Lexicographically-least image of the support under the symmetry group,
   together with the number of distinct images. */
OrbitInfo support_orbit(const Ambient& amb, const Polarization& L,
                        const std::vector<BigradedMonomial>& support);

struct CanonicalSupport {
  std::vector<BigradedMonomial> monomials;
  long long orbit_size = 1;
};

struct SupportEnumeration {
  std::vector<CanonicalSupport> supports;
  bool bpf_possible = true;
  std::string diagnostic;
  /* Number of raw supports, C(h0 - (m+1)(n+1), r - (m+1)(n+1)). */
  Integer raw_count;
};

/* All size-r supports containing the pure powers, one representative per
   orbit when symmetry is on, in deterministic lexicographic order. */
SupportEnumeration enumerate_supports(const SearchTask& task);

struct SweepSummary {
  std::string answer;  // YES | NO | OPEN | NO_BPF_SUPPORT
  bool complete = true;
  long long records = 0;
  Integer raw_supports;
  std::optional<std::vector<BigradedMonomial>> witness_support;
};

nlohmann::json search_task_json(const SearchTask& task);
std::string search_task_hash(const SearchTask& task);

/* Certifies every enumerated support, appending one JSON record per line to
   result_path in enumeration order; the checkpoint (record count + task
   hash) is rewritten atomically after every record, so an interrupted sweep
   resumes to a byte-identical file. */
SweepSummary sweep(const SearchTask& task, const std::string& result_path,
                   const std::string& checkpoint_path);

struct BrennerRow {
  long long r = 0;
  std::string range_class;
  std::string prediction;  // stable-exists | open
  std::string outcome;     // YES | NO | OPEN | NO_BPF_SUPPORT | skipped
  bool complete = true;
};

struct BrennerReportTable {
  Ambient ambient;
  Polarization polarization;
  std::vector<BrennerRow> rows;
};

/* One row per r in [m+n+1, h0]: range class, the stability prediction where
   the theory gives one, and the sweep outcome. */
BrennerReportTable brenner_report(const Ambient& amb, const Polarization& L,
                                  CertifyStrategy strategy, int jobs,
                                  const std::string& result_dir);

nlohmann::json sweep_summary_json(const SweepSummary& summary);
nlohmann::json brenner_report_json(const BrennerReportTable& report);

}  // namespace bisyz
