#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "bisyz/core.hpp"
#include "bisyz/linsys.hpp"
#include "json.hpp"

namespace bisyz {

enum class VerdictKind { StableCertified, NotStable, NotSemistable, Inconclusive };
enum class VerdictMethod { DegreeGap, BruteForceCohomological, Rank1Witness };
enum class CertifyStrategy { DegreeGapOnly, BruteForceOnly, GapThenBruteForce };

struct SlopeWitness {
  long long q = 1;
  Bidegree twist;
  long long h0 = 0;
  /* true: subsheaf slope strictly larger; false: slopes equal. */
  bool strict = false;
  bool operator==(const SlopeWitness&) const = default;
};

struct StabilityVerdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  VerdictMethod method = VerdictMethod::DegreeGap;
  std::optional<SlopeWitness> witness;
  /* (q,x,y) triples actually checked, in scan order. */
  std::vector<std::tuple<long long, long long, long long>> checked_region;
  std::optional<long long> t_min;
  /* DegreeGap only: whether the a >= b normalization reads the factors in
     the given order or exchanged. */
  std::optional<bool> factors_swapped;
};

struct Certificate {
  LinearSystem system;
  BpfStatus bpf;
  BundleNumerics numerics;
  CertifyStrategy strategy = CertifyStrategy::GapThenBruteForce;
  /* Sub-verdicts in run order; the last entry is the final verdict. */
  std::vector<StabilityVerdict> pipeline;
  std::map<std::string, double> timings_ms;

  const StabilityVerdict& verdict() const { return pipeline.back(); }
};

inline constexpr int kDefaultRankCap = 10;

std::string verdict_kind_text(VerdictKind kind);
std::string verdict_method_text(VerdictMethod method);
std::string strategy_text(CertifyStrategy strategy);
CertifyStrategy strategy_from_text(const std::string& text);

/* All (x,y) >= 0 with (r-1)(bmx+any) <= q·ab(m+n), sorted by (x+y,x). */
std::vector<Bidegree> violation_region(const Ambient& amb,
                                       const Polarization& L, long long r,
                                       long long q);

/* StableCertified iff (r-1)·t_min·min(m,n) > max(a,b)·(m+n). */
StabilityVerdict certify_degree_gap(const LinearSystem& sys);

StabilityVerdict certify_brute_force(const LinearSystem& sys,
                                     int rank_cap = kDefaultRankCap);

std::optional<SlopeWitness> find_rank1_destabilizer(const LinearSystem& sys);

Certificate certify(const LinearSystem& sys, CertifyStrategy strategy);

nlohmann::json stability_verdict_json(const StabilityVerdict& verdict);
nlohmann::json certificate_json(const Certificate& cert);

/* FNV hash of the certificate JSON with volatile fields (hash, timings_ms)
   removed. */
std::string certificate_hash(nlohmann::json doc);

struct RecheckReport {
  bool ok = true;
  std::vector<std::string> mismatches;
};

/* Reruns the full pipeline from the embedded system and compares every
   recorded claim. */
RecheckReport recheck_certificate(const nlohmann::json& doc);

}  // namespace bisyz
