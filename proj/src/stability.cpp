#include "bisyz/stability.hpp"

#include <algorithm>
#include <chrono>

#include "bisyz/syzygy.hpp"

namespace bisyz {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

/* (r-1)(bmx+any) vs q·ab(m+n), exact. */
int slope_compare(const Ambient& amb, const Polarization& L, long long r,
                  long long q, const Bidegree& twist) {
  Integer lhs =
      to_integer(r - 1) * (Integer(L.b) * amb.m * to_integer(twist.p) +
                           Integer(L.a) * amb.n * to_integer(twist.q));
  Integer rhs = to_integer(q) * L.a * L.b * (amb.m + amb.n);
  return cmp(lhs, rhs);
}

}  // namespace

std::string verdict_kind_text(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::StableCertified:
      return "StableCertified";
    case VerdictKind::NotStable:
      return "NotStable";
    case VerdictKind::NotSemistable:
      return "NotSemistable";
    case VerdictKind::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

std::string verdict_method_text(VerdictMethod method) {
  switch (method) {
    case VerdictMethod::DegreeGap:
      return "DegreeGap";
    case VerdictMethod::BruteForceCohomological:
      return "BruteForceCohomological";
    case VerdictMethod::Rank1Witness:
      return "Rank1Witness";
  }
  return "DegreeGap";
}

std::string strategy_text(CertifyStrategy strategy) {
  switch (strategy) {
    case CertifyStrategy::DegreeGapOnly:
      return "gap-only";
    case CertifyStrategy::BruteForceOnly:
      return "brute-only";
    case CertifyStrategy::GapThenBruteForce:
      return "gap-then-brute";
  }
  return "gap-then-brute";
}

CertifyStrategy strategy_from_text(const std::string& text) {
  if (text == "gap-only") return CertifyStrategy::DegreeGapOnly;
  if (text == "brute-only") return CertifyStrategy::BruteForceOnly;
  if (text == "gap-then-brute") return CertifyStrategy::GapThenBruteForce;
  throw PreconditionError{{"unknown strategy: " + text}};
}

std::vector<Bidegree> violation_region(const Ambient& amb,
                                       const Polarization& L, long long r,
                                       long long q) {
  if (q < 1 || q > r - 2)
    throw PreconditionError{{"violation_region: need 1 <= q <= r-2"}};
  std::vector<Bidegree> region;
  /* bm >= 1 and an >= 1, so both coordinates are bounded. */
  long long x_max = q * L.a * L.b * (amb.m + amb.n) / ((r - 1) * L.b * amb.m);
  long long y_max = q * L.a * L.b * (amb.m + amb.n) / ((r - 1) * L.a * amb.n);
  for (long long x = 0; x <= x_max; ++x)
    for (long long y = 0; y <= y_max; ++y)
      if (slope_compare(amb, L, r, q, Bidegree{x, y}) <= 0)
        region.push_back(Bidegree{x, y});
  std::sort(region.begin(), region.end(), [](const Bidegree& u,
                                             const Bidegree& v) {
    return std::make_pair(u.total(), u.p) < std::make_pair(v.total(), v.p);
  });
  return region;
}

StabilityVerdict certify_degree_gap(const LinearSystem& sys) {
  require_basepoint_free(sys);
  const Ambient& amb = sys.ambient;
  const Polarization& L = sys.polarization;
  const long long r = sys.r();
  StabilityVerdict verdict;
  verdict.method = VerdictMethod::DegreeGap;
  verdict.factors_swapped = L.a < L.b;
  long long t_min = min_syzygy_total_degree(sys);
  verdict.t_min = t_min;
  long long lhs = (r - 1) * t_min * std::min(amb.m, amb.n);
  long long rhs =
      static_cast<long long>(std::max(L.a, L.b)) * (amb.m + amb.n);
  verdict.kind = lhs > rhs ? VerdictKind::StableCertified
                           : VerdictKind::Inconclusive;
  return verdict;
}

StabilityVerdict certify_brute_force(const LinearSystem& sys, int rank_cap) {
  require_basepoint_free(sys);
  const long long r = sys.r();
  if (r - 1 > rank_cap)
    throw PreconditionError{
        {"certify_brute_force: bundle rank " + std::to_string(r - 1) +
         " exceeds cap " + std::to_string(rank_cap) +
         "; use the degree-gap method"}};
  StabilityVerdict verdict;
  verdict.method = VerdictMethod::BruteForceCohomological;
  std::optional<SlopeWitness> higher_q_witness;
  for (long long q = 1; q <= r - 2; ++q) {
    for (const Bidegree& twist :
         violation_region(sys.ambient, sys.polarization, r, q)) {
      long long h0 = h0_wedge_twist(sys, TwistQuery{q, twist});
      verdict.checked_region.push_back({q, twist.p, twist.q});
      if (h0 == 0) continue;
      bool strict =
          slope_compare(sys.ambient, sys.polarization, r, q, twist) < 0;
      SlopeWitness witness{q, twist, h0, strict};
      if (q == 1) {
        verdict.kind =
            strict ? VerdictKind::NotSemistable : VerdictKind::NotStable;
        verdict.witness = witness;
        return verdict;
      }
      if (!higher_q_witness) higher_q_witness = witness;
    }
  }
  if (higher_q_witness) {
    verdict.kind = VerdictKind::Inconclusive;
    verdict.witness = higher_q_witness;
  } else {
    verdict.kind = VerdictKind::StableCertified;
  }
  return verdict;
}

std::optional<SlopeWitness> find_rank1_destabilizer(const LinearSystem& sys) {
  require_basepoint_free(sys);
  const long long r = sys.r();
  if (r < 3) return std::nullopt;
  for (const Bidegree& twist :
       violation_region(sys.ambient, sys.polarization, r, 1)) {
    long long h0 = h0_twist(sys, twist);
    if (h0 > 0) {
      bool strict =
          slope_compare(sys.ambient, sys.polarization, r, 1, twist) < 0;
      return SlopeWitness{1, twist, h0, strict};
    }
  }
  return std::nullopt;
}

Certificate certify(const LinearSystem& sys, CertifyStrategy strategy) {
  auto start = std::chrono::steady_clock::now();
  Certificate cert;
  cert.system = sys;
  cert.strategy = strategy;
  cert.bpf = basepoint_free(sys);
  if (sys.kind == SystemKind::Monomial &&
      cert.bpf.kind != BpfStatus::Kind::Certified)
    throw PreconditionError{
        {"certify: system is not basepoint-free: " + cert.bpf.text()}};
  if (cert.bpf.kind == BpfStatus::Kind::RefutedAtTorusFixedPoint)
    throw PreconditionError{
        {"certify: system is not basepoint-free: " + cert.bpf.text()}};
  cert.numerics =
      syzygy_bundle_numerics(sys.ambient, sys.polarization, sys.r());
  if (strategy == CertifyStrategy::DegreeGapOnly ||
      strategy == CertifyStrategy::GapThenBruteForce) {
    auto gap_start = std::chrono::steady_clock::now();
    cert.pipeline.push_back(certify_degree_gap(sys));
    cert.timings_ms["degree_gap"] = elapsed_ms(gap_start);
  }
  bool need_brute = strategy == CertifyStrategy::BruteForceOnly ||
                    (strategy == CertifyStrategy::GapThenBruteForce &&
                     cert.pipeline.back().kind != VerdictKind::StableCertified);
  if (need_brute) {
    auto brute_start = std::chrono::steady_clock::now();
    cert.pipeline.push_back(certify_brute_force(sys));
    cert.timings_ms["brute_force"] = elapsed_ms(brute_start);
  }
  cert.timings_ms["total"] = elapsed_ms(start);
  return cert;
}

nlohmann::json stability_verdict_json(const StabilityVerdict& verdict) {
  nlohmann::json doc;
  doc["kind"] = verdict_kind_text(verdict.kind);
  doc["method"] = verdict_method_text(verdict.method);
  if (verdict.t_min) doc["t_min"] = *verdict.t_min;
  if (verdict.witness) {
    doc["witness"] = {{"q", verdict.witness->q},
                      {"x", verdict.witness->twist.p},
                      {"y", verdict.witness->twist.q},
                      {"h0", verdict.witness->h0},
                      {"comparison",
                       verdict.witness->strict ? "strict" : "equal"}};
  }
  if (!verdict.checked_region.empty()) {
    nlohmann::json region = nlohmann::json::array();
    for (const auto& [q, x, y] : verdict.checked_region)
      region.push_back({q, x, y});
    doc["checked_region"] = std::move(region);
  }
  if (verdict.factors_swapped)
    doc["orientation"] = *verdict.factors_swapped ? "factors-swapped"
                                                  : "as-given";
  return doc;
}

nlohmann::json certificate_json(const Certificate& cert) {
  nlohmann::json doc;
  doc["version"] = "1";
  doc["system"] = linear_system_json(cert.system);
  doc["bpf"] = cert.bpf.text();
  doc["numerics"] = {
      {"rank", cert.numerics.rank},
      {"c1", {cert.numerics.c1.p, cert.numerics.c1.q}},
      {"slope", cert.numerics.slope.get_str()}};
  doc["strategy"] = strategy_text(cert.strategy);
  nlohmann::json pipeline = nlohmann::json::array();
  for (const StabilityVerdict& verdict : cert.pipeline)
    pipeline.push_back(stability_verdict_json(verdict));
  doc["pipeline"] = std::move(pipeline);
  doc["verdict"] = stability_verdict_json(cert.verdict());
  doc["hash"] = certificate_hash(doc);
  nlohmann::json timings;
  for (const auto& [key, value] : cert.timings_ms) timings[key] = value;
  doc["timings_ms"] = std::move(timings);
  return doc;
}

std::string certificate_hash(nlohmann::json doc) {
  doc.erase("hash");
  doc.erase("timings_ms");
  return hex64(fnv1a(doc.dump()));
}

RecheckReport recheck_certificate(const nlohmann::json& doc) {
  RecheckReport report;
  if (doc.contains("hash")) {
    std::string recomputed = certificate_hash(doc);
    if (doc.at("hash").get<std::string>() != recomputed) {
      report.ok = false;
      report.mismatches.push_back("hash: recorded " +
                                  doc.at("hash").get<std::string>() +
                                  ", recomputed " + recomputed);
    }
  }
  LinearSystem sys = linear_system_from_json(doc.at("system"));
  CertifyStrategy strategy =
      strategy_from_text(doc.at("strategy").get<std::string>());
  Certificate fresh = certify(sys, strategy);
  nlohmann::json fresh_doc = certificate_json(fresh);
  for (const char* key : {"system", "bpf", "numerics", "pipeline", "verdict"}) {
    if (!doc.contains(key)) {
      report.ok = false;
      report.mismatches.push_back(std::string(key) + ": missing");
      continue;
    }
    if (doc.at(key) != fresh_doc.at(key)) {
      report.ok = false;
      report.mismatches.push_back(std::string(key) + ": recorded " +
                                  doc.at(key).dump() + ", recomputed " +
                                  fresh_doc.at(key).dump());
    }
  }
  return report;
}

}  // namespace bisyz
