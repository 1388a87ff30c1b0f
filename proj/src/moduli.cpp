#include "bisyz/moduli.hpp"

#include <sstream>

namespace bisyz {

long long h_projective(int n, long long d, int i) {
  if (n < 0 || i < 0) throw PreconditionError{{"h_projective: n, i must be >= 0"}};
  if (i == 0 && d >= 0) return binomial(n + d, n).get_si();
  if (i == n && d <= -n - 1) return binomial(-d - 1, n).get_si();
  return 0;
}

long long h_product(const Ambient& amb, const Bidegree& deg, int i) {
  long long total = 0;
  for (int i1 = 0; i1 <= i; ++i1)
    total += h_projective(amb.m, deg.p, i1) * h_projective(amb.n, deg.q, i - i1);
  return total;
}

ModuliReport moduli_tangent_dim(const Ambient& amb, const Polarization& L,
                                long long r) {
  ModuliReport report;
  report.ambient = amb;
  report.polarization = L;
  report.r = r;
  report.h0 = dim_graded_piece(amb, Bidegree{L.a, L.b});
  if (r < amb.dim() + 1 || r > report.h0) {
    std::ostringstream msg;
    msg << "moduli_tangent_dim: r=" << r << " outside [" << amb.dim() + 1
        << ", " << report.h0 << "]";
    throw PreconditionError{{msg.str()}};
  }
  report.complete = r == report.h0;

  const int dim = amb.dim();
  if (dim >= 4)
    report.case_label = "a";
  else if (dim == 3)
    report.case_label = report.complete ? "b" : "c";
  else
    report.case_label = "d";

  const Bidegree zero{0, 0};
  const Bidegree pol{L.a, L.b};
  const Bidegree dual{-L.a, -L.b};
  const auto record = [&](const std::string& name, long long value) {
    report.hypotheses.emplace_back(name, value);
    return value;
  };
  const long long h1o = record("h1(O)", h_product(amb, zero, 1));
  const long long h2o = record("h2(O)", h_product(amb, zero, 2));
  const long long h3o = record("h3(O)", h_product(amb, zero, 3));
  const long long h1l = record("h1(O(L))", h_product(amb, pol, 1));
  if (h1o != 0 || h2o != 0 || h3o != 0 || h1l != 0)
    throw BisyzError{"moduli_tangent_dim: structure-sheaf hypothesis failed"};

  report.tangent_dim = r * (report.h0 - r);
  if (report.case_label == "c") {
    const long long h3dual = record("h3(O(-L))", h_product(amb, dual, 3));
    if (h3dual != 0) {
      report.smooth_point = false;
      report.smooth_not_established = true;
    }
  } else if (report.case_label == "d") {
    const long long h2dual = record("h2(O(-L))", h_product(amb, dual, 2));
    record("h3(O(-L))", h_product(amb, dual, 3));
    report.tangent_dim += r * h2dual;
  } else if (dim >= 4) {
    record("h2(O(-L))", h_product(amb, dual, 2));
  }
  report.rigid = report.tangent_dim == 0;
  return report;
}

nlohmann::json moduli_report_json(const ModuliReport& report) {
  nlohmann::json doc;
  doc["m"] = report.ambient.m;
  doc["n"] = report.ambient.n;
  doc["a"] = report.polarization.a;
  doc["b"] = report.polarization.b;
  doc["r"] = report.r;
  doc["h0"] = report.h0;
  doc["complete"] = report.complete;
  doc["case"] = report.case_label;
  nlohmann::json hypotheses = nlohmann::json::array();
  for (const auto& [name, value] : report.hypotheses)
    hypotheses.push_back({{"name", name}, {"value", value}});
  doc["hypotheses"] = std::move(hypotheses);
  if (report.smooth_not_established)
    doc["smooth_point"] = "not-established";
  else
    doc["smooth_point"] = report.smooth_point;
  doc["tangent_dim"] = report.tangent_dim;
  doc["rigid"] = report.rigid;
  doc["assumes_stable"] = report.assumes_stable;
  return doc;
}

}  // namespace bisyz
