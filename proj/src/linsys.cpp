#include "bisyz/linsys.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "bisyz/linalg.hpp"

namespace bisyz {

namespace {

void validate_support(const Ambient& amb, const Polarization& L,
                      std::vector<BigradedMonomial>& support) {
  Bidegree want{L.a, L.b};
  for (const BigradedMonomial& mono : support) {
    if (static_cast<int>(mono.alpha.size()) != amb.m + 1 ||
        static_cast<int>(mono.beta.size()) != amb.n + 1)
      throw PreconditionError{{"linear system: monomial has wrong ambient"}};
    if (!(mono.bidegree() == want))
      throw PreconditionError{
          {"linear system: monomial " + monomial_text(mono) +
           " does not have bidegree (" + std::to_string(L.a) + "," +
           std::to_string(L.b) + ")"}};
  }
  std::vector<BigradedMonomial> sorted = support;
  std::sort(sorted.begin(), sorted.end(), canonical_less);
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1])
      throw PreconditionError{
          {"linear system: duplicate monomial " + monomial_text(sorted[i])}};
  support = std::move(sorted);
}

/* Sort support canonically, permuting coefficient columns in step. */
void canonicalize_with_coeffs(std::vector<BigradedMonomial>& support,
                              std::vector<std::vector<Integer>>& coeffs) {
  std::vector<std::size_t> order(support.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return canonical_less(support[x], support[y]);
  });
  std::vector<BigradedMonomial> new_support;
  new_support.reserve(support.size());
  for (std::size_t idx : order) new_support.push_back(support[idx]);
  support = std::move(new_support);
  for (std::vector<Integer>& row : coeffs) {
    std::vector<Integer> new_row;
    new_row.reserve(row.size());
    for (std::size_t idx : order) new_row.push_back(row[idx]);
    row = std::move(new_row);
  }
}

bool has_full_row_rank(const LinearSystem& sys) {
  std::size_t r = sys.coeffs.size();
  std::size_t c = sys.support.size();
  if (sys.field_prime != 0) {
    PMatrix mat(r, c, sys.field_prime);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        mat.at(i, j) = mod_reduce(sys.coeffs[i][j], sys.field_prime);
    return rank(std::move(mat)) == r;
  }
  QMatrix mat(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) mat.at(i, j) = sys.coeffs[i][j];
  return rank(std::move(mat)) == r;
}

/* rank over F_p never exceeds rank over Q, so a full mod-p rank proves
   full rational rank. */
bool full_rank_fast_proof(const LinearSystem& sys) {
  std::size_t r = sys.coeffs.size();
  std::size_t c = sys.support.size();
  PMatrix mat(r, c, kDefaultPrime);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      mat.at(i, j) = mod_reduce(sys.coeffs[i][j], kDefaultPrime);
  return rank(std::move(mat)) == r;
}

long long uniform_in_range(std::mt19937_64& rng, long long lo, long long hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  for (;;) {
    std::uint64_t v = rng();
    if (v < limit) return lo + static_cast<long long>(v % span);
  }
}

BigradedMonomial pure_power(const Ambient& amb, const Polarization& L, int i,
                            int j) {
  BigradedMonomial mono;
  mono.alpha.assign(amb.m + 1, 0);
  mono.beta.assign(amb.n + 1, 0);
  mono.alpha[i] = L.a;
  mono.beta[j] = L.b;
  return mono;
}

}  // namespace

std::string BpfStatus::text() const {
  switch (kind) {
    case Kind::Certified:
      return "Certified";
    case Kind::RefutedAtTorusFixedPoint:
      return "RefutedAtTorusFixedPoint(" + std::to_string(i) + "," +
             std::to_string(j) + ")";
    case Kind::AssertedGeneric:
      return "AssertedGeneric";
    case Kind::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

LinearSystem make_monomial_system(const Ambient& amb, const Polarization& L,
                                  std::vector<BigradedMonomial> monomials) {
  LinearSystem sys;
  sys.ambient = amb;
  sys.polarization = L;
  sys.kind = SystemKind::Monomial;
  sys.support = std::move(monomials);
  validate_support(amb, L, sys.support);
  return sys;
}

LinearSystem make_general_system(const Ambient& amb, const Polarization& L,
                                 std::vector<BigradedMonomial> support,
                                 std::vector<std::vector<Integer>> coeffs,
                                 std::uint64_t field_prime) {
  LinearSystem sys;
  sys.ambient = amb;
  sys.polarization = L;
  sys.kind = SystemKind::General;
  sys.support = std::move(support);
  sys.coeffs = std::move(coeffs);
  sys.field_prime = field_prime;
  {
    std::vector<BigradedMonomial> check = sys.support;
    validate_support(amb, L, check);
  }
  canonicalize_with_coeffs(sys.support, sys.coeffs);
  if (sys.coeffs.empty())
    throw PreconditionError{{"general system: no coefficient rows"}};
  for (const std::vector<Integer>& row : sys.coeffs)
    if (row.size() != sys.support.size())
      throw PreconditionError{
          {"general system: coefficient row length != |support|"}};
  if (sys.coeffs.size() > sys.support.size())
    throw PreconditionError{{"general system: r exceeds |support|"}};
  if (!has_full_row_rank(sys))
    throw PreconditionError{{"general system: coefficient rows dependent"}};
  return sys;
}

std::vector<BigradedMonomial> pure_power_set(const Ambient& amb,
                                             const Polarization& L) {
  std::vector<BigradedMonomial> out;
  out.reserve((amb.m + 1) * (amb.n + 1));
  for (int i = 0; i <= amb.m; ++i)
    for (int j = 0; j <= amb.n; ++j) out.push_back(pure_power(amb, L, i, j));
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

BpfStatus basepoint_free_monomial(const LinearSystem& sys) {
  if (sys.kind != SystemKind::Monomial)
    throw PreconditionError{
        {"basepoint_free_monomial: system is not monomial"}};
  const Ambient& amb = sys.ambient;
  for (int i = 0; i <= amb.m; ++i)
    for (int j = 0; j <= amb.n; ++j) {
      BigradedMonomial want = pure_power(amb, sys.polarization, i, j);
      if (std::find(sys.support.begin(), sys.support.end(), want) ==
          sys.support.end())
        return BpfStatus{BpfStatus::Kind::RefutedAtTorusFixedPoint, i, j};
    }
  return BpfStatus{BpfStatus::Kind::Certified, -1, -1};
}

BpfStatus basepoint_free_general(const LinearSystem& sys) {
  if (sys.kind != SystemKind::General)
    throw PreconditionError{{"basepoint_free_general: system is not general"}};
  const Ambient& amb = sys.ambient;
  /* At the torus-fixed point (i,j) only the pure-power column survives. */
  for (int i = 0; i <= amb.m; ++i)
    for (int j = 0; j <= amb.n; ++j) {
      BigradedMonomial want = pure_power(amb, sys.polarization, i, j);
      auto it = std::find(sys.support.begin(), sys.support.end(), want);
      bool all_vanish = true;
      if (it != sys.support.end()) {
        std::size_t col = static_cast<std::size_t>(it - sys.support.begin());
        for (const std::vector<Integer>& row : sys.coeffs) {
          Integer value = row[col];
          if (sys.field_prime != 0 &&
              mod_reduce(value, sys.field_prime) == 0)
            continue;
          if (sys.field_prime == 0 && value == 0) continue;
          all_vanish = false;
          break;
        }
      }
      if (all_vanish)
        return BpfStatus{BpfStatus::Kind::RefutedAtTorusFixedPoint, i, j};
    }
  LinearSystem support_system =
      make_monomial_system(amb, sys.polarization, sys.support);
  bool support_bpf = basepoint_free_monomial(support_system).kind ==
                     BpfStatus::Kind::Certified;
  if (support_bpf && sys.r() >= amb.m + amb.n + 1 && sys.has_seed)
    return BpfStatus{BpfStatus::Kind::AssertedGeneric, -1, -1};
  return BpfStatus{BpfStatus::Kind::Unknown, -1, -1};
}

BpfStatus basepoint_free(const LinearSystem& sys) {
  return sys.kind == SystemKind::Monomial ? basepoint_free_monomial(sys)
                                          : basepoint_free_general(sys);
}

void require_basepoint_free(const LinearSystem& sys) {
  BpfStatus status = basepoint_free(sys);
  if (sys.kind == SystemKind::Monomial) {
    if (status.kind != BpfStatus::Kind::Certified)
      throw PreconditionError{
          {"system is not basepoint-free: " + status.text()}};
  } else if (status.kind == BpfStatus::Kind::RefutedAtTorusFixedPoint) {
    throw PreconditionError{
        {"system is not basepoint-free: " + status.text()}};
  }
}

LinearSystem random_general_system(const Ambient& amb, const Polarization& L,
                                   std::vector<BigradedMonomial> support,
                                   long long r, std::uint64_t seed,
                                   std::uint64_t field_prime) {
  validate_support(amb, L, support);
  if (r < 1 || static_cast<std::size_t>(r) > support.size())
    throw PreconditionError{
        {"random_general_system: need 1 <= r <= |support|"}};
  for (int retry = 0;; ++retry) {
    if (retry > 1000)
      throw BisyzError{"random_general_system: rank retries exhausted"};
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(retry));
    std::vector<std::vector<Integer>> coeffs(
        r, std::vector<Integer>(support.size()));
    for (long long i = 0; i < r; ++i)
      for (std::size_t j = 0; j < support.size(); ++j)
        coeffs[i][j] = Integer(static_cast<long>(
            uniform_in_range(rng, -kCoeffRange, kCoeffRange)));
    LinearSystem sys;
    sys.ambient = amb;
    sys.polarization = L;
    sys.kind = SystemKind::General;
    sys.support = support;
    sys.coeffs = std::move(coeffs);
    sys.field_prime = field_prime;
    sys.has_seed = true;
    sys.seed = seed;
    sys.seed_retries = retry;
    bool ok = field_prime != 0 ? has_full_row_rank(sys)
                               : full_rank_fast_proof(sys);
    if (ok) return sys;
  }
}

nlohmann::json linear_system_json(const LinearSystem& sys) {
  nlohmann::json doc;
  doc["m"] = sys.ambient.m;
  doc["n"] = sys.ambient.n;
  doc["a"] = sys.polarization.a;
  doc["b"] = sys.polarization.b;
  doc["kind"] = sys.kind == SystemKind::Monomial ? "monomial" : "general";
  nlohmann::json support = nlohmann::json::array();
  for (const BigradedMonomial& mono : sys.support)
    support.push_back({mono.alpha, mono.beta});
  doc["support"] = std::move(support);
  if (sys.kind == SystemKind::General) {
    nlohmann::json rows = nlohmann::json::array();
    for (const std::vector<Integer>& row : sys.coeffs) {
      nlohmann::json cells = nlohmann::json::array();
      for (const Integer& value : row) cells.push_back(value.get_str());
      rows.push_back(std::move(cells));
    }
    doc["coeffs"] = std::move(rows);
    doc["field"] = sys.field_prime == 0
                       ? std::string("rational")
                       : "prime:" + std::to_string(sys.field_prime);
    if (sys.has_seed) {
      doc["seed"] = sys.seed;
      doc["seed_retries"] = sys.seed_retries;
    }
  }
  return doc;
}

LinearSystem linear_system_from_json(const nlohmann::json& doc) {
  Ambient amb{doc.at("m").get<int>(), doc.at("n").get<int>()};
  Polarization L{doc.at("a").get<int>(), doc.at("b").get<int>()};
  if (amb.m < 1 || amb.n < 1 || L.a < 1 || L.b < 1)
    throw PreconditionError{{"linear system json: need m,n,a,b >= 1"}};
  std::vector<BigradedMonomial> support;
  for (const nlohmann::json& entry : doc.at("support")) {
    BigradedMonomial mono;
    mono.alpha = entry.at(0).get<std::vector<int>>();
    mono.beta = entry.at(1).get<std::vector<int>>();
    support.push_back(std::move(mono));
  }
  std::string kind = doc.at("kind").get<std::string>();
  if (kind == "monomial") return make_monomial_system(amb, L, support);
  if (kind != "general")
    throw PreconditionError{{"linear system json: unknown kind " + kind}};
  std::vector<std::vector<Integer>> coeffs;
  for (const nlohmann::json& row : doc.at("coeffs")) {
    std::vector<Integer> cells;
    for (const nlohmann::json& cell : row) {
      if (cell.is_string())
        cells.emplace_back(cell.get<std::string>());
      else
        cells.emplace_back(static_cast<long>(cell.get<long long>()));
    }
    coeffs.push_back(std::move(cells));
  }
  std::uint64_t prime = 0;
  if (doc.contains("field")) {
    std::string field = doc.at("field").get<std::string>();
    if (field.rfind("prime:", 0) == 0)
      prime = std::stoull(field.substr(6));
    else if (field != "rational")
      throw PreconditionError{{"linear system json: unknown field " + field}};
  }
  LinearSystem sys = make_general_system(amb, L, support, coeffs, prime);
  if (doc.contains("seed")) {
    sys.has_seed = true;
    sys.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("seed_retries"))
      sys.seed_retries = doc.at("seed_retries").get<int>();
  }
  return sys;
}

}  // namespace bisyz
