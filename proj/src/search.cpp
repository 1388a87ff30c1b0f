#include "bisyz/search.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <numeric>
#include <set>
#include <sstream>

#include "bisyz/constructions.hpp"

namespace bisyz {

namespace {

namespace fs = std::filesystem;

using SupportKey = std::vector<std::pair<std::vector<int>, std::vector<int>>>;

SupportKey key_of(const std::vector<BigradedMonomial>& support) {
  SupportKey key;
  key.reserve(support.size());
  for (const auto& mono : support) key.emplace_back(mono.alpha, mono.beta);
  return key;
}

bool support_less(const std::vector<BigradedMonomial>& x,
                  const std::vector<BigradedMonomial>& y) {
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (canonical_less(x[i], y[i])) return true;
    if (canonical_less(y[i], x[i])) return false;
  }
  return x.size() < y.size();
}

std::vector<std::vector<int>> all_permutations(int count) {
  std::vector<int> idx(count);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::vector<int>> perms;
  do {
    perms.push_back(idx);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return perms;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_checkpoint(const std::string& path, long long records,
                      const std::string& task_hash) {
  nlohmann::json doc;
  doc["records"] = records;
  doc["task_hash"] = task_hash;
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << doc.dump();
  }
  fs::rename(tmp, path);
}

std::string record_line(const SearchTask& task, const CanonicalSupport& cs) {
  const LinearSystem sys = make_monomial_system(
      task.ambient, task.polarization, cs.monomials);
  const Certificate cert = certify(sys, task.strategy);
  const nlohmann::json cert_doc = certificate_json(cert);
  nlohmann::json rec;
  rec["certificate_hash"] = cert_doc.at("hash");
  rec["orbit_size"] = cs.orbit_size;
  nlohmann::json support = nlohmann::json::array();
  for (const auto& mono : cs.monomials) support.push_back(monomial_text(mono));
  rec["support"] = std::move(support);
  rec["task"] = search_task_json(task);
  rec["verdict"] = stability_verdict_json(cert.verdict());
  return rec.dump() + "\n";
}

}  // namespace

OrbitInfo support_orbit(const Ambient& amb, const Polarization& L,
                        const std::vector<BigradedMonomial>& support) {
  std::vector<BigradedMonomial> base = support;
  std::sort(base.begin(), base.end(), canonical_less);
  const auto x_perms = all_permutations(amb.m + 1);
  const auto y_perms = all_permutations(amb.n + 1);
  const bool swap_allowed = amb.m == amb.n && L.a == L.b;

  std::set<SupportKey> images;
  std::vector<BigradedMonomial> best = base;
  bool first = true;
  for (const auto& xp : x_perms) {
    for (const auto& yp : y_perms) {
      for (int swapped = 0; swapped <= (swap_allowed ? 1 : 0); ++swapped) {
        std::vector<BigradedMonomial> image;
        image.reserve(base.size());
        for (const auto& mono : base) {
          BigradedMonomial mapped;
          mapped.alpha.assign(amb.m + 1, 0);
          mapped.beta.assign(amb.n + 1, 0);
          for (int i = 0; i <= amb.m; ++i) mapped.alpha[xp[i]] = mono.alpha[i];
          for (int j = 0; j <= amb.n; ++j) mapped.beta[yp[j]] = mono.beta[j];
          if (swapped) std::swap(mapped.alpha, mapped.beta);
          image.push_back(std::move(mapped));
        }
        std::sort(image.begin(), image.end(), canonical_less);
        images.insert(key_of(image));
        if (first || support_less(image, best)) {
          best = image;
          first = false;
        }
      }
    }
  }
  return {best, static_cast<long long>(images.size())};
}

SupportEnumeration enumerate_supports(const SearchTask& task) {
  const Ambient& amb = task.ambient;
  const Polarization& L = task.polarization;
  const long long h0 = dim_graded_piece(amb, Bidegree{L.a, L.b});
  if (task.r < amb.dim() + 1 || task.r > h0) {
    std::ostringstream msg;
    msg << "search: r=" << task.r << " outside [" << amb.dim() + 1 << ", "
        << h0 << "]";
    throw PreconditionError{{msg.str()}};
  }

  SupportEnumeration out;
  out.raw_count = 0;
  const auto pures = pure_power_set(amb, L);
  const long long pp = static_cast<long long>(pures.size());
  if (task.r < pp) {
    out.bpf_possible = false;
    out.diagnostic = "no basepoint-free monomial support exists: r=" +
                     std::to_string(task.r) + " < (m+1)(n+1)=" +
                     std::to_string(pp);
    return out;
  }

  std::set<SupportKey::value_type> pure_keys;
  for (const auto& pure : pures) pure_keys.insert({pure.alpha, pure.beta});
  std::vector<BigradedMonomial> non_pures;
  for (const auto& mono : enumerate_monomials(amb, Bidegree{L.a, L.b}))
    if (!pure_keys.count({mono.alpha, mono.beta})) non_pures.push_back(mono);

  const int count = static_cast<int>(non_pures.size());
  const int k = static_cast<int>(task.r - pp);
  out.raw_count = binomial(count, k);

  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    std::vector<BigradedMonomial> support = pures;
    for (int i : idx) support.push_back(non_pures[i]);
    std::sort(support.begin(), support.end(), canonical_less);
    if (task.symmetry) {
      const OrbitInfo orbit = support_orbit(amb, L, support);
      if (orbit.canonical == support)
        out.supports.push_back({support, orbit.size});
    } else {
      out.supports.push_back({support, 1});
    }
    int i = k - 1;
    while (i >= 0 && idx[i] == count - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

nlohmann::json search_task_json(const SearchTask& task) {
  /* Semantic identity only: jobs and budget limits change wall-clock
     behaviour, never the record stream, so they stay out of the hash. */
  nlohmann::json doc;
  doc["m"] = task.ambient.m;
  doc["n"] = task.ambient.n;
  doc["a"] = task.polarization.a;
  doc["b"] = task.polarization.b;
  doc["r"] = task.r;
  doc["strategy"] = strategy_text(task.strategy);
  doc["symmetry"] = task.symmetry;
  return doc;
}

std::string search_task_hash(const SearchTask& task) {
  return hex64(fnv1a(search_task_json(task).dump()));
}

SweepSummary sweep(const SearchTask& task, const std::string& result_path,
                   const std::string& checkpoint_path) {
  const SupportEnumeration enumeration = enumerate_supports(task);
  SweepSummary summary;
  summary.raw_supports = enumeration.raw_count;
  const std::string task_hash = search_task_hash(task);

  if (!enumeration.bpf_possible) {
    std::ofstream(result_path, std::ios::binary | std::ios::trunc);
    write_checkpoint(checkpoint_path, 0, task_hash);
    summary.answer = "NO_BPF_SUPPORT";
    summary.complete = true;
    return summary;
  }

  long long done = 0;
  bool resumed = false;
  if (fs::exists(checkpoint_path)) {
    try {
      const auto doc = nlohmann::json::parse(read_file(checkpoint_path));
      if (doc.value("task_hash", std::string{}) == task_hash &&
          fs::exists(result_path)) {
        const long long recorded = doc.value("records", 0ll);
        const std::string content = read_file(result_path);
        std::vector<std::size_t> line_ends;
        for (std::size_t i = 0; i < content.size(); ++i)
          if (content[i] == '\n') line_ends.push_back(i + 1);
        const long long keep = std::min<long long>(
            recorded, static_cast<long long>(line_ends.size()));
        const std::size_t keep_bytes = keep == 0 ? 0 : line_ends[keep - 1];
        if (keep_bytes != content.size())
          fs::resize_file(result_path, keep_bytes);
        done = keep;
        resumed = true;
      }
    } catch (...) {
      resumed = false;
    }
  }
  if (!resumed) {
    std::ofstream(result_path, std::ios::binary | std::ios::trunc);
    write_checkpoint(checkpoint_path, 0, task_hash);
  }

  const long long total = static_cast<long long>(enumeration.supports.size());
  const auto start = std::chrono::steady_clock::now();
  const auto budget_exceeded = [&]() {
    if (task.max_supports > 0 && done >= task.max_supports) return true;
    if (task.time_budget_seconds > 0) {
      const double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                        start)
              .count();
      if (elapsed > task.time_budget_seconds) return true;
    }
    return false;
  };

  {
    std::ofstream out(result_path, std::ios::binary | std::ios::app);
    const int jobs = std::max(1, task.jobs);
    bool stopped = false;
    for (long long base = done; base < total && !stopped; base += jobs) {
      const long long chunk_end = std::min(total, base + jobs);
      std::vector<std::future<std::string>> futures;
      for (long long idx = base; idx < chunk_end; ++idx) {
        const CanonicalSupport& cs = enumeration.supports[idx];
        futures.push_back(std::async(std::launch::async, [&task, &cs]() {
          return record_line(task, cs);
        }));
      }
      for (auto& fut : futures) {
        const std::string line = fut.get();
        if (stopped) continue;
        out << line;
        out.flush();
        ++done;
        write_checkpoint(checkpoint_path, done, task_hash);
        if (budget_exceeded()) stopped = true;
      }
    }
  }

  summary.records = done;
  summary.complete = done == total;
  bool any_stable = false;
  bool any_inconclusive = false;
  std::istringstream lines(read_file(result_path));
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    const auto doc = nlohmann::json::parse(line);
    const std::string kind = doc.at("verdict").at("kind").get<std::string>();
    if (kind == "StableCertified") {
      if (!any_stable) {
        std::vector<BigradedMonomial> witness;
        for (const auto& text : doc.at("support"))
          witness.push_back(
              parse_monomial(text.get<std::string>(), task.ambient));
        summary.witness_support = std::move(witness);
      }
      any_stable = true;
    } else if (kind == "Inconclusive") {
      any_inconclusive = true;
    }
  }
  if (any_stable)
    summary.answer = "YES";
  else if (!summary.complete || any_inconclusive)
    summary.answer = "OPEN";
  else
    summary.answer = "NO";
  return summary;
}

BrennerReportTable brenner_report(const Ambient& amb, const Polarization& L,
                                  CertifyStrategy strategy, int jobs,
                                  const std::string& result_dir) {
  fs::create_directories(result_dir);
  BrennerReportTable report;
  report.ambient = amb;
  report.polarization = L;
  const long long h0 = dim_graded_piece(amb, Bidegree{L.a, L.b});
  const long long pp = static_cast<long long>(amb.m + 1) * (amb.n + 1);
  for (long long r = amb.dim() + 1; r <= h0; ++r) {
    BrennerRow row;
    row.r = r;
    const RangeClass rc = range_classify(amb.m, amb.n, L.a, L.b, r);
    row.range_class = range_class_text(rc.value);
    row.prediction = rc.value == RangeClassValue::RangeB ||
                             rc.value == RangeClassValue::RangeA
                         ? "stable-exists"
                         : "open";
    if (r < pp) {
      row.outcome = "NO_BPF_SUPPORT";
      row.complete = true;
    } else {
      SearchTask task;
      task.ambient = amb;
      task.polarization = L;
      task.r = r;
      task.strategy = strategy;
      task.symmetry = true;
      task.jobs = jobs;
      std::ostringstream stem;
      stem << "sweep-m" << amb.m << "n" << amb.n << "a" << L.a << "b" << L.b
           << "r" << r;
      const std::string base = result_dir + "/" + stem.str();
      const SweepSummary s = sweep(task, base + ".jsonl",
                                   base + ".checkpoint.json");
      row.outcome = s.answer;
      row.complete = s.complete;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

nlohmann::json sweep_summary_json(const SweepSummary& summary) {
  nlohmann::json doc;
  doc["answer"] = summary.answer;
  doc["complete"] = summary.complete;
  doc["records"] = summary.records;
  doc["raw_supports"] = summary.raw_supports.get_str();
  if (summary.witness_support) {
    nlohmann::json witness = nlohmann::json::array();
    for (const auto& mono : *summary.witness_support)
      witness.push_back(monomial_text(mono));
    doc["witness_support"] = std::move(witness);
  } else {
    doc["witness_support"] = nullptr;
  }
  return doc;
}

nlohmann::json brenner_report_json(const BrennerReportTable& report) {
  nlohmann::json doc;
  doc["m"] = report.ambient.m;
  doc["n"] = report.ambient.n;
  doc["a"] = report.polarization.a;
  doc["b"] = report.polarization.b;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"r", row.r},
                    {"class", row.range_class},
                    {"prediction", row.prediction},
                    {"outcome", row.outcome},
                    {"complete", row.complete}});
  }
  doc["rows"] = std::move(rows);
  return doc;
}

}  // namespace bisyz
