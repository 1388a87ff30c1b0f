#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bisyz/constructions.hpp"
#include "bisyz/moduli.hpp"
#include "bisyz/search.hpp"
#include "bisyz/stability.hpp"
#include "bisyz/syzygy.hpp"

namespace {

namespace fs = std::filesystem;
using bisyz::Ambient;
using bisyz::Bidegree;
using bisyz::BigradedMonomial;
using bisyz::LinearSystem;
using bisyz::Polarization;

struct Options {
  int m = 1, n = 1, a = 1, b = 1;
  long long r = 0;
  long long q = 1;
  long long x = 0, y = 0;
  std::string system_spec;
  std::string out_path;
  std::string format = "table";
  std::string strategy = "gap-then-brute";
  std::string recheck_path;
  std::uint64_t seed = 0;
  std::uint64_t prime = 0;
  bool general = false;
  bool with_mingens = false;
  long long profile_bound = -1;
  int jobs = 1;
  bool no_symmetry = false;
  long long max_supports = 0;
  double budget_seconds = 0.0;
  bool got_m = false, got_n = false, got_a = false, got_b = false;
};

std::string result_dir() {
  if (const char* dir = std::getenv("BISYZ_RESULT_DIR")) return dir;
  return "bisyz-results";
}

std::vector<std::string> split_terms(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (c == ',') {
      out.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  out.push_back(current);
  for (auto& term : out) {
    const auto first = term.find_first_not_of(" \t");
    const auto last = term.find_last_not_of(" \t");
    term = first == std::string::npos ? std::string{}
                                      : term.substr(first, last - first + 1);
  }
  return out;
}

LinearSystem load_system(const Options& opt) {
  if (opt.system_spec.empty())
    throw bisyz::PreconditionError{{"--system is required"}};
  if (fs::exists(opt.system_spec)) {
    std::ifstream in(opt.system_spec, std::ios::binary);
    nlohmann::json doc = nlohmann::json::parse(in);
    LinearSystem sys = bisyz::linear_system_from_json(doc);
    if ((opt.got_m && sys.ambient.m != opt.m) ||
        (opt.got_n && sys.ambient.n != opt.n) ||
        (opt.got_a && sys.polarization.a != opt.a) ||
        (opt.got_b && sys.polarization.b != opt.b))
      throw bisyz::PreconditionError{
          {"flags (m,n,a,b) disagree with the system file"}};
    return sys;
  }
  const Ambient amb{opt.m, opt.n};
  const Polarization pol{opt.a, opt.b};
  std::vector<BigradedMonomial> monomials;
  for (const auto& term : split_terms(opt.system_spec)) {
    if (term.empty())
      throw bisyz::PreconditionError{{"empty monomial in --system"}};
    monomials.push_back(bisyz::parse_monomial(term, amb));
  }
  if (opt.general) {
    if (opt.r <= 0)
      throw bisyz::PreconditionError{{"--general requires --r"}};
    return bisyz::random_general_system(amb, pol, monomials, opt.r, opt.seed,
                                        opt.prime);
  }
  return bisyz::make_monomial_system(amb, pol, monomials);
}

void write_out(const Options& opt, const nlohmann::json& doc) {
  if (opt.out_path.empty()) return;
  if (const fs::path parent = fs::path(opt.out_path).parent_path();
      !parent.empty())
    fs::create_directories(parent);
  std::ofstream out(opt.out_path, std::ios::binary | std::ios::trunc);
  out << doc.dump(2) << "\n";
}

int emit(const Options& opt, const nlohmann::json& doc,
         const std::string& table_text) {
  write_out(opt, doc);
  if (opt.format == "json")
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << table_text;
  return 0;
}

std::string certificate_table(const nlohmann::json& doc) {
  std::ostringstream out;
  const auto& verdict = doc.at("verdict");
  out << "verdict:  " << verdict.at("kind").get<std::string>() << "\n";
  out << "method:   " << verdict.at("method").get<std::string>() << "\n";
  if (verdict.contains("witness") && !verdict.at("witness").is_null()) {
    const auto& w = verdict.at("witness");
    out << "witness:  q=" << w.at("q") << " twist=(" << w.at("x") << ","
        << w.at("y") << ") h0=" << w.at("h0") << " comparison="
        << w.at("comparison").get<std::string>() << "\n";
  }
  if (verdict.contains("t_min") && !verdict.at("t_min").is_null())
    out << "t_min:    " << verdict.at("t_min") << "\n";
  out << "slope:    "
      << doc.at("numerics").at("slope").get<std::string>() << "\n";
  out << "hash:     " << doc.at("hash").get<std::string>() << "\n";
  return out.str();
}

int run_certify(const Options& opt) {
  if (!opt.recheck_path.empty()) {
    std::ifstream in(opt.recheck_path, std::ios::binary);
    if (!in)
      throw bisyz::PreconditionError{
          {"cannot open certificate " + opt.recheck_path}};
    const nlohmann::json doc = nlohmann::json::parse(in);
    const bisyz::RecheckReport report = bisyz::recheck_certificate(doc);
    nlohmann::json out;
    out["ok"] = report.ok;
    out["mismatches"] = report.mismatches;
    std::ostringstream table;
    table << (report.ok ? "recheck ok\n" : "recheck FAILED\n");
    for (const auto& line : report.mismatches) table << "  " << line << "\n";
    emit(opt, out, table.str());
    return report.ok ? 0 : 1;
  }
  const LinearSystem sys = load_system(opt);
  const bisyz::Certificate cert =
      bisyz::certify(sys, bisyz::strategy_from_text(opt.strategy));
  const nlohmann::json doc = bisyz::certificate_json(cert);
  return emit(opt, doc, certificate_table(doc));
}

int run_h0(const Options& opt) {
  const LinearSystem sys = load_system(opt);
  const long long value = bisyz::h0_twist(sys, Bidegree{opt.x, opt.y});
  nlohmann::json doc;
  doc["m"] = sys.ambient.m;
  doc["n"] = sys.ambient.n;
  doc["a"] = sys.polarization.a;
  doc["b"] = sys.polarization.b;
  doc["q"] = 1;
  doc["x"] = opt.x;
  doc["y"] = opt.y;
  doc["h0"] = value;
  return emit(opt, doc, "h0 = " + std::to_string(value) + "\n");
}

int run_wedge(const Options& opt) {
  const LinearSystem sys = load_system(opt);
  const long long value =
      bisyz::h0_wedge_twist(sys, {opt.q, Bidegree{opt.x, opt.y}});
  nlohmann::json doc;
  doc["m"] = sys.ambient.m;
  doc["n"] = sys.ambient.n;
  doc["a"] = sys.polarization.a;
  doc["b"] = sys.polarization.b;
  doc["q"] = opt.q;
  doc["x"] = opt.x;
  doc["y"] = opt.y;
  doc["h0"] = value;
  return emit(opt, doc, "h0 = " + std::to_string(value) + "\n");
}

int run_tmin(const Options& opt) {
  const LinearSystem sys = load_system(opt);
  const long long table_bound =
      opt.profile_bound >= 0 ? opt.profile_bound
                             : sys.polarization.a + sys.polarization.b;
  const bisyz::SyzygyProfile profile = bisyz::syzygy_profile(
      sys, table_bound, opt.with_mingens,
      opt.profile_bound >= 0 ? opt.profile_bound
                             : bisyz::default_generator_bound(sys));
  const nlohmann::json doc = bisyz::syzygy_profile_json(profile);
  std::ostringstream table;
  table << "t_min = " << profile.t_min << "\n";
  for (const auto& [twist, h0] : profile.table)
    if (h0 > 0)
      table << "  h0(" << twist.p << "," << twist.q << ") = " << h0 << "\n";
  if (profile.has_mingens) {
    table << "minimal generators:\n";
    for (const auto& [twist, count] : profile.mingens)
      table << "  (" << twist.p << "," << twist.q << "): " << count << "\n";
  }
  return emit(opt, doc, table.str());
}

int run_construct(const Options& opt) {
  const bisyz::ConstructionRecipe recipe =
      bisyz::build_W(opt.m, opt.n, opt.a, opt.b, opt.r);
  nlohmann::json doc;
  doc["recipe"] = bisyz::recipe_json(recipe);
  try {
    const LinearSystem sys = bisyz::build_V(opt.m, opt.n, opt.a, opt.b, opt.r);
    doc["system"] = bisyz::linear_system_json(sys);
  } catch (const bisyz::ConstructionUnavailable& err) {
    doc["system"] = nullptr;
    doc["system_note"] = err.message;
  }
  std::ostringstream table;
  table << "case " << bisyz::case_label_text(recipe.case_label) << " (subcase "
        << bisyz::subcase_text(recipe.subcase) << "), t=" << recipe.t
        << ", N=" << recipe.N << ", strategy "
        << bisyz::strategy_label_text(recipe.strategy) << "\n";
  for (const auto& mono : recipe.monomials)
    table << "  " << bisyz::monomial_text(mono) << "\n";
  return emit(opt, doc, table.str());
}

int run_classify(const Options& opt) {
  const bisyz::RangeClass rc =
      bisyz::range_classify(opt.m, opt.n, opt.a, opt.b, opt.r);
  nlohmann::json doc = bisyz::range_class_json(rc, opt.r);
  doc["m"] = opt.m;
  doc["n"] = opt.n;
  doc["a"] = opt.a;
  doc["b"] = opt.b;
  if (rc.value == bisyz::RangeClassValue::RangeB) {
    const long long t = bisyz::t_r(opt.m, opt.n, opt.a, opt.b, opt.r);
    doc["t_r"] = t;
    doc["epsilon"] = bisyz::epsilon(std::max(opt.a, opt.b), t);
  }
  std::ostringstream table;
  table << "class:      " << doc.at("class").get<std::string>() << "\n";
  table << "threshold:  " << doc.at("threshold").get<std::string>() << "\n";
  table << "upper:      " << doc.at("upper").get<std::string>() << "\n";
  table << "h0:         " << rc.h0 << "\n";
  if (doc.contains("t_r")) table << "t_r:        " << doc.at("t_r") << "\n";
  if (rc.monomial_gap_note)
    table << "note: r below the pure-power count, no monomial bpf support\n";
  return emit(opt, doc, table.str());
}

int run_moduli(const Options& opt) {
  const bisyz::ModuliReport report = bisyz::moduli_tangent_dim(
      Ambient{opt.m, opt.n}, Polarization{opt.a, opt.b}, opt.r);
  const nlohmann::json doc = bisyz::moduli_report_json(report);
  std::ostringstream table;
  table << "case:        " << report.case_label << "\n";
  table << "tangent_dim: " << report.tangent_dim << "\n";
  table << "rigid:       " << (report.rigid ? "yes" : "no") << "\n";
  table << "smooth:      "
        << (report.smooth_not_established ? "not-established" : "yes") << "\n";
  return emit(opt, doc, table.str());
}

bisyz::SearchTask make_task(const Options& opt) {
  bisyz::SearchTask task;
  task.ambient = Ambient{opt.m, opt.n};
  task.polarization = Polarization{opt.a, opt.b};
  task.r = opt.r;
  task.strategy = bisyz::strategy_from_text(opt.strategy);
  task.symmetry = !opt.no_symmetry;
  task.max_supports = opt.max_supports;
  task.time_budget_seconds = opt.budget_seconds;
  task.jobs = opt.jobs;
  return task;
}

int run_sweep(const Options& opt) {
  const bisyz::SearchTask task = make_task(opt);
  const std::string dir = result_dir();
  fs::create_directories(dir);
  std::ostringstream stem;
  stem << "sweep-m" << opt.m << "n" << opt.n << "a" << opt.a << "b" << opt.b
       << "r" << opt.r;
  const std::string base = dir + "/" + stem.str();
  const std::string result_path =
      opt.out_path.empty() ? base + ".jsonl" : opt.out_path;
  const std::string checkpoint_path =
      opt.out_path.empty() ? base + ".checkpoint.json"
                           : opt.out_path + ".checkpoint.json";
  const bisyz::SweepSummary summary =
      bisyz::sweep(task, result_path, checkpoint_path);
  nlohmann::json doc = bisyz::sweep_summary_json(summary);
  doc["result_path"] = result_path;
  std::ostringstream table;
  table << "answer: " << summary.answer << " (records " << summary.records
        << ", raw " << summary.raw_supports.get_str() << ", "
        << (summary.complete ? "complete" : "incomplete") << ")\n";
  Options quiet = opt;
  quiet.out_path.clear();  // the sweep already wrote its result store
  return emit(quiet, doc, table.str());
}

int run_report(const Options& opt) {
  const bisyz::BrennerReportTable report = bisyz::brenner_report(
      Ambient{opt.m, opt.n}, Polarization{opt.a, opt.b},
      bisyz::strategy_from_text(opt.strategy), opt.jobs, result_dir());
  const nlohmann::json doc = bisyz::brenner_report_json(report);
  std::ostringstream table;
  table << std::left << std::setw(5) << "r" << std::setw(18) << "class"
        << std::setw(15) << "prediction" << std::setw(17) << "outcome"
        << "complete\n";
  for (const auto& row : report.rows)
    table << std::left << std::setw(5) << row.r << std::setw(18)
          << row.range_class << std::setw(15) << row.prediction
          << std::setw(17) << row.outcome << (row.complete ? "yes" : "no")
          << "\n";
  return emit(opt, doc, table.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact stability toolkit for syzygy bundles on P^m x P^n"};
  app.require_subcommand(1);
  Options opt;

  const auto add_geometry = [&](CLI::App* sub, bool with_r) {
    sub->add_option("--m", opt.m, "first factor dimension")
        ->check(CLI::PositiveNumber);
    sub->add_option("--n", opt.n, "second factor dimension")
        ->check(CLI::PositiveNumber);
    sub->add_option("--a", opt.a, "polarization degree on the first factor")
        ->check(CLI::PositiveNumber);
    sub->add_option("--b", opt.b, "polarization degree on the second factor")
        ->check(CLI::PositiveNumber);
    if (with_r) sub->add_option("--r", opt.r, "system dimension");
  };
  const auto add_system = [&](CLI::App* sub) {
    sub->add_option("--system", opt.system_spec,
                    "JSON file path or inline comma-separated monomials");
    sub->add_flag("--general", opt.general,
                  "sample random coefficients over the given support");
    sub->add_option("--seed", opt.seed, "random seed for --general");
    sub->add_option("--prime", opt.prime,
                    "work over F_p instead of the rationals");
  };
  const auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", opt.out_path, "write the JSON artifact here");
    sub->add_option("--format", opt.format, "stdout format")
        ->check(CLI::IsMember({"json", "table"}));
  };

  CLI::App* h0 = app.add_subcommand("h0", "sections of the twisted bundle");
  add_geometry(h0, true);
  add_system(h0);
  add_output(h0);
  h0->add_option("--x", opt.x, "twist on the first factor");
  h0->add_option("--y", opt.y, "twist on the second factor");

  CLI::App* wedge =
      app.add_subcommand("wedge", "sections of a twisted exterior power");
  add_geometry(wedge, true);
  add_system(wedge);
  add_output(wedge);
  wedge->add_option("--q", opt.q, "exterior power");
  wedge->add_option("--x", opt.x, "twist on the first factor");
  wedge->add_option("--y", opt.y, "twist on the second factor");

  CLI::App* tmin =
      app.add_subcommand("tmin", "first syzygy degree and syzygy profile");
  add_geometry(tmin, true);
  add_system(tmin);
  add_output(tmin);
  tmin->add_flag("--mingens", opt.with_mingens,
                 "include minimal generator counts");
  tmin->add_option("--bound", opt.profile_bound,
                   "total-degree bound for the profile");

  CLI::App* certify =
      app.add_subcommand("certify", "stability certificate for a system");
  add_geometry(certify, true);
  add_system(certify);
  add_output(certify);
  certify->add_option("--strategy", opt.strategy, "certification strategy")
      ->check(CLI::IsMember({"gap-only", "brute-only", "gap-then-brute"}));
  certify->add_option("--recheck", opt.recheck_path,
                      "re-verify an emitted certificate JSON");

  CLI::App* construct =
      app.add_subcommand("construct", "recipe family and system for range B");
  add_geometry(construct, true);
  add_output(construct);

  CLI::App* classify =
      app.add_subcommand("classify", "range classification for (m,n,a,b,r)");
  add_geometry(classify, true);
  add_output(classify);

  CLI::App* moduli =
      app.add_subcommand("moduli", "moduli tangent dimension report");
  add_geometry(moduli, true);
  add_output(moduli);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "exhaustive monomial-support stability sweep");
  add_geometry(sweep, true);
  add_output(sweep);
  sweep->add_option("--strategy", opt.strategy, "certification strategy")
      ->check(CLI::IsMember({"gap-only", "brute-only", "gap-then-brute"}));
  sweep->add_option("--jobs", opt.jobs, "worker count")
      ->check(CLI::PositiveNumber);
  sweep->add_flag("--no-symmetry", opt.no_symmetry,
                  "enumerate raw supports instead of orbits");
  sweep->add_option("--max-supports", opt.max_supports,
                    "stop after this many records");
  sweep->add_option("--budget-seconds", opt.budget_seconds,
                    "wall-clock budget");

  CLI::App* report =
      app.add_subcommand("report", "per-r answer table for (m,n,a,b)");
  add_geometry(report, false);
  add_output(report);
  report->add_option("--strategy", opt.strategy, "certification strategy")
      ->check(CLI::IsMember({"gap-only", "brute-only", "gap-then-brute"}));
  report->add_option("--jobs", opt.jobs, "worker count")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    nlohmann::json err;
    err["kind"] = "usage";
    err["error"] = e.what();
    std::cerr << err.dump() << "\n";
    return 2;
  }

  for (CLI::App* sub :
       {h0, wedge, tmin, certify, construct, classify, moduli, sweep, report}) {
    if (sub->parsed()) {
      opt.got_m = sub->count("--m") > 0;
      opt.got_n = sub->count("--n") > 0;
      opt.got_a = sub->count("--a") > 0;
      opt.got_b = sub->count("--b") > 0;
    }
  }

  try {
    if (h0->parsed()) return run_h0(opt);
    if (wedge->parsed()) return run_wedge(opt);
    if (tmin->parsed()) return run_tmin(opt);
    if (certify->parsed()) return run_certify(opt);
    if (construct->parsed()) return run_construct(opt);
    if (classify->parsed()) return run_classify(opt);
    if (moduli->parsed()) return run_moduli(opt);
    if (sweep->parsed()) return run_sweep(opt);
    if (report->parsed()) return run_report(opt);
    return 2;
  } catch (const bisyz::PreconditionError& e) {
    nlohmann::json err;
    err["kind"] = "precondition";
    err["error"] = e.message;
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const bisyz::ConstructionError& e) {
    nlohmann::json err;
    err["kind"] = "construction";
    err["error"] = e.message;
    err["failing_condition"] = e.failing_condition;
    err["search_exhausted"] = e.search_exhausted;
    err["pool_complete"] = e.pool_complete;
    std::cerr << err.dump() << "\n";
    return 1;
  } catch (const bisyz::BisyzError& e) {
    nlohmann::json err;
    err["kind"] = "internal";
    err["error"] = e.message;
    std::cerr << err.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    nlohmann::json err;
    err["kind"] = "internal";
    err["error"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  }
}
