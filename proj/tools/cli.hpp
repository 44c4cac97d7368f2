#pragma once

#include "magnus_torsion/magnus_torsion.hpp"
#include "verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace magnus_torsion::cli {

enum ExitCode { kOk = 0, kFailure = 1, kUsage = 2 };

struct JobSpec {
  std::vector<std::string> sources;
  bool tau1 = false;
  bool tau2 = false;
  std::vector<int> tauk;
  std::vector<long> schedule = default_lawton_schedule();
  long pmax = 2000;
  double tol = 1e-9;
  int jobs = 1;
  bool boundary_check = true;
};

struct ResultRow {
  std::string label;
  int genus = 0;
  std::string invariant;
  std::string method;
  double value = 0;
  double neg3pi_value = 0;
  double error_estimate = 0;
  double wall_time = 0;
  nlohmann::json detail;
};

inline FreeAutomorphism load_source(const std::string& ref, bool boundary_check) {
  if (ref.rfind("catalog:", 0) == 0) return Catalog::standard().resolve(ref);
  AutomorphismOptions o;
  o.check_boundary = boundary_check;
  return load_automorphism(ref, o);
}

inline nlohmann::json to_json(const MahlerResult& m) {
  nlohmann::json stages = nlohmann::json::array();
  for (const auto& s : m.stages)
    stages.push_back({{"parameter", s.parameter}, {"value", s.value}, {"degree", s.degree}, {"seconds", s.seconds}});
  return {{"method", to_string(m.method)}, {"value", m.value},      {"error_estimate", m.error_estimate},
          {"converged", m.converged},      {"stages", stages},      {"note", m.note}};
}

inline nlohmann::json to_json(const FKReport& r) {
  return {{"log_det", r.log_det},       {"raw_log_det", r.raw_log_det}, {"tail_estimate", r.tail_estimate},
          {"K", r.K},                   {"P", r.P},                     {"last_term", r.last_term},
          {"pruned_mass", r.pruned_mass}, {"betti_tail", r.betti_tail}, {"converged", r.converged},
          {"support_limited", r.support_limited}, {"note", r.note}};
}

inline ResultRow compute_one(const FreeAutomorphism& phi, const std::string& invariant, int k, const JobSpec& job) {
  const auto t0 = std::chrono::steady_clock::now();
  ResultRow row;
  row.label = phi.label();
  row.genus = phi.genus();
  row.invariant = invariant;
  if (invariant == "tau1") {
    const auto r = log_tau1(phi);
    row.method = r.method;
    row.value = r.value;
    row.error_estimate = r.error_estimate;
    row.detail = {{"polynomial", r.polynomial}, {"mahler", to_json(r.mahler)}};
  } else if (invariant == "tau2") {
    Tau2Options o;
    o.schedule = job.schedule;
    const auto r = log_tau2(phi, o);
    row.method = r.method;
    row.value = r.value;
    row.error_estimate = r.error_estimate;
    row.detail = {{"polynomial", r.polynomial}, {"note", r.note}};
    if (r.method == "lawton") row.detail["mahler"] = to_json(r.mahler);
    if (!std::isnan(r.cross_check)) row.detail["quadrature_cross_check"] = r.cross_check;
  } else {
    FKOptions o;
    o.P_max = job.pmax;
    o.term_tol = job.tol;
    const auto r = log_tauk_series(phi, k, o);
    row.method = "fk_series";
    row.value = r.log_tau;
    row.error_estimate = 2.0 * std::max(std::abs(r.tail_estimate), r.last_term);
    row.detail = to_json(r);
  }
  row.neg3pi_value = neg3pi(row.value);
  row.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

/// Runs every requested invariant for every source. Rows come back in
/// (source, invariant) order regardless of scheduling.
inline std::vector<ResultRow> cmd_compute(const JobSpec& job) {
  if (!job.tau1 && !job.tau2 && job.tauk.empty())
    throw std::invalid_argument("no invariant requested (use --tau1, --tau2 or --tauk)");
  for (int k : job.tauk)
    if (k != 1 && k != 2) throw UnsupportedError("tau_k is implemented for k = 1, 2 only");
  std::vector<FreeAutomorphism> maps;
  for (const auto& s : job.sources) maps.push_back(load_source(s, job.boundary_check));
  struct Task {
    std::size_t map;
    std::string invariant;
    int k;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (job.tau1) tasks.push_back({i, "tau1", 0});
    if (job.tau2) tasks.push_back({i, "tau2", 0});
    for (int k : job.tauk) tasks.push_back({i, "tau" + std::to_string(k) + "_series", k});
  }
  std::vector<ResultRow> rows(tasks.size());
  std::vector<std::string> errors(tasks.size());
  parallel_for(tasks.size(), job.jobs, [&](std::size_t i) {
    try {
      rows[i] = compute_one(maps[tasks[i].map], tasks[i].invariant, tasks[i].k, job);
    } catch (const std::exception& e) {
      errors[i] = maps[tasks[i].map].label() + " " + tasks[i].invariant + ": " + e.what();
    }
  });
  for (const auto& e : errors)
    if (!e.empty()) throw std::runtime_error(e);
  return rows;
}

inline const char* kCsvHeader = "label,genus,invariant,method,value,neg3pi_value,error_estimate";

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

inline void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows)
    out << csv_field(r.label) << ',' << r.genus << ',' << r.invariant << ',' << r.method << ',' << fmt(r.value)
        << ',' << fmt(r.neg3pi_value) << ',' << fmt(r.error_estimate) << '\n';
}

inline void write_json_lines(std::ostream& out, const std::vector<ResultRow>& rows) {
  for (const auto& r : rows) {
    nlohmann::json j = {{"label", r.label},
                        {"genus", r.genus},
                        {"invariant", r.invariant},
                        {"method", r.method},
                        {"value", r.value},
                        {"neg3pi_value", r.neg3pi_value},
                        {"error_estimate", r.error_estimate},
                        {"wall_time", r.wall_time}};
    if (!r.detail.is_null()) j["detail"] = r.detail;
    out << j.dump() << '\n';
  }
}

/// Parses a `q,vol` table. Blank lines and `#` comments are ignored; a
/// header row is recognized by a non-numeric first field.
inline std::map<long, double> read_volumes(std::istream& in) {
  std::map<long, double> vol;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("volumes line " + std::to_string(lineno) + ": expected 'q,vol'");
    std::string a = line.substr(0, comma), b = line.substr(comma + 1);
    try {
      std::size_t ua = 0, ub = 0;
      const long q = std::stol(a, &ua);
      const double v = std::stod(b, &ub);
      if (a.find_first_not_of(" \t", ua) != std::string::npos || b.find_first_not_of(" \t\r", ub) != std::string::npos)
        throw std::invalid_argument("trailing characters");
      vol[q] = v;
    } catch (const std::exception&) {
      if (lineno == 1 && vol.empty()) continue;
      throw std::invalid_argument("volumes line " + std::to_string(lineno) + ": malformed '" + line + "'");
    }
  }
  return vol;
}

struct SweepRow {
  long q = 0;
  double value = 0;
  double neg3pi_value = 0;
  std::optional<double> volume;
};

/// Genus-1 monodromy (q 1 / -1 0) for q = 0..q_max.
inline std::vector<SweepRow> cmd_sweep_fig1(long q_max, const std::map<long, double>& volumes = {}, int jobs = 1) {
  if (q_max < 3) throw std::invalid_argument("sweep-fig1: --q-max must be at least 3");
  std::vector<SweepRow> rows(static_cast<std::size_t>(q_max + 1));
  parallel_for(rows.size(), jobs, [&](std::size_t i) {
    const long q = static_cast<long>(i);
    const auto r = log_tau1(Catalog::standard().make("genus1_slz", {q, 1, -1, 0}));
    rows[i] = {q, r.value, r.neg3pi_value(), std::nullopt};
    if (auto it = volumes.find(q); it != volumes.end()) rows[i].volume = it->second;
  });
  return rows;
}

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool with_volumes) {
  out << "q,value,neg3pi_value" << (with_volumes ? ",vol" : "") << '\n';
  for (const auto& r : rows) {
    out << r.q << ',' << fmt(r.value) << ',' << fmt(r.neg3pi_value);
    if (with_volumes) out << ',' << (r.volume ? fmt(*r.volume) : "");
    out << '\n';
  }
}

inline void write_sweep_gnuplot(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "# |q|  -3pi*log(tau1)\n";
  for (const auto& r : rows) out << r.q << ' ' << fmt(r.neg3pi_value) << '\n';
}

inline void write_catalog(std::ostream& out, const Catalog& cat, bool json) {
  if (json) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& e : cat.entries())
      a.push_back({{"name", e.name}, {"signature", e.signature}, {"anchor", e.anchor}, {"samples", e.samples}});
    out << a.dump(2) << '\n';
    return;
  }
  std::size_t w1 = 4, w2 = 9;
  for (const auto& e : cat.entries()) {
    w1 = std::max(w1, e.name.size());
    w2 = std::max(w2, e.signature.size());
  }
  auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w - s.size() + 2, ' '); };
  out << pad("name", w1) << pad("signature", w2) << "description\n";
  for (const auto& e : cat.entries()) out << pad(e.name, w1) << pad(e.signature, w2) << e.anchor << '\n';
}

/// One line per check; returns the number of failures.
inline int write_verification(std::ostream& out, const std::vector<CheckResult>& results) {
  int failed = 0;
  for (const auto& r : results) {
    failed += !r.pass;
    out << (r.pass ? "PASS" : "FAIL") << "  [" << r.tag << "] " << r.name << "\n      expected " << r.expected
        << "\n      computed " << r.computed << '\n';
  }
  out << results.size() - static_cast<std::size_t>(failed) << '/' << results.size() << " checks passed\n";
  return failed;
}

inline std::vector<long> parse_schedule(const std::string& s) {
  std::vector<long> v;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) {
    std::size_t used = 0;
    long r = 0;
    try {
      r = std::stol(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size() || r < 1) throw CLI::ValidationError("--schedule", "bad entry '" + tok + "'");
    v.push_back(r);
  }
  if (v.empty() || !std::is_sorted(v.begin(), v.end()))
    throw CLI::ValidationError("--schedule", "expected a nondecreasing list r1,r2,...");
  return v;
}

/// Writes to --out when given, else to `fallback`.
template <class F>
void with_output(const std::string& path, std::ostream& fallback, F&& f) {
  if (path.empty()) {
    f(fallback);
    return;
  }
  std::ofstream o(path);
  if (!o) throw std::runtime_error("cannot open '" + path + "' for writing");
  f(o);
}

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"L2-torsion invariants of mapping tori", "magnus-torsion"};
  app.require_subcommand(1);

  JobSpec job;
  std::string schedule_text, out_path, volumes_path, only;
  bool json = false, gnuplot = false, no_boundary = false;
  long q_max = 100;

  auto* compute = app.add_subcommand("compute", "compute invariants of catalog references or automorphism files");
  compute->add_option("sources", job.sources, "catalog:<name>(<params>) or a file path")->required();
  compute->add_flag("--tau1", job.tau1, "log tau1 via the Mahler measure of det(tI - r1)");
  compute->add_flag("--tau2", job.tau2, "log tau2 via the Lawton limit of det A2");
  compute->add_option("--tauk", job.tauk, "log tau_k through the Fuglede-Kadison series (k = 1, 2)");
  compute->add_option("--schedule", schedule_text, "Lawton exponents r1,r2,...");
  compute->add_option("--pmax", job.pmax, "series truncation order")->check(CLI::PositiveNumber);
  compute->add_option("--tol", job.tol, "series stopping threshold")->check(CLI::PositiveNumber);
  compute->add_flag("--no-boundary-check", no_boundary, "accept file input that moves the boundary word");

  auto* sweep = app.add_subcommand("sweep-fig1", "-3pi log tau1 for the genus-1 family (q 1 / -1 0)");
  sweep->add_option("--q-max", q_max, "largest |q|")->check(CLI::Range(3L, 100000L));
  sweep->add_option("--volumes", volumes_path, "CSV with columns q,vol to join");
  sweep->add_flag("--gnuplot", gnuplot, "two-column |q| / value output");

  auto* verify = app.add_subcommand("verify", "run the regression suite of reference values");
  verify->add_option("--only", only, "restrict to one tag")->check(CLI::IsMember(verification_tags()));

  auto* list = app.add_subcommand("catalog", "list the named mapping classes");

  for (auto* sub : {compute, sweep, verify, list}) {
    sub->add_option("--jobs", job.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", out_path, "output file (default stdout)");
    sub->add_flag("--json", json, "JSON output");
  }

  try {
    app.parse(argc, argv);
    if (!schedule_text.empty()) job.schedule = parse_schedule(schedule_text);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  job.boundary_check = !no_boundary;
  if (*compute && !job.tau1 && !job.tau2 && job.tauk.empty()) {
    err << "usage error: compute needs at least one of --tau1, --tau2, --tauk\n";
    return kUsage;
  }

  try {
    if (*compute) {
      const auto rows = cmd_compute(job);
      with_output(out_path, out, [&](std::ostream& o) { json ? write_json_lines(o, rows) : write_csv(o, rows); });
    } else if (*sweep) {
      std::map<long, double> vol;
      if (!volumes_path.empty()) {
        std::ifstream in(volumes_path);
        if (!in) throw std::runtime_error("cannot open '" + volumes_path + "'");
        vol = read_volumes(in);
      }
      const auto rows = cmd_sweep_fig1(q_max, vol, job.jobs);
      with_output(out_path, out, [&](std::ostream& o) {
        if (gnuplot) {
          write_sweep_gnuplot(o, rows);
        } else if (json) {
          for (const auto& r : rows) {
            nlohmann::json j = {{"q", r.q}, {"value", r.value}, {"neg3pi_value", r.neg3pi_value}};
            if (r.volume) j["vol"] = *r.volume;
            o << j.dump() << '\n';
          }
        } else {
          write_sweep_csv(o, rows, !vol.empty());
        }
      });
    } else if (*verify) {
      const auto results = run_verification(Catalog::standard(), only, job.jobs);
      int failed = 0;
      with_output(out_path, out, [&](std::ostream& o) {
        if (!json) {
          failed = write_verification(o, results);
          return;
        }
        for (const auto& r : results) {
          failed += !r.pass;
          o << nlohmann::json{{"tag", r.tag}, {"name", r.name}, {"expected", r.expected},
                              {"computed", r.computed}, {"pass", r.pass}}.dump()
            << '\n';
        }
      });
      return failed == 0 ? kOk : kFailure;
    } else if (*list) {
      with_output(out_path, out, [&](std::ostream& o) { write_catalog(o, Catalog::standard(), json); });
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}

}  // namespace magnus_torsion::cli
