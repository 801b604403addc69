// Command-line driver: convergence experiments for the resolvent Krylov
// subspace method and randomized property suites. Emits CSV or JSON record
// files plus a run manifest.
//
// Exit codes: 0 success, 1 property failure, 2 usage error, 3 solver failure.

#include "rkm/rkm.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

std::string iso8601_now() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_csv(const std::string& path,
               const std::vector<rkm::ConvergenceRecord>& records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << "method,problem,dim,tau,gamma,q,n,error\n";
  for (const auto& r : records)
    out << rkm::to_string(r.method) << ',' << rkm::to_string(r.problem) << ','
        << r.dim << ',' << format_double(r.tau) << ','
        << format_double(r.gamma) << ',' << r.q << ',' << r.n << ','
        << format_double(r.error) << '\n';
}

json records_to_json(const std::vector<rkm::ConvergenceRecord>& records) {
  json arr = json::array();
  for (const auto& r : records)
    arr.push_back({{"method", rkm::to_string(r.method)},
                   {"problem", rkm::to_string(r.problem)},
                   {"dim", r.dim},
                   {"tau", r.tau},
                   {"gamma", r.gamma},
                   {"q", r.q},
                   {"n", r.n},
                   {"error", r.error}});
  return arr;
}

void emit(const std::string& path, const std::string& format,
          const json& manifest,
          const std::vector<rkm::ConvergenceRecord>& records) {
  if (format == "json") {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << json{{"manifest", manifest}, {"records", records_to_json(records)}}
               .dump(2)
        << '\n';
  } else {
    write_csv(path, records);
    std::ofstream out(path + ".manifest.json");
    out << manifest.dump(2) << '\n';
  }
}

std::vector<int> iota_n(int n_max) {
  std::vector<int> ns(n_max);
  std::iota(ns.begin(), ns.end(), 1);
  return ns;
}

int run_schrodinger(int grid_size, double tau, double gamma,
                    std::vector<int> qs, int n_max, const std::string& method,
                    const std::string& output, const std::string& format) {
  if (qs.empty()) qs = {2, 4, 6, 8};
  std::vector<rkm::ConvergenceRecord> records;
  for (int q : qs) {
    rkm::ProblemSetup setup{rkm::ProblemKind::Schrodinger, grid_size, tau,
                            gamma, q, {}};
    const auto ns = iota_n(n_max);
    if (method == "krylov" || method == "both") {
      auto rows =
          rkm::run_convergence(setup, ns, rkm::MethodKind::ResolventKrylov);
      records.insert(records.end(), rows.begin(), rows.end());
    }
    if (method == "euler" || method == "both") {
      auto rows =
          rkm::run_convergence(setup, ns, rkm::MethodKind::ImplicitEuler);
      records.insert(records.end(), rows.begin(), rows.end());
    }
  }
  json manifest{{"subcommand", "schrodinger"}, {"grid_size", grid_size},
                {"tau", tau},                  {"gamma", gamma},
                {"q", qs},                     {"n_max", n_max},
                {"method", method},            {"format", format},
                {"version", rkm::kVersion},    {"timestamp", iso8601_now()}};
  emit(output, format, manifest, records);
  return 0;
}

int run_wave_fd(std::vector<int> grids, double tau, double gamma,
                std::vector<int> qs, int n_max, const std::string& solver,
                double cg_tol, const std::string& output,
                const std::string& format) {
  if (grids.empty()) grids = {31, 63};
  if (qs.empty()) qs = {2, 4};
  rkm::SolverConfig cfg;
  cfg.method = solver == "cg" ? rkm::SolverConfig::Method::ConjugateGradient
                              : rkm::SolverConfig::Method::FastSineTransform;
  cfg.tolerance = cg_tol;

  std::vector<rkm::ConvergenceRecord> records;
  double worst_ratio = 1.0;
  const auto ns = iota_n(n_max);
  for (int q : qs) {
    std::vector<std::vector<rkm::ConvergenceRecord>> curves;
    for (int d : grids) {
      rkm::ProblemSetup setup{rkm::ProblemKind::WaveFd, d, tau, gamma, q, cfg};
      curves.push_back(
          rkm::run_convergence(setup, ns, rkm::MethodKind::ResolventKrylov));
      records.insert(records.end(), curves.back().begin(),
                     curves.back().end());
    }
    if (curves.size() >= 2)
      worst_ratio =
          std::max(worst_ratio, rkm::grid_independence_check(curves, 10));
  }
  std::cout << "grid_independence_ratio " << format_double(worst_ratio)
            << " (n >= 10)\n";
  json manifest{{"subcommand", "wave-fd"},    {"grid", grids},
                {"tau", tau},                 {"gamma", gamma},
                {"q", qs},                    {"n_max", n_max},
                {"solver", solver},           {"cg_tol", cg_tol},
                {"format", format},           {"version", rkm::kVersion},
                {"timestamp", iso8601_now()}};
  emit(output, format, manifest, records);
  return 0;
}

int run_verify(const std::string& suite, unsigned seed) {
  std::vector<rkm::PropertyResult> results;
  auto append = [&](std::vector<rkm::PropertyResult> r) {
    results.insert(results.end(), r.begin(), r.end());
  };
  if (suite == "exactness" || suite == "all")
    append(rkm::verify_exactness(seed));
  if (suite == "phi" || suite == "all") append(rkm::verify_phi(seed));
  if (suite == "smoothing" || suite == "all") append(rkm::verify_smoothing());

  bool all_pass = true;
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
    if (r.observed != 0.0) std::cout << "  [observed " << r.observed << "]";
    std::cout << '\n';
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"resolvent Krylov subspace experiments"};
  app.require_subcommand(1);

  // schrodinger
  int s_grid = 4096, s_nmax = 60;
  double s_tau = 0.02, s_gamma = 1.0;
  std::vector<int> s_q;
  std::string s_method = "krylov", s_output = "schrodinger.csv",
              s_format = "csv";
  auto* sch = app.add_subcommand("schrodinger",
                                 "pseudospectral Schroedinger convergence");
  sch->add_option("--grid-size", s_grid)->check(CLI::PositiveNumber);
  sch->add_option("--tau", s_tau)->check(CLI::PositiveNumber);
  sch->add_option("--gamma", s_gamma)->check(CLI::PositiveNumber);
  sch->add_option("--q", s_q);
  sch->add_option("--n-max", s_nmax)->check(CLI::PositiveNumber);
  sch->add_option("--method", s_method)
      ->check(CLI::IsMember({"krylov", "euler", "both"}));
  sch->add_option("--output", s_output);
  sch->add_option("--format", s_format)->check(CLI::IsMember({"csv", "json"}));

  // wave-fd
  std::vector<int> w_grids, w_q;
  double w_tau = 0.5, w_gamma = 1.0, w_cgtol = 1e-12;
  int w_nmax = 40;
  std::string w_solver = "dst", w_output = "wave_fd.csv", w_format = "csv";
  auto* wav = app.add_subcommand("wave-fd", "FD wave equation convergence");
  wav->add_option("--grid", w_grids);
  wav->add_option("--tau", w_tau)->check(CLI::PositiveNumber);
  wav->add_option("--gamma", w_gamma)->check(CLI::PositiveNumber);
  wav->add_option("--q", w_q);
  wav->add_option("--n-max", w_nmax)->check(CLI::PositiveNumber);
  wav->add_option("--solver", w_solver)->check(CLI::IsMember({"dst", "cg"}));
  wav->add_option("--cg-tol", w_cgtol)->check(CLI::PositiveNumber);
  wav->add_option("--output", w_output);
  wav->add_option("--format", w_format)->check(CLI::IsMember({"csv", "json"}));

  // verify
  std::string v_suite = "all";
  unsigned v_seed = 0;
  auto* ver = app.add_subcommand("verify", "randomized property suites");
  ver->add_option("--suite", v_suite)
      ->check(CLI::IsMember({"exactness", "phi", "smoothing", "all"}));
  ver->add_option("--seed", v_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (sch->parsed())
      return run_schrodinger(s_grid, s_tau, s_gamma, s_q, s_nmax, s_method,
                             s_output, s_format);
    if (wav->parsed())
      return run_wave_fd(w_grids, w_tau, w_gamma, w_q, w_nmax, w_solver,
                         w_cgtol, w_output, w_format);
    if (ver->parsed()) return run_verify(v_suite, v_seed);
  } catch (const rkm::solver_error& e) {
    std::cerr << "solver failure: " << e.what()
              << " (residual " << e.residual() << ")\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
