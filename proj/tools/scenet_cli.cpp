// Command-line front end. Links only the C API.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scenet/scenet_c.h"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitConfig = 3;
constexpr int kExitConnectivity = 4;
constexpr int kExitIo = 5;
constexpr int kExitBudget = 10;
constexpr int kExitFailure = 9;

int exit_code_for(scenet_status status) {
  switch (status) {
    case SCENET_OK: return 0;
    case SCENET_ERR_INVALID_ARG: return kExitUsage;
    case SCENET_ERR_CONFIG: return kExitConfig;
    case SCENET_ERR_CONNECTIVITY: return kExitConnectivity;
    case SCENET_ERR_IO: return kExitIo;
    default: return kExitFailure;
  }
}

int report_error(scenet_status status) {
  std::fprintf(stderr, "error (%s): %s\n", scenet_status_name(status), scenet_last_error());
  return exit_code_for(status);
}

int cmd_complexity(double eps, double delta, int n) {
  long long closed = 0, minimal = 0;
  int holds = 0;
  const scenet_status st = scenet_complexity(eps, delta, n, &closed, &minimal, &holds);
  if (st != SCENET_OK) return report_error(st);
  std::printf("N_bin %lld\n", closed);
  std::printf("N_search %lld\n", minimal);
  std::printf("tail_holds_at_N_bin %s\n", holds ? "true" : "false");
  return 0;
}

int cmd_solve(const std::string& config, const std::string& trace_path,
              const std::string& states_path) {
  scenet_run_t* run = nullptr;
  scenet_status st = scenet_run_create(config.c_str(), &run);
  if (st != SCENET_OK) return report_error(st);
  st = scenet_run_execute(run);
  if (st != SCENET_OK) {
    scenet_run_destroy(run);
    return report_error(st);
  }
  if (!trace_path.empty()) {
    st = scenet_run_write_trace(run, trace_path.c_str());
    if (st != SCENET_OK) {
      scenet_run_destroy(run);
      return report_error(st);
    }
  }
  if (!states_path.empty()) {
    st = scenet_run_write_states(run, states_path.c_str());
    if (st != SCENET_OK) {
      scenet_run_destroy(run);
      return report_error(st);
    }
  }
  long long rounds = 0;
  int met = 0;
  double metrics[4] = {0, 0, 0, 0};
  scenet_run_rounds(run, &rounds);
  scenet_run_tolerance_met(run, &met);
  scenet_run_final_metrics(run, metrics);
  scenet_run_destroy(run);
  std::printf("rounds %lld\n", rounds);
  std::printf("consensus_spread %.17g\n", metrics[0]);
  std::printf("feasibility %.17g\n", metrics[1]);
  std::printf("objective %.17g\n", metrics[2]);
  std::printf("tolerance_met %s\n", met ? "true" : "false");
  return met ? 0 : kExitBudget;
}

int cmd_ident(const std::vector<double>& u, const std::vector<double>& y, int nodes,
              int samples, unsigned long long seed, const std::vector<double>& rho_grid,
              long long pd_rounds, long long rp_rounds, const std::string& out_path) {
  scenet_ident_params p{};
  p.u = u.data();
  p.y = y.data();
  p.n = static_cast<int>(u.size());
  p.nodes = nodes;
  p.samples_per_node = samples;
  p.seed = seed;
  p.rho_grid = rho_grid.data();
  p.rho_count = static_cast<int>(rho_grid.size());
  p.pd_rounds = pd_rounds;
  p.rp_rounds = rp_rounds;
  std::vector<double> rows(rho_grid.size() * 4, 0.0);
  const scenet_status st = scenet_ident_table(&p, rows.data());
  if (st != SCENET_OK) return report_error(st);

  std::ostringstream table;
  table.precision(17);
  table << "rho r_ls r_sc_pd r_sc_rp\n";
  for (size_t i = 0; i < rho_grid.size(); ++i)
    table << rows[4 * i] << ' ' << rows[4 * i + 1] << ' ' << rows[4 * i + 2] << ' '
          << rows[4 * i + 3] << '\n';
  if (out_path.empty()) {
    std::fputs(table.str().c_str(), stdout);
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::fprintf(stderr, "error: cannot write %s\n", out_path.c_str());
      return kExitIo;
    }
    out << table.str();
    std::printf("wrote %s\n", out_path.c_str());
  }
  return 0;
}

int cmd_report(const std::string& trace_path, double consensus_tol, double feasibility_tol) {
  std::ifstream in(trace_path);
  if (!in) {
    std::fprintf(stderr, "error: cannot open trace %s\n", trace_path.c_str());
    return kExitIo;
  }
  std::string header, line, last;
  if (!std::getline(in, header)) {
    std::fprintf(stderr, "error: empty trace %s\n", trace_path.c_str());
    return kExitIo;
  }
  long rows = 0;
  while (std::getline(in, line)) {
    if (!line.empty()) {
      last = line;
      ++rows;
    }
  }
  if (rows == 0) {
    std::fprintf(stderr, "error: trace has no data rows\n");
    return kExitIo;
  }
  std::istringstream ls(last);
  long k = 0;
  double spread = 0, feas = 0, obj = 0, zsum = 0, wall = 0;
  if (!(ls >> k >> spread >> feas >> obj >> zsum >> wall)) {
    std::fprintf(stderr, "error: malformed trace row\n");
    return kExitIo;
  }
  std::printf("rounds %ld\n", rows);
  std::printf("final_round %ld\n", k);
  std::printf("consensus_spread %.17g\n", spread);
  std::printf("feasibility %.17g\n", feas);
  std::printf("objective %.17g\n", obj);
  std::printf("zeta_sum %.17g\n", zsum);
  if (consensus_tol > 0 && feasibility_tol > 0) {
    const bool met = spread <= consensus_tol && feas <= feasibility_tol;
    std::printf("tolerance_met %s\n", met ? "true" : "false");
    return met ? 0 : kExitBudget;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Networked scenario optimization for robust convex programs"};
  app.require_subcommand(1);

  double eps = 0.0, delta = 0.0;
  int n = 0;
  auto* complexity = app.add_subcommand("complexity", "Sample-complexity bounds");
  complexity->add_option("--eps", eps, "violation level in (0,1)")
      ->required()
      ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0)));
  complexity->add_option("--delta", delta, "confidence level in (0,1)")
      ->required()
      ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0)));
  complexity->add_option("--n", n, "decision dimension")->required()->check(CLI::PositiveNumber);

  std::string config_path, trace_path, states_path;
  auto* solve = app.add_subcommand("solve", "Run a distributed solve from a config file");
  solve->add_option("config", config_path, "run configuration file")->required();
  solve->add_option("--trace", trace_path, "metrics trace output path");
  solve->add_option("--states", states_path, "final per-node states output path");

  std::vector<double> u{1.0, 2.0, 3.0}, y{4.0, 5.0, 6.0}, rho_grid{0.0, 1.0, 2.0, 3.0};
  int nodes = 10, samples = 30;
  unsigned long long seed = 1;
  long long pd_rounds = 40000, rp_rounds = 40000;
  std::string ident_out;
  auto* ident = app.add_subcommand("ident", "Robust identification residual table");
  ident->add_option("--u", u, "input sequence")->delimiter(',');
  ident->add_option("--y", y, "output sequence")->delimiter(',');
  ident->add_option("--nodes", nodes, "node count")->check(CLI::PositiveNumber);
  ident->add_option("--samples", samples, "samples per node")->check(CLI::PositiveNumber);
  ident->add_option("--seed", seed, "master seed");
  ident->add_option("--rho", rho_grid, "uncertainty levels")->delimiter(',');
  ident->add_option("--rounds-pd", pd_rounds, "primal-dual round budget");
  ident->add_option("--rounds-rp", rp_rounds, "random-projection round budget");
  ident->add_option("--out", ident_out, "residual table output path");

  std::string report_trace;
  double report_ctol = 0.0, report_ftol = 0.0;
  auto* report = app.add_subcommand("report", "Summarize a metrics trace");
  report->add_option("trace", report_trace, "metrics trace file")->required();
  report->add_option("--consensus-tol", report_ctol, "consensus threshold");
  report->add_option("--feasibility-tol", report_ftol, "feasibility threshold");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : kExitUsage;
  }

  if (complexity->parsed()) return cmd_complexity(eps, delta, n);
  if (solve->parsed()) return cmd_solve(config_path, trace_path, states_path);
  if (ident->parsed()) {
    if (u.size() != y.size() || u.empty()) {
      std::fprintf(stderr, "error: --u and --y must be nonempty and of equal length\n");
      return kExitUsage;
    }
    return cmd_ident(u, y, nodes, samples, seed, rho_grid, pd_rounds, rp_rounds, ident_out);
  }
  if (report->parsed()) return cmd_report(report_trace, report_ctol, report_ftol);
  return kExitUsage;
}
