#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace scenet {

// Flat key-value run configuration with one section per module. Parsing and
// serialization round-trip losslessly (canonical key order, max-precision
// floats).
struct RunConfig {
  // [run]
  std::string algorithm = "primal_dual";  // primal_dual | rand_proj
  long max_rounds = 1000;
  std::uint64_t seed = 0;
  double consensus_tol = 1e-3;    // <= 0 disables the threshold stop
  double feasibility_tol = 1e-3;  // <= 0 disables the threshold stop

  // [graph]
  std::string graph_kind = "ring_random";  // ring_random | ring | complete | file
  int m = 4;
  bool directed = false;
  double extra_prob = 0.05;
  std::string topology_path;    // graph_kind == file
  double activation_prob = 1.0;  // < 1 switches on per-round edge sampling

  // [problem]
  std::string problem_kind = "halfspaces";  // halfspaces | ident
  int dim = 2;                              // halfspaces decision dimension
  int samples_per_node = 10;
  double offset_lo = 0.2;
  double offset_hi = 1.2;
  double box_half_width = 5.0;
  std::vector<double> objective;  // optional explicit c; empty -> default
  std::vector<double> u;          // ident input
  std::vector<double> y;          // ident output
  double rho_uncertainty = 1.0;   // ident ball radius

  // [schedule]
  double zeta0 = 1.0;
  double exponent = 1.0;

  // [primal_dual]
  double rho = 1.0;

  // [rand_proj]
  double beta = 1.0;

  bool operator==(const RunConfig&) const = default;

  void validate() const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& config);
void save_config(const RunConfig& config, const std::string& path);

}  // namespace scenet
