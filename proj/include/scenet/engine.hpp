#pragma once

#include <Eigen/Dense>
#include <chrono>
#include <memory>
#include <string>
#include <vector>

#include "scenet/config.hpp"
#include "scenet/graph.hpp"
#include "scenet/primal_dual.hpp"
#include "scenet/problems.hpp"
#include "scenet/rand_proj.hpp"
#include "scenet/scenario.hpp"

namespace scenet {

struct MetricsRecord {
  long k = 0;
  double consensus_spread = 0.0;
  double feasibility = 0.0;
  double objective = 0.0;
  double zeta_sum = 0.0;
  double wall_ms = 0.0;
};

// Per-node inbox after one broadcast wave: round-k states of in-neighbors.
struct Inbox {
  std::vector<int> from;
  std::vector<Eigen::VectorXd> payload;
};

std::vector<Inbox> exchange(const std::vector<Eigen::VectorXd>& states,
                            const Topology& topology);

// Metrics trace as delimited text: header, then one row per round.
void write_trace(const std::vector<MetricsRecord>& trace, const std::string& path);

// Round-synchronous simulator for both algorithms over a fixed or
// stochastically time-varying graph. Deterministic given the master seed.
class Simulator {
 public:
  explicit Simulator(RunConfig config);

  const RunConfig& config() const { return config_; }
  long round() const { return round_; }
  long exchange_waves() const { return exchange_waves_; }
  bool done() const;
  bool tolerance_met() const;

  MetricsRecord step();

  struct Result {
    bool tolerance_met = false;
    long rounds = 0;
  };
  Result run();

  const std::vector<MetricsRecord>& trace() const { return trace_; }
  void write_trace(const std::string& path) const;
  void write_states(const std::string& path) const;

  const Eigen::VectorXd& objective_vector() const { return c_; }
  std::vector<Eigen::VectorXd> thetas() const;
  Eigen::VectorXd consensus_mean() const;
  const std::vector<ScenarioSet>& scenario_sets() const { return sets_; }
  const DomainSet& domain() const { return *domain_; }
  const ConstraintFamily& family() const { return *family_; }
  const Topology& topology() const { return base_topology_; }
  const Eigen::MatrixXd& weights() const { return A_; }

  // Versioned binary checkpoints; a resumed run replays the uninterrupted
  // trace exactly (wall time aside).
  void save_checkpoint(const std::string& path) const;
  void load_checkpoint(const std::string& path);

 private:
  void build_topology();
  void build_problem();
  MetricsRecord measure(double round_ms);

  RunConfig config_;
  bool primal_dual_ = true;

  Topology base_topology_;
  Eigen::MatrixXd A_;
  Eigen::VectorXd pi_;  // consensus weights for directed runs

  std::shared_ptr<const ConstraintFamily> family_;
  std::unique_ptr<DomainSet> domain_;
  Eigen::VectorXd c_;
  std::vector<ScenarioSet> sets_;

  std::vector<PDNodeState> pd_states_;
  std::vector<Eigen::VectorXd> rp_thetas_;
  std::vector<Rng> rp_streams_;
  Rng tv_rng_;

  long round_ = 0;
  long exchange_waves_ = 0;
  double zeta_sum_ = 0.0;
  double wall_ms_ = 0.0;
  std::vector<MetricsRecord> trace_;
};

// Desk-scale robust identification experiment: for each uncertainty level,
// draws scenario sets, solves with both algorithms, and reports the maximum
// scenario residual of the least-squares and scenario solutions.
struct IdentParams {
  std::vector<double> u{1.0, 2.0, 3.0};
  std::vector<double> y{4.0, 5.0, 6.0};
  int nodes = 10;
  int samples_per_node = 30;
  std::uint64_t seed = 1;
  std::vector<double> rho_grid{0.0, 1.0, 2.0, 3.0};
  long pd_rounds = 40000;
  long rp_rounds = 40000;
  double zeta0 = 2.0;
  double exponent = 0.6;
  double rho_penalty = 1.0;
  double beta = 1.0;
};

struct IdentRow {
  double rho = 0.0;
  double r_ls = 0.0;
  double r_sc_pd = 0.0;
  double r_sc_rp = 0.0;
};

std::vector<IdentRow> ident_experiment(const IdentParams& params);
void write_ident_table(const std::vector<IdentRow>& rows, const std::string& path);

}  // namespace scenet
