#pragma once

#include <Eigen/Dense>
#include <vector>

#include "scenet/graph.hpp"
#include "scenet/problems.hpp"
#include "scenet/scenario.hpp"

namespace scenet {

// Diminishing stepsize zeta^k = zeta0 / (k+1)^p with p in (1/2, 1]; the
// parametric form guarantees divergent sum and summable squares.
struct StepSchedule {
  double zeta0 = 1.0;
  double exponent = 1.0;

  void validate() const;
  double at(long k) const;
  double partial_sum(long k) const;  // sum_{t<=k} zeta^t
};

struct PDConfig {
  double rho = 1.0;  // quadratic penalty weight
  StepSchedule schedule;

  void validate() const;
};

// Per-node iterate triple for the primal-dual iteration. gamma stays
// componentwise nonnegative: it starts at zero and accumulates beta_j * g_j
// with g_j >= 0 and beta_j > 0.
struct PDNodeState {
  Eigen::VectorXd theta;
  Eigen::VectorXd lambda;
  Eigen::VectorXd gamma;  // n_j + 1 entries: domain distance, then samples
};

std::vector<PDNodeState> pd_init(int m, int n, const std::vector<int>& sample_counts);

// b_j = sum_i a_ji (theta_j - theta_i).
Eigen::VectorXd local_disagreement(int j, const std::vector<Eigen::VectorXd>& thetas,
                                   const Eigen::MatrixXd& A);

// lambda~_j = lambda_j + rho * b_j.
Eigen::VectorXd modified_multiplier(const Eigen::VectorXd& lambda, const Eigen::VectorXd& b,
                                    double rho);

// g_j(theta) = [d(theta, Theta); max(0, f(theta, q^(ji)))_i].
Eigen::VectorXd g_eval(const Eigen::VectorXd& theta, const DomainSet& domain,
                       const ConstraintFamily& family, const ScenarioSet& set);

// Rows: normalized displacement from the domain projection (zero when
// inside), then a positive-part sub-gradient per sample (zero where the
// constraint is satisfied). Shape (n_j + 1) x n.
Eigen::MatrixXd g_subgrad(const Eigen::VectorXd& theta, const DomainSet& domain,
                          const ConstraintFamily& family, const ScenarioSet& set);

// T_j = c + s_j'(gamma_j + rho g_j) + sum_{i in N_j u {j}} l_ij lambda~_i.
// lambda_tilde holds all m vectors; only entries with l_ij != 0 contribute.
Eigen::VectorXd primal_direction(int j, const Eigen::VectorXd& c, const Eigen::MatrixXd& s,
                                 const Eigen::VectorXd& gamma, const Eigen::VectorXd& g,
                                 double rho, const std::vector<Eigen::VectorXd>& lambda_tilde,
                                 const Eigen::MatrixXd& L);

// Wave-1 products of a round: per-node disagreement and modified multiplier.
struct PDWave1 {
  std::vector<Eigen::VectorXd> b;
  std::vector<Eigen::VectorXd> lambda_tilde;
};

PDWave1 pd_wave1(const std::vector<PDNodeState>& states, const Eigen::MatrixXd& A, double rho);

// Applies the synchronous update for round k given wave-1 data. Every
// right-hand side uses round-k values; all nodes move together.
void pd_apply(std::vector<PDNodeState>& states, const PDWave1& wave, const Eigen::MatrixXd& L,
              const Eigen::VectorXd& c, const DomainSet& domain, const ConstraintFamily& family,
              const std::vector<ScenarioSet>& sets, const PDConfig& config, long k);

// Full synchronous round over an undirected topology. Directed topologies are
// rejected: the multiplier exchange needs bidirectional links.
void pd_round(std::vector<PDNodeState>& states, const Topology& topology,
              const Eigen::MatrixXd& A, const Eigen::VectorXd& c, const DomainSet& domain,
              const ConstraintFamily& family, const std::vector<ScenarioSet>& sets,
              const PDConfig& config, long k);

// Diagnostic value of the augmented Lagrangian at the current iterates.
double augmented_lagrangian(const std::vector<PDNodeState>& states, const Eigen::MatrixXd& A,
                            const Eigen::VectorXd& c, const DomainSet& domain,
                            const ConstraintFamily& family,
                            const std::vector<ScenarioSet>& sets, double rho);

}  // namespace scenet
