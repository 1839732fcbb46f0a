#pragma once

#include <Eigen/Dense>
#include <vector>

#include "scenet/graph.hpp"
#include "scenet/primal_dual.hpp"
#include "scenet/problems.hpp"
#include "scenet/scenario.hpp"

namespace scenet {

struct RPConfig {
  double beta = 1.0;  // Polyak relaxation, in (0,2)
  StepSchedule schedule;
  Eigen::VectorXd fallback_direction;  // used only where the sampled constraint
                                       // is already satisfied; step is zero there

  void validate() const;
};

// v_j = sum_i a_ji theta_i - zeta * c.
Eigen::VectorXd mix(int j, const std::vector<Eigen::VectorXd>& thetas,
                    const Eigen::MatrixXd& A, double zeta, const Eigen::VectorXd& c);

// Draws one local constraint uniformly at random and takes a relaxed Polyak
// step toward its zero-sublevel set, then projects onto the domain.
Eigen::VectorXd polyak_step(const Eigen::VectorXd& v, const ConstraintFamily& family,
                            const ScenarioSet& set, double beta, const DomainSet& domain,
                            Rng& rng, const Eigen::VectorXd& fallback);

// Synchronous round: every node mixes round-k neighbor states, then applies
// its Polyak step from its own stream. Requires a strongly connected directed
// (or undirected) topology checked by the caller.
void rp_round(std::vector<Eigen::VectorXd>& thetas, const Eigen::MatrixXd& A,
              const Eigen::VectorXd& c, const DomainSet& domain, const ConstraintFamily& family,
              const std::vector<ScenarioSet>& sets, const RPConfig& config, long k,
              std::vector<Rng>& streams);

}  // namespace scenet
