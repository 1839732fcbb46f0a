#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "scenet/problems.hpp"
#include "scenet/primal_dual.hpp"
#include "scenet/rng.hpp"

namespace scenet {

struct OracleSolution {
  Eigen::VectorXd theta;
  double value = 0.0;
  std::string method;
  double certificate = 0.0;  // max constraint violation at theta
  bool feasible = false;
};

// Affine constraint a' theta <= b.
struct Halfspace {
  Eigen::VectorXd a;
  double b;
};

// Exact small-instance LP oracle: enumerates every vertex of the feasible
// polytope (intersections of n active hyperplanes from the constraints and
// the box facets), filters feasible, returns the minimizer of c' theta.
// Restricted to dimension <= 3.
OracleSolution solve_lp_by_vertices(const Eigen::VectorXd& c,
                                    const std::vector<Halfspace>& constraints,
                                    const DomainSet& box, double feas_tol = 1e-9);

// Single-node degenerate run of the random-projection iteration holding all
// constraints; returns the best feasible iterate.
OracleSolution solve_centralized_subgradient(const Eigen::VectorXd& c,
                                             const ConstraintFamily& family,
                                             const ScenarioSet& all_samples,
                                             const DomainSet& domain, long iterations,
                                             const StepSchedule& schedule, Rng& rng,
                                             double feas_tol = 1e-8);

struct ViolationEstimate {
  double fraction = 0.0;
  double standard_error = 0.0;
  long samples = 0;
};

// Monte Carlo violation probability: fraction of fresh draws with
// f(theta, q) > 0, plus the binomial standard error.
ViolationEstimate estimate_violation(const Eigen::VectorXd& theta,
                                     const ConstraintFamily& family, long M, Rng& rng);

}  // namespace scenet
