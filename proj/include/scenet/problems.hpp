#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "scenet/rng.hpp"
#include "scenet/scenario.hpp"

namespace scenet {

// Closed convex decision domain with a closed-form Euclidean projection.
class DomainSet {
 public:
  enum class Kind { WholeSpace, Box, Ball };

  static DomainSet whole_space(int dim);
  static DomainSet box(Eigen::VectorXd lo, Eigen::VectorXd hi);
  static DomainSet box_centered(int dim, double half_width);
  static DomainSet ball(Eigen::VectorXd center, double radius);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  const Eigen::VectorXd& lo() const { return lo_; }
  const Eigen::VectorXd& hi() const { return hi_; }

  Eigen::VectorXd project(const Eigen::VectorXd& x) const;
  double distance(const Eigen::VectorXd& x) const;
  bool contains(const Eigen::VectorXd& x, double tol = 0.0) const;

 private:
  Kind kind_ = Kind::WholeSpace;
  int dim_ = 0;
  Eigen::VectorXd lo_, hi_;      // box
  Eigen::VectorXd center_;       // ball
  double radius_ = 0.0;
};

// Parameterized convex constraint f(theta, q) with sub-gradient access and a
// sampler for the uncertainty support Q. Immutable; safe to evaluate
// concurrently.
class ConstraintFamily {
 public:
  virtual ~ConstraintFamily() = default;

  virtual int decision_dim() const = 0;
  virtual int uncertainty_dim() const = 0;
  virtual double eval(const Eigen::VectorXd& theta, const Eigen::VectorXd& q) const = 0;
  virtual Eigen::VectorXd subgrad(const Eigen::VectorXd& theta,
                                  const Eigen::VectorXd& q) const = 0;
  virtual Eigen::VectorXd draw(Rng& rng) const = 0;
};

// f(theta, q) = q_a' theta - q_b with q = (q_a, q_b). Test fixture family;
// q_a is a uniform random direction, q_b uniform on [offset_lo, offset_hi].
// With offset_lo > 0 the origin is a strict interior point of every sampled
// constraint.
class HalfspaceFamily final : public ConstraintFamily {
 public:
  HalfspaceFamily(int dim, double offset_lo = 0.2, double offset_hi = 1.2);

  int decision_dim() const override { return dim_; }
  int uncertainty_dim() const override { return dim_ + 1; }
  double eval(const Eigen::VectorXd& theta, const Eigen::VectorXd& q) const override;
  Eigen::VectorXd subgrad(const Eigen::VectorXd& theta,
                          const Eigen::VectorXd& q) const override;
  Eigen::VectorXd draw(Rng& rng) const override;

  double offset_lo() const { return offset_lo_; }
  double offset_hi() const { return offset_hi_; }

 private:
  int dim_;
  double offset_lo_, offset_hi_;
};

// Lower-triangular Toeplitz matrix with first column u.
Eigen::MatrixXd toeplitz_from(const Eigen::VectorXd& u);

// Robust identification constraint over the augmented decision (theta, t):
// ||(y + dy) - (U + dU) theta|| - t with q = (du, dy), ||q|| <= rho.
class IdentFamily final : public ConstraintFamily {
 public:
  IdentFamily(Eigen::VectorXd u, Eigen::VectorXd y, double rho);

  int decision_dim() const override { return n_ + 1; }
  int uncertainty_dim() const override { return 2 * n_; }
  double eval(const Eigen::VectorXd& theta_aug, const Eigen::VectorXd& q) const override;
  Eigen::VectorXd subgrad(const Eigen::VectorXd& theta_aug,
                          const Eigen::VectorXd& q) const override;
  Eigen::VectorXd draw(Rng& rng) const override;

  // ||(y + dy) - (U + dU) theta|| for a bare theta (no epigraph variable).
  double residual(const Eigen::VectorXd& theta, const Eigen::VectorXd& q) const;

  int order() const { return n_; }
  double rho() const { return rho_; }
  const Eigen::MatrixXd& toeplitz() const { return U_; }
  const Eigen::VectorXd& y() const { return y_; }
  Eigen::VectorXd least_squares_solution() const;  // U^{-1} y

 private:
  int n_;
  Eigen::VectorXd u_, y_;
  Eigen::MatrixXd U_;
  double rho_;
};

// Max of scenario residuals over every node's sample set, r(theta, rho).
double max_residual(const IdentFamily& family, const Eigen::VectorXd& theta,
                    const std::vector<ScenarioSet>& sets);

// Epigraph wrapper: node j's constraint over the augmented decision
// (theta, t_1..t_m) is f_base(theta, q) - t_j. The matching objective puts
// unit weight on every t component.
class EpigraphFamily final : public ConstraintFamily {
 public:
  EpigraphFamily(std::shared_ptr<const ConstraintFamily> base, int node, int node_count);

  int decision_dim() const override;
  int uncertainty_dim() const override { return base_->uncertainty_dim(); }
  double eval(const Eigen::VectorXd& x, const Eigen::VectorXd& q) const override;
  Eigen::VectorXd subgrad(const Eigen::VectorXd& x, const Eigen::VectorXd& q) const override;
  Eigen::VectorXd draw(Rng& rng) const override { return base_->draw(rng); }

  static Eigen::VectorXd objective(int base_dim, int node_count);

 private:
  std::shared_ptr<const ConstraintFamily> base_;
  int node_, node_count_;
};

}  // namespace scenet
