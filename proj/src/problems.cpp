#include "scenet/problems.hpp"

#include <cmath>

#include "scenet/errors.hpp"

namespace scenet {

DomainSet DomainSet::whole_space(int dim) {
  if (dim < 1) throw ParameterError("domain dimension must be >= 1");
  DomainSet d;
  d.kind_ = Kind::WholeSpace;
  d.dim_ = dim;
  return d;
}

DomainSet DomainSet::box(Eigen::VectorXd lo, Eigen::VectorXd hi) {
  if (lo.size() != hi.size() || lo.size() == 0)
    throw ParameterError("box bounds must match and be nonempty");
  if ((hi.array() <= lo.array()).any())
    throw ParameterError("box must have nonempty interior");
  DomainSet d;
  d.kind_ = Kind::Box;
  d.dim_ = static_cast<int>(lo.size());
  d.lo_ = std::move(lo);
  d.hi_ = std::move(hi);
  return d;
}

DomainSet DomainSet::box_centered(int dim, double half_width) {
  return box(Eigen::VectorXd::Constant(dim, -half_width),
             Eigen::VectorXd::Constant(dim, half_width));
}

DomainSet DomainSet::ball(Eigen::VectorXd center, double radius) {
  if (center.size() == 0) throw ParameterError("ball center must be nonempty");
  if (radius <= 0.0) throw ParameterError("ball radius must be positive");
  DomainSet d;
  d.kind_ = Kind::Ball;
  d.dim_ = static_cast<int>(center.size());
  d.center_ = std::move(center);
  d.radius_ = radius;
  return d;
}

Eigen::VectorXd DomainSet::project(const Eigen::VectorXd& x) const {
  if (x.size() != dim_) throw ParameterError("projection dimension mismatch");
  switch (kind_) {
    case Kind::WholeSpace:
      return x;
    case Kind::Box:
      return x.cwiseMax(lo_).cwiseMin(hi_);
    case Kind::Ball: {
      const Eigen::VectorXd r = x - center_;
      const double norm = r.norm();
      if (norm <= radius_) return x;
      return center_ + (radius_ / norm) * r;
    }
  }
  throw NumericError("unreachable domain kind");
}

double DomainSet::distance(const Eigen::VectorXd& x) const {
  return (x - project(x)).norm();
}

bool DomainSet::contains(const Eigen::VectorXd& x, double tol) const {
  return distance(x) <= tol;
}

HalfspaceFamily::HalfspaceFamily(int dim, double offset_lo, double offset_hi)
    : dim_(dim), offset_lo_(offset_lo), offset_hi_(offset_hi) {
  if (dim < 1) throw ParameterError("halfspace dimension must be >= 1");
  if (offset_hi < offset_lo) throw ParameterError("offset range is empty");
}

double HalfspaceFamily::eval(const Eigen::VectorXd& theta, const Eigen::VectorXd& q) const {
  if (theta.size() != dim_ || q.size() != dim_ + 1)
    throw ParameterError("halfspace evaluation dimension mismatch");
  return q.head(dim_).dot(theta) - q[dim_];
}

Eigen::VectorXd HalfspaceFamily::subgrad(const Eigen::VectorXd&,
                                         const Eigen::VectorXd& q) const {
  if (q.size() != dim_ + 1) throw ParameterError("halfspace sample dimension mismatch");
  return q.head(dim_);
}

Eigen::VectorXd HalfspaceFamily::draw(Rng& rng) const {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd a(dim_);
  double norm2 = 0.0;
  do {
    for (int i = 0; i < dim_; ++i) a[i] = gauss(rng);
    norm2 = a.squaredNorm();
  } while (norm2 == 0.0);
  a /= std::sqrt(norm2);
  std::uniform_real_distribution<double> unif(offset_lo_, offset_hi_);
  Eigen::VectorXd q(dim_ + 1);
  q.head(dim_) = a;
  q[dim_] = unif(rng);
  return q;
}

Eigen::MatrixXd toeplitz_from(const Eigen::VectorXd& u) {
  const int n = static_cast<int>(u.size());
  if (n == 0) throw ParameterError("toeplitz column must be nonempty");
  Eigen::MatrixXd U = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= i; ++k) U(i, k) = u[i - k];
  return U;
}

IdentFamily::IdentFamily(Eigen::VectorXd u, Eigen::VectorXd y, double rho)
    : n_(static_cast<int>(u.size())), u_(std::move(u)), y_(std::move(y)), rho_(rho) {
  if (n_ == 0 || y_.size() != n_)
    throw ParameterError("input and output must be nonempty and of equal length");
  if (rho < 0.0) throw ParameterError("uncertainty radius must be nonnegative");
  U_ = toeplitz_from(u_);
}

double IdentFamily::residual(const Eigen::VectorXd& theta, const Eigen::VectorXd& q) const {
  if (theta.size() != n_ || q.size() != 2 * n_)
    throw ParameterError("identification residual dimension mismatch");
  const Eigen::MatrixXd dU = toeplitz_from(q.head(n_));
  return (y_ + q.tail(n_) - (U_ + dU) * theta).norm();
}

double IdentFamily::eval(const Eigen::VectorXd& theta_aug, const Eigen::VectorXd& q) const {
  if (theta_aug.size() != n_ + 1) throw ParameterError("augmented decision dimension mismatch");
  return residual(theta_aug.head(n_), q) - theta_aug[n_];
}

Eigen::VectorXd IdentFamily::subgrad(const Eigen::VectorXd& theta_aug,
                                     const Eigen::VectorXd& q) const {
  if (theta_aug.size() != n_ + 1 || q.size() != 2 * n_)
    throw ParameterError("identification sub-gradient dimension mismatch");
  const Eigen::MatrixXd dU = toeplitz_from(q.head(n_));
  const Eigen::VectorXd r = y_ + q.tail(n_) - (U_ + dU) * theta_aug.head(n_);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(n_ + 1);
  const double norm = r.norm();
  if (norm > 0.0) g.head(n_) = -(U_ + dU).transpose() * (r / norm);
  g[n_] = -1.0;
  return g;
}

Eigen::VectorXd IdentFamily::draw(Rng& rng) const {
  return uniform_ball(2 * n_, rho_, rng);
}

Eigen::VectorXd IdentFamily::least_squares_solution() const {
  if (u_[0] == 0.0) throw NumericError("Toeplitz system is singular (u[0] = 0)");
  return U_.triangularView<Eigen::Lower>().solve(y_);
}

double max_residual(const IdentFamily& family, const Eigen::VectorXd& theta,
                    const std::vector<ScenarioSet>& sets) {
  bool any = false;
  double worst = 0.0;
  for (const auto& set : sets)
    for (const auto& q : set.samples) {
      worst = std::max(worst, family.residual(theta, q));
      any = true;
    }
  if (!any) throw ParameterError("max_residual needs at least one sample");
  return worst;
}

EpigraphFamily::EpigraphFamily(std::shared_ptr<const ConstraintFamily> base, int node,
                               int node_count)
    : base_(std::move(base)), node_(node), node_count_(node_count) {
  if (!base_) throw ParameterError("epigraph base family must be set");
  if (node_count < 1 || node < 0 || node >= node_count)
    throw ParameterError("epigraph node index out of range");
}

int EpigraphFamily::decision_dim() const {
  return base_->decision_dim() + node_count_;
}

double EpigraphFamily::eval(const Eigen::VectorXd& x, const Eigen::VectorXd& q) const {
  const int n0 = base_->decision_dim();
  if (x.size() != n0 + node_count_) throw ParameterError("epigraph decision dimension mismatch");
  return base_->eval(x.head(n0), q) - x[n0 + node_];
}

Eigen::VectorXd EpigraphFamily::subgrad(const Eigen::VectorXd& x,
                                        const Eigen::VectorXd& q) const {
  const int n0 = base_->decision_dim();
  if (x.size() != n0 + node_count_) throw ParameterError("epigraph decision dimension mismatch");
  Eigen::VectorXd g = Eigen::VectorXd::Zero(n0 + node_count_);
  g.head(n0) = base_->subgrad(x.head(n0), q);
  g[n0 + node_] = -1.0;
  return g;
}

Eigen::VectorXd EpigraphFamily::objective(int base_dim, int node_count) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(base_dim + node_count);
  c.tail(node_count).setOnes();
  return c;
}

}  // namespace scenet
