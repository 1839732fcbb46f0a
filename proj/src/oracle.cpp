#include "scenet/oracle.hpp"

#include <cmath>
#include <limits>

#include "scenet/errors.hpp"

namespace scenet {

namespace {

// All hyperplanes a'x = b considered for vertex enumeration: constraint
// boundaries plus box facets.
std::vector<Halfspace> facet_pool(const std::vector<Halfspace>& constraints,
                                  const DomainSet& box) {
  std::vector<Halfspace> pool = constraints;
  const int n = box.dim();
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e[i] = 1.0;
    pool.push_back({e, box.hi()[i]});
    pool.push_back({-e, -box.lo()[i]});
  }
  return pool;
}

bool feasible_point(const Eigen::VectorXd& x, const std::vector<Halfspace>& pool,
                    double tol, double* worst) {
  double w = -std::numeric_limits<double>::infinity();
  for (const auto& h : pool) w = std::max(w, h.a.dot(x) - h.b);
  if (worst) *worst = std::max(0.0, w);
  return w <= tol;
}

void enumerate_vertices(const std::vector<Halfspace>& pool, int n,
                        std::vector<int>& pick, int start,
                        std::vector<Eigen::VectorXd>& out) {
  if (static_cast<int>(pick.size()) == n) {
    Eigen::MatrixXd M(n, n);
    Eigen::VectorXd rhs(n);
    for (int r = 0; r < n; ++r) {
      M.row(r) = pool[pick[r]].a.transpose();
      rhs[r] = pool[pick[r]].b;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    if (!lu.isInvertible()) return;
    out.push_back(lu.solve(rhs));
    return;
  }
  for (int i = start; i < static_cast<int>(pool.size()); ++i) {
    pick.push_back(i);
    enumerate_vertices(pool, n, pick, i + 1, out);
    pick.pop_back();
  }
}

}  // namespace

OracleSolution solve_lp_by_vertices(const Eigen::VectorXd& c,
                                    const std::vector<Halfspace>& constraints,
                                    const DomainSet& box, double feas_tol) {
  const int n = static_cast<int>(c.size());
  if (n > 3) throw ParameterError("vertex oracle is restricted to dimension <= 3");
  if (box.kind() != DomainSet::Kind::Box || box.dim() != n)
    throw ParameterError("vertex oracle needs a box domain of matching dimension");
  for (const auto& h : constraints)
    if (h.a.size() != n) throw ParameterError("constraint dimension mismatch");

  const auto pool = facet_pool(constraints, box);
  std::vector<Eigen::VectorXd> vertices;
  std::vector<int> pick;
  enumerate_vertices(pool, n, pick, 0, vertices);

  OracleSolution best;
  best.method = "vertex-enumeration";
  best.value = std::numeric_limits<double>::infinity();
  for (const auto& v : vertices) {
    double worst = 0.0;
    if (!feasible_point(v, pool, feas_tol, &worst)) continue;
    const double val = c.dot(v);
    if (val < best.value) {
      best.value = val;
      best.theta = v;
      best.certificate = worst;
      best.feasible = true;
    }
  }
  if (!best.feasible) best.value = std::numeric_limits<double>::quiet_NaN();
  return best;  // feasible == false reports an infeasible polytope
}

OracleSolution solve_centralized_subgradient(const Eigen::VectorXd& c,
                                             const ConstraintFamily& family,
                                             const ScenarioSet& all_samples,
                                             const DomainSet& domain, long iterations,
                                             const StepSchedule& schedule, Rng& rng,
                                             double feas_tol) {
  schedule.validate();
  const int n = static_cast<int>(c.size());
  Eigen::VectorXd theta = domain.project(Eigen::VectorXd::Zero(n));
  OracleSolution best;
  best.method = "centralized-subgradient";
  best.value = std::numeric_limits<double>::infinity();
  std::uniform_int_distribution<int> pick(0, std::max(0, all_samples.count() - 1));
  for (long k = 0; k < iterations; ++k) {
    // m = 1 degenerate two-stage iteration: gradient step then Polyak step
    Eigen::VectorXd v = theta - schedule.at(k) * c;
    if (all_samples.count() > 0) {
      const Eigen::VectorXd& q = all_samples.samples[pick(rng)];
      const double phi = std::max(0.0, family.eval(v, q));
      if (phi > 0.0) {
        const Eigen::VectorXd d = family.subgrad(v, q);
        const double d2 = d.squaredNorm();
        if (d2 == 0.0)
          throw NumericError("zero sub-gradient at a strictly violated constraint");
        v -= (phi / d2) * d;
      }
    }
    theta = domain.project(v);

    double worst = 0.0;
    for (const auto& q : all_samples.samples)
      worst = std::max(worst, family.eval(theta, q));
    if (worst <= feas_tol) {
      const double val = c.dot(theta);
      if (val < best.value) {
        best.value = val;
        best.theta = theta;
        best.certificate = std::max(0.0, worst);
        best.feasible = true;
      }
    }
  }
  if (!best.feasible) best.value = std::numeric_limits<double>::quiet_NaN();
  return best;  // feasible == false reports a feasibility failure
}

ViolationEstimate estimate_violation(const Eigen::VectorXd& theta,
                                     const ConstraintFamily& family, long M, Rng& rng) {
  if (M < 1) throw ParameterError("violation estimate needs at least one sample");
  long violated = 0;
  for (long i = 0; i < M; ++i) {
    const Eigen::VectorXd q = family.draw(rng);
    if (family.eval(theta, q) > 0.0) ++violated;
  }
  ViolationEstimate est;
  est.samples = M;
  est.fraction = static_cast<double>(violated) / static_cast<double>(M);
  est.standard_error =
      std::sqrt(std::max(0.0, est.fraction * (1.0 - est.fraction)) / static_cast<double>(M));
  return est;
}

}  // namespace scenet
