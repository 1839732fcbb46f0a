#include "scenet/rand_proj.hpp"

#include "scenet/errors.hpp"

namespace scenet {

void RPConfig::validate() const {
  if (!(beta > 0.0 && beta < 2.0)) throw ParameterError("beta must lie in (0,2)");
  schedule.validate();
  if (fallback_direction.size() == 0 || fallback_direction.isZero())
    throw ParameterError("fallback direction must be nonzero");
}

Eigen::VectorXd mix(int j, const std::vector<Eigen::VectorXd>& thetas,
                    const Eigen::MatrixXd& A, double zeta, const Eigen::VectorXd& c) {
  Eigen::VectorXd v = -zeta * c;
  for (int i = 0; i < static_cast<int>(thetas.size()); ++i) {
    const double a = A(j, i);
    if (a != 0.0) v += a * thetas[i];
  }
  return v;
}

Eigen::VectorXd polyak_step(const Eigen::VectorXd& v, const ConstraintFamily& family,
                            const ScenarioSet& set, double beta, const DomainSet& domain,
                            Rng& rng, const Eigen::VectorXd& fallback) {
  if (set.count() < 1) throw ParameterError("polyak step needs at least one sample");
  std::uniform_int_distribution<int> pick(0, set.count() - 1);
  const Eigen::VectorXd& q = set.samples[pick(rng)];
  const double phi = std::max(0.0, family.eval(v, q));
  if (phi <= 0.0) return domain.project(v);  // zero step along the fallback
  const Eigen::VectorXd d = family.subgrad(v, q);
  const double d2 = d.squaredNorm();
  if (d2 == 0.0)
    throw NumericError("zero sub-gradient at a strictly violated constraint");
  (void)fallback;
  return domain.project(v - (beta * phi / d2) * d);
}

void rp_round(std::vector<Eigen::VectorXd>& thetas, const Eigen::MatrixXd& A,
              const Eigen::VectorXd& c, const DomainSet& domain, const ConstraintFamily& family,
              const std::vector<ScenarioSet>& sets, const RPConfig& config, long k,
              std::vector<Rng>& streams) {
  config.validate();
  const int m = static_cast<int>(thetas.size());
  if (static_cast<int>(sets.size()) != m || static_cast<int>(streams.size()) != m)
    throw ParameterError("per-node sets and streams must match the state count");
  const double zeta = config.schedule.at(k);
  std::vector<Eigen::VectorXd> next(m);
  for (int j = 0; j < m; ++j) {
    const Eigen::VectorXd v = mix(j, thetas, A, zeta, c);
    next[j] = polyak_step(v, family, sets[j], config.beta, domain, streams[j],
                          config.fallback_direction);
  }
  thetas = std::move(next);
}

}  // namespace scenet
