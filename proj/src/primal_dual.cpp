#include "scenet/primal_dual.hpp"

#include <cmath>

#include "scenet/errors.hpp"

namespace scenet {

void StepSchedule::validate() const {
  if (zeta0 <= 0.0) throw ParameterError("zeta0 must be positive");
  if (!(exponent > 0.5 && exponent <= 1.0))
    throw ParameterError("stepsize exponent must lie in (1/2, 1]");
}

double StepSchedule::at(long k) const {
  return zeta0 / std::pow(static_cast<double>(k) + 1.0, exponent);
}

double StepSchedule::partial_sum(long k) const {
  double s = 0.0;
  for (long t = 0; t <= k; ++t) s += at(t);
  return s;
}

void PDConfig::validate() const {
  if (rho <= 0.0) throw ParameterError("penalty weight rho must be positive");
  schedule.validate();
}

std::vector<PDNodeState> pd_init(int m, int n, const std::vector<int>& sample_counts) {
  if (static_cast<int>(sample_counts.size()) != m)
    throw ParameterError("sample count list must have one entry per node");
  std::vector<PDNodeState> states(m);
  for (int j = 0; j < m; ++j) {
    states[j].theta = Eigen::VectorXd::Zero(n);
    states[j].lambda = Eigen::VectorXd::Zero(n);
    states[j].gamma = Eigen::VectorXd::Zero(sample_counts[j] + 1);
  }
  return states;
}

Eigen::VectorXd local_disagreement(int j, const std::vector<Eigen::VectorXd>& thetas,
                                   const Eigen::MatrixXd& A) {
  const int m = static_cast<int>(thetas.size());
  Eigen::VectorXd b = Eigen::VectorXd::Zero(thetas[j].size());
  for (int i = 0; i < m; ++i) {
    const double a = A(j, i);
    if (a != 0.0 && i != j) b += a * (thetas[j] - thetas[i]);
  }
  return b;
}

Eigen::VectorXd modified_multiplier(const Eigen::VectorXd& lambda, const Eigen::VectorXd& b,
                                    double rho) {
  return lambda + rho * b;
}

Eigen::VectorXd g_eval(const Eigen::VectorXd& theta, const DomainSet& domain,
                       const ConstraintFamily& family, const ScenarioSet& set) {
  Eigen::VectorXd g(set.count() + 1);
  g[0] = domain.distance(theta);
  for (int i = 0; i < set.count(); ++i)
    g[i + 1] = std::max(0.0, family.eval(theta, set.samples[i]));
  return g;
}

Eigen::MatrixXd g_subgrad(const Eigen::VectorXd& theta, const DomainSet& domain,
                          const ConstraintFamily& family, const ScenarioSet& set) {
  const int n = static_cast<int>(theta.size());
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(set.count() + 1, n);
  const Eigen::VectorXd displaced = theta - domain.project(theta);
  const double dist = displaced.norm();
  if (dist > 0.0) s.row(0) = displaced.transpose() / dist;
  for (int i = 0; i < set.count(); ++i) {
    if (family.eval(theta, set.samples[i]) > 0.0)
      s.row(i + 1) = family.subgrad(theta, set.samples[i]).transpose();
  }
  return s;
}

Eigen::VectorXd primal_direction(int j, const Eigen::VectorXd& c, const Eigen::MatrixXd& s,
                                 const Eigen::VectorXd& gamma, const Eigen::VectorXd& g,
                                 double rho, const std::vector<Eigen::VectorXd>& lambda_tilde,
                                 const Eigen::MatrixXd& L) {
  if (static_cast<int>(lambda_tilde.size()) != L.rows())
    throw ParameterError("missing neighbor multiplier message");
  Eigen::VectorXd T = c + s.transpose() * (gamma + rho * g);
  for (int i = 0; i < L.rows(); ++i) {
    const double l = L(i, j);
    if (l != 0.0) T += l * lambda_tilde[i];
  }
  return T;
}

PDWave1 pd_wave1(const std::vector<PDNodeState>& states, const Eigen::MatrixXd& A, double rho) {
  const int m = static_cast<int>(states.size());
  std::vector<Eigen::VectorXd> thetas(m);
  for (int j = 0; j < m; ++j) thetas[j] = states[j].theta;
  PDWave1 wave;
  wave.b.resize(m);
  wave.lambda_tilde.resize(m);
  for (int j = 0; j < m; ++j) {
    wave.b[j] = local_disagreement(j, thetas, A);
    wave.lambda_tilde[j] = modified_multiplier(states[j].lambda, wave.b[j], rho);
  }
  return wave;
}

void pd_apply(std::vector<PDNodeState>& states, const PDWave1& wave, const Eigen::MatrixXd& L,
              const Eigen::VectorXd& c, const DomainSet& domain, const ConstraintFamily& family,
              const std::vector<ScenarioSet>& sets, const PDConfig& config, long k) {
  config.validate();
  const int m = static_cast<int>(states.size());
  const double zeta = config.schedule.at(k);
  std::vector<Eigen::VectorXd> g(m), T(m);
  std::vector<double> alpha(m), beta(m);
  for (int j = 0; j < m; ++j) {
    g[j] = g_eval(states[j].theta, domain, family, sets[j]);
    const Eigen::MatrixXd s = g_subgrad(states[j].theta, domain, family, sets[j]);
    T[j] = primal_direction(j, c, s, states[j].gamma, g[j], config.rho, wave.lambda_tilde, L);
    const double p_norm = std::sqrt(wave.b[j].squaredNorm() + g[j].squaredNorm());
    alpha[j] = zeta / std::max(1.0, T[j].norm());
    beta[j] = zeta / std::max(1.0, p_norm);
  }
  // synchronous: all right-hand sides above are round-k values
  for (int j = 0; j < m; ++j) {
    states[j].lambda += beta[j] * wave.b[j];
    states[j].gamma += beta[j] * g[j];
    states[j].theta -= alpha[j] * T[j];
  }
}

void pd_round(std::vector<PDNodeState>& states, const Topology& topology,
              const Eigen::MatrixXd& A, const Eigen::VectorXd& c, const DomainSet& domain,
              const ConstraintFamily& family, const std::vector<ScenarioSet>& sets,
              const PDConfig& config, long k) {
  if (topology.directed)
    throw ConfigError("primal-dual rounds need an undirected topology");
  PDWave1 wave = pd_wave1(states, A, config.rho);
  pd_apply(states, wave, laplacian(A), c, domain, family, sets, config, k);
}

double augmented_lagrangian(const std::vector<PDNodeState>& states, const Eigen::MatrixXd& A,
                            const Eigen::VectorXd& c, const DomainSet& domain,
                            const ConstraintFamily& family,
                            const std::vector<ScenarioSet>& sets, double rho) {
  const int m = static_cast<int>(states.size());
  std::vector<Eigen::VectorXd> thetas(m);
  for (int j = 0; j < m; ++j) thetas[j] = states[j].theta;
  double total = 0.0;
  for (int j = 0; j < m; ++j) {
    const Eigen::VectorXd b = local_disagreement(j, thetas, A);
    const Eigen::VectorXd g = g_eval(states[j].theta, domain, family, sets[j]);
    total += c.dot(states[j].theta) + states[j].lambda.dot(b) + states[j].gamma.dot(g) +
             0.5 * rho * (b.squaredNorm() + g.squaredNorm());
  }
  return total;
}

}  // namespace scenet
