#include "scenet/scenario.hpp"

#include <cmath>
#include <limits>

#include "scenet/errors.hpp"
#include "scenet/problems.hpp"

namespace scenet {

void SampleComplexityParams::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw ParameterError("epsilon must lie in (0,1)");
  if (!(delta > 0.0 && delta < 1.0))
    throw ParameterError("delta must lie in (0,1)");
  if (n < 1) throw ParameterError("decision dimension must be >= 1");
}

long long sample_complexity(const SampleComplexityParams& params) {
  params.validate();
  const double e = std::exp(1.0);
  const double bound =
      e / (params.epsilon * (e - 1.0)) * (std::log(1.0 / params.delta) + params.n - 1);
  if (bound >= static_cast<double>(std::numeric_limits<long long>::max()))
    throw NumericError("sample complexity overflows integer range");
  long long n_bin = static_cast<long long>(std::ceil(bound));
  return n_bin < 1 ? 1 : n_bin;
}

bool binomial_tail_holds(long long N, const SampleComplexityParams& params) {
  params.validate();
  if (N < 1) throw ParameterError("N must be >= 1");
  // Terms with i > N vanish; if N < n the remaining terms sum to 1.
  const double log_eps = std::log(params.epsilon);
  const double log_1meps = std::log1p(-params.epsilon);
  const double nd = static_cast<double>(N);
  double log_sum = -std::numeric_limits<double>::infinity();
  const long long imax = std::min<long long>(params.n - 1, N);
  for (long long i = 0; i <= imax; ++i) {
    const double log_choose =
        std::lgamma(nd + 1.0) - std::lgamma(i + 1.0) - std::lgamma(nd - i + 1.0);
    const double log_term = log_choose + i * log_eps + (nd - i) * log_1meps;
    // log-sum-exp accumulation
    if (log_term > log_sum) {
      log_sum = log_term + std::log1p(std::exp(log_sum - log_term));
    } else {
      log_sum += std::log1p(std::exp(log_term - log_sum));
    }
  }
  if (N < params.n) log_sum = 0.0;  // full binomial mass
  return log_sum <= std::log(params.delta);
}

long long minimal_complexity_by_search(const SampleComplexityParams& params) {
  params.validate();
  long long hi = sample_complexity(params);
  if (!binomial_tail_holds(hi, params))
    throw NumericError("closed-form bound does not satisfy the tail inequality");
  long long lo = 1;
  if (binomial_tail_holds(lo, params)) return lo;
  // invariant: predicate false at lo, true at hi
  while (hi - lo > 1) {
    const long long mid = lo + (hi - lo) / 2;
    if (binomial_tail_holds(mid, params))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

Partition partition_samples(long long n_bin, const std::vector<long long>& capacities) {
  if (n_bin < 1) throw ParameterError("n_bin must be >= 1");
  if (capacities.empty()) throw ParameterError("capacities must be nonempty");
  long long total = 0;
  for (long long c : capacities) {
    if (c < 0) throw ParameterError("capacities must be nonnegative");
    total += c;
  }
  if (total < n_bin)
    throw CapacityError("total capacity below required sample complexity");
  // Capacities are the proportionality weights; every node is loaded to its
  // declared capacity. Oversampling beyond n_bin only strengthens the
  // guarantee.
  Partition p;
  p.counts = capacities;
  p.total = total;
  return p;
}

ScenarioSet draw_scenarios(const ConstraintFamily& family, int node_id, int n_j, Rng& rng) {
  if (n_j < 0) throw ParameterError("n_j must be nonnegative");
  ScenarioSet set;
  set.node_id = node_id;
  set.samples.reserve(static_cast<size_t>(n_j));
  for (int i = 0; i < n_j; ++i) set.samples.push_back(family.draw(rng));
  return set;
}

Eigen::VectorXd uniform_ball(int dim, double radius, Rng& rng) {
  if (dim < 1) throw ParameterError("ball dimension must be >= 1");
  if (radius < 0.0) throw ParameterError("ball radius must be nonnegative");
  if (radius == 0.0) return Eigen::VectorXd::Zero(dim);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd dir(dim);
  double norm2 = 0.0;
  do {
    for (int i = 0; i < dim; ++i) dir[i] = gauss(rng);
    norm2 = dir.squaredNorm();
  } while (norm2 == 0.0);
  dir /= std::sqrt(norm2);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double r = radius * std::pow(unif(rng), 1.0 / dim);
  return r * dir;
}

}  // namespace scenet
