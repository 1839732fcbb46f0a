#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "scenet/rng.hpp"

namespace scenet {

class ConstraintFamily;

// (epsilon, delta, n) triple driving the sample-complexity bounds.
struct SampleComplexityParams {
  double epsilon;  // violation level, in (0,1)
  double delta;    // confidence level, in (0,1)
  int n;           // decision dimension, >= 1

  void validate() const;
};

// Samples owned by a single node. Sets are never shared between nodes.
struct ScenarioSet {
  int node_id = -1;
  std::vector<Eigen::VectorXd> samples;

  int count() const { return static_cast<int>(samples.size()); }
};

struct Partition {
  std::vector<long long> counts;
  long long total = 0;
};

// Closed-form bound: ceil( e/(eps(e-1)) * (ln(1/delta) + n - 1) ).
long long sample_complexity(const SampleComplexityParams& params);

// Binomial-tail test: sum_{i<n} C(N,i) eps^i (1-eps)^(N-i) <= delta,
// evaluated in log space.
bool binomial_tail_holds(long long N, const SampleComplexityParams& params);

// Smallest N for which the binomial-tail test holds (binary search on the
// monotone predicate). Never exceeds the closed-form bound.
long long minimal_complexity_by_search(const SampleComplexityParams& params);

// Splits the required scenario count across nodes. Each node takes its full
// declared capacity; errors out when the capacities cannot cover n_bin.
Partition partition_samples(long long n_bin, const std::vector<long long>& capacities);

// n_j i.i.d. draws from the family's uncertainty support, one stream per node.
ScenarioSet draw_scenarios(const ConstraintFamily& family, int node_id, int n_j, Rng& rng);

// Uniform draw from the Euclidean ball of given radius centered at zero.
Eigen::VectorXd uniform_ball(int dim, double radius, Rng& rng);

}  // namespace scenet
