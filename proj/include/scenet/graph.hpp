#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "scenet/rng.hpp"

namespace scenet {

// Directed edge (i,j): node i receives from node j. No self-loops are stored;
// the self-weight is implicit in the weighting rule. Undirected topologies
// keep the edge set symmetric.
struct Topology {
  int m = 0;
  bool directed = false;
  std::vector<std::pair<int, int>> edges;

  void validate() const;
  std::vector<int> in_neighbors(int j) const;   // nodes j receives from
  std::vector<int> out_neighbors(int j) const;  // nodes receiving from j
};

struct PerronVector {
  Eigen::VectorXd pi;
  double residual = 0.0;  // ||pi'A - pi'||_inf at return
};

// Row-stochastic weights adapted to the topology. Undirected: Metropolis
// weights a_ij = 1/(1+max(deg_i,deg_j)), diagonal absorbs the remainder
// (symmetric). Directed: a_ji = 1/(|in(j)|+1) for each in-neighbor and self.
Eigen::MatrixXd build_weights(const Topology& topology);

// L = I - A; rows sum to zero.
Eigen::MatrixXd laplacian(const Eigen::MatrixXd& A);

bool is_strongly_connected(const Topology& topology);

// Normalized left Perron eigenvector of a row-stochastic A, by power
// iteration on the transpose with renormalization.
PerronVector left_eigenvector(const Eigen::MatrixXd& A, double tol = 1e-12,
                              long max_iters = 1000000);

// Spectral radius of A - 1*pi'; strictly below 1 for strongly connected A.
double consensus_contraction_factor(const Eigen::MatrixXd& A, const Eigen::VectorXd& pi);

// Per-round graph draw: each base edge retained independently with the given
// probability. Undirected pairs are kept or dropped together.
Topology sample_time_varying(const Topology& base, double activation_prob, Rng& rng);

// Ring over m nodes plus each non-adjacent pair linked with extra_prob.
// The directed variant orients the ring clockwise and each extra link with an
// equal-probability random direction.
Topology ring_random_undirected(int m, double extra_prob, Rng& rng);
Topology ring_random_directed(int m, double extra_prob, Rng& rng);
Topology complete_graph(int m);
Topology ring_graph(int m, bool directed);

// Edge-list text format: header line "m directed|undirected", then one
// "i j" pair per line.
Topology load_topology(const std::string& path);
void save_topology(const Topology& topology, const std::string& path);

}  // namespace scenet
