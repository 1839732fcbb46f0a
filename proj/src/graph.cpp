#include "scenet/graph.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "scenet/errors.hpp"

namespace scenet {

void Topology::validate() const {
  if (m < 1) throw ParameterError("topology needs at least one node");
  std::set<std::pair<int, int>> seen;
  for (auto [i, j] : edges) {
    if (i < 0 || i >= m || j < 0 || j >= m)
      throw ParameterError("edge endpoint out of range");
    if (i == j) throw ParameterError("self-loops are not stored explicitly");
    if (!seen.insert({i, j}).second) throw ParameterError("duplicate edge");
  }
  if (!directed) {
    for (auto [i, j] : edges)
      if (!seen.count({j, i}))
        throw ParameterError("undirected topology must have a symmetric edge set");
  }
}

std::vector<int> Topology::in_neighbors(int j) const {
  std::vector<int> out;
  for (auto [a, b] : edges)
    if (a == j) out.push_back(b);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> Topology::out_neighbors(int j) const {
  std::vector<int> out;
  for (auto [a, b] : edges)
    if (b == j) out.push_back(a);
  std::sort(out.begin(), out.end());
  return out;
}

Eigen::MatrixXd build_weights(const Topology& topology) {
  topology.validate();
  const int m = topology.m;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
  if (!topology.directed) {
    std::vector<int> deg(m, 0);
    for (auto [i, j] : topology.edges) deg[i]++;  // symmetric set counts both ways
    for (auto [i, j] : topology.edges)
      A(i, j) = 1.0 / (1.0 + std::max(deg[i], deg[j]));
    for (int j = 0; j < m; ++j) A(j, j) = 1.0 - A.row(j).sum();
  } else {
    for (int j = 0; j < m; ++j) {
      const auto in = topology.in_neighbors(j);
      const double w = 1.0 / (static_cast<double>(in.size()) + 1.0);
      for (int i : in) A(j, i) = w;
      A(j, j) = w;
    }
  }
  return A;
}

Eigen::MatrixXd laplacian(const Eigen::MatrixXd& A) {
  return Eigen::MatrixXd::Identity(A.rows(), A.cols()) - A;
}

namespace {

void reach(int start, const std::vector<std::vector<int>>& adj, std::vector<char>& seen) {
  std::vector<int> stack{start};
  seen[start] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
  }
}

}  // namespace

bool is_strongly_connected(const Topology& topology) {
  topology.validate();
  const int m = topology.m;
  if (m == 1) return true;
  // information flows j -> i along edge (i,j); strong connectivity is
  // equivalent to full reachability from node 0 in both orientations
  std::vector<std::vector<int>> fwd(m), rev(m);
  for (auto [i, j] : topology.edges) {
    fwd[j].push_back(i);
    rev[i].push_back(j);
  }
  std::vector<char> a(m, 0), b(m, 0);
  reach(0, fwd, a);
  reach(0, rev, b);
  for (int v = 0; v < m; ++v)
    if (!a[v] || !b[v]) return false;
  return true;
}

PerronVector left_eigenvector(const Eigen::MatrixXd& A, double tol, long max_iters) {
  const int m = static_cast<int>(A.rows());
  Eigen::VectorXd pi = Eigen::VectorXd::Constant(m, 1.0 / m);
  for (long it = 0; it < max_iters; ++it) {
    Eigen::VectorXd next = A.transpose() * pi;
    const double s = next.sum();
    if (s <= 0.0) throw NumericError("power iteration degenerated");
    next /= s;
    const double res = (A.transpose() * next - next).lpNorm<Eigen::Infinity>();
    pi = next;
    if (res <= tol) {
      PerronVector out;
      out.pi = pi;
      out.residual = res;
      return out;
    }
  }
  throw NumericError("left eigenvector power iteration did not converge");
}

double consensus_contraction_factor(const Eigen::MatrixXd& A, const Eigen::VectorXd& pi) {
  const int m = static_cast<int>(A.rows());
  const Eigen::MatrixXd M = A - Eigen::VectorXd::Ones(m) * pi.transpose();
  Eigen::EigenSolver<Eigen::MatrixXd> es(M, /*computeEigenvectors=*/false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

Topology sample_time_varying(const Topology& base, double activation_prob, Rng& rng) {
  base.validate();
  if (!(activation_prob > 0.0 && activation_prob <= 1.0))
    throw ParameterError("activation probability must lie in (0,1]");
  if (activation_prob == 1.0) return base;
  std::bernoulli_distribution keep(activation_prob);
  Topology out;
  out.m = base.m;
  out.directed = base.directed;
  if (base.directed) {
    for (auto e : base.edges)
      if (keep(rng)) out.edges.push_back(e);
  } else {
    for (auto [i, j] : base.edges) {
      if (i < j && keep(rng)) {
        out.edges.push_back({i, j});
        out.edges.push_back({j, i});
      }
    }
  }
  return out;
}

namespace {

void add_undirected(Topology& t, int i, int j) {
  t.edges.push_back({i, j});
  t.edges.push_back({j, i});
}

}  // namespace

Topology ring_random_undirected(int m, double extra_prob, Rng& rng) {
  if (m < 2) throw ParameterError("ring needs at least two nodes");
  Topology t;
  t.m = m;
  t.directed = false;
  for (int i = 0; i + 1 < m; ++i) add_undirected(t, i, i + 1);
  if (m > 2) add_undirected(t, 0, m - 1);
  std::bernoulli_distribution link(extra_prob);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const bool ring_pair = (j == i + 1) || (i == 0 && j == m - 1);
      if (!ring_pair && link(rng)) add_undirected(t, i, j);
    }
  t.validate();
  return t;
}

Topology ring_random_directed(int m, double extra_prob, Rng& rng) {
  if (m < 2) throw ParameterError("ring needs at least two nodes");
  Topology t;
  t.m = m;
  t.directed = true;
  // clockwise ring: node i+1 receives from node i
  for (int i = 0; i < m; ++i) t.edges.push_back({(i + 1) % m, i});
  std::bernoulli_distribution link(extra_prob);
  std::bernoulli_distribution orient(0.5);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const bool ring_pair = (j == i + 1) || (i == 0 && j == m - 1);
      if (!ring_pair && link(rng)) {
        if (orient(rng))
          t.edges.push_back({i, j});
        else
          t.edges.push_back({j, i});
      }
    }
  t.validate();
  return t;
}

Topology complete_graph(int m) {
  Topology t;
  t.m = m;
  t.directed = false;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) add_undirected(t, i, j);
  t.validate();
  return t;
}

Topology ring_graph(int m, bool directed) {
  if (m < 2) throw ParameterError("ring needs at least two nodes");
  Topology t;
  t.m = m;
  t.directed = directed;
  if (directed) {
    for (int i = 0; i < m; ++i) t.edges.push_back({(i + 1) % m, i});
  } else {
    for (int i = 0; i < m; ++i) {
      int j = (i + 1) % m;
      if (i < j) add_undirected(t, i, j);
    }
    if (m > 2) add_undirected(t, 0, m - 1);
  }
  t.validate();
  return t;
}

Topology load_topology(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open topology file: " + path);
  std::string header;
  if (!std::getline(in, header)) throw IoError("empty topology file: " + path);
  std::istringstream hs(header);
  Topology t;
  std::string mode;
  if (!(hs >> t.m >> mode) || (mode != "directed" && mode != "undirected"))
    throw IoError("topology header must be 'm directed|undirected'");
  t.directed = (mode == "directed");
  int i, j;
  while (in >> i >> j) t.edges.push_back({i, j});
  t.validate();
  return t;
}

void save_topology(const Topology& topology, const std::string& path) {
  topology.validate();
  std::ofstream out(path);
  if (!out) throw IoError("cannot write topology file: " + path);
  out << topology.m << ' ' << (topology.directed ? "directed" : "undirected") << '\n';
  for (auto [i, j] : topology.edges) out << i << ' ' << j << '\n';
}

}  // namespace scenet
