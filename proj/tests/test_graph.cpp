#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "scenet/errors.hpp"
#include "scenet/graph.hpp"

using namespace scenet;

namespace {

Topology undirected_path2() {
  Topology t;
  t.m = 2;
  t.directed = false;
  t.edges = {{0, 1}, {1, 0}};
  return t;
}

Topology directed_cycle3() {
  Topology t;
  t.m = 3;
  t.directed = true;
  t.edges = {{1, 0}, {2, 1}, {0, 2}};  // (i,j): i receives from j
  return t;
}

void check_row_stochastic(const Eigen::MatrixXd& A) {
  CHECK((A.array() >= 0.0).all());
  for (int i = 0; i < A.rows(); ++i)
    CHECK(A.row(i).sum() == doctest::Approx(1.0).epsilon(1e-12));
}

}  // namespace

TEST_CASE("build_weights undirected Metropolis") {
  const Eigen::MatrixXd A = build_weights(undirected_path2());
  CHECK(A(0, 1) == doctest::Approx(0.5));
  CHECK(A(0, 0) == doctest::Approx(0.5));
  CHECK(A == A.transpose());
  check_row_stochastic(A);

  const Eigen::MatrixXd single = build_weights(Topology{1, false, {}});
  CHECK(single(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("build_weights directed in-degree rule") {
  const Eigen::MatrixXd A = build_weights(directed_cycle3());
  for (int j = 0; j < 3; ++j) {
    CHECK(A(j, j) == doctest::Approx(0.5));
    CHECK(A(j, (j + 2) % 3) == doctest::Approx(0.5));
  }
  check_row_stochastic(A);
}

TEST_CASE("laplacian") {
  CHECK(laplacian(Eigen::MatrixXd::Ones(1, 1))(0, 0) == 0.0);
  Eigen::MatrixXd A(2, 2);
  A << 0.5, 0.5, 0.5, 0.5;
  const Eigen::MatrixXd L = laplacian(A);
  CHECK(L(0, 0) == doctest::Approx(0.5));
  CHECK(L(0, 1) == doctest::Approx(-0.5));
  Rng rng = make_stream(3, 4);
  const Eigen::MatrixXd Ar = build_weights(ring_random_directed(9, 0.3, rng));
  CHECK((laplacian(Ar) * Eigen::VectorXd::Ones(9)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("strong connectivity") {
  CHECK(is_strongly_connected(directed_cycle3()));
  Topology chain{3, true, {{1, 0}, {2, 1}}};  // 0 -> 1 -> 2 only
  CHECK_FALSE(is_strongly_connected(chain));
  CHECK(is_strongly_connected(complete_graph(5)));
  CHECK(is_strongly_connected(ring_graph(6, true)));
}

TEST_CASE("left eigenvector") {
  SUBCASE("doubly stochastic ring gives uniform pi") {
    const Eigen::MatrixXd A = build_weights(ring_graph(4, false));
    const PerronVector p = left_eigenvector(A);
    for (int j = 0; j < 4; ++j) CHECK(p.pi(j) == doctest::Approx(0.25).epsilon(1e-10));
  }
  SUBCASE("2x2 closed form pi ~ [b, a]") {
    Eigen::MatrixXd A(2, 2);
    A << 0.7, 0.3, 0.6, 0.4;
    const PerronVector p = left_eigenvector(A);
    CHECK(p.pi(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    CHECK(p.pi(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  }
  SUBCASE("single node") {
    const PerronVector p = left_eigenvector(Eigen::MatrixXd::Ones(1, 1));
    CHECK(p.pi(0) == doctest::Approx(1.0));
  }
}

TEST_CASE("contraction factor") {
  CHECK(consensus_contraction_factor(Eigen::MatrixXd::Ones(1, 1),
                                     Eigen::VectorXd::Ones(1)) == doctest::Approx(0.0));
  Eigen::MatrixXd A(2, 2);
  A << 0.5, 0.5, 0.5, 0.5;
  CHECK(consensus_contraction_factor(A, Eigen::VectorXd::Constant(2, 0.5)) ==
        doctest::Approx(0.0).epsilon(1e-12));
  const Eigen::MatrixXd Ar = build_weights(ring_graph(4, false));
  const double rho = consensus_contraction_factor(Ar, left_eigenvector(Ar).pi);
  CHECK(rho > 0.0);
  CHECK(rho < 1.0);
}

TEST_CASE("spectral invariants on random digraphs") {
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng = make_stream(77, 100 + trial);
    const int m = 3 + static_cast<int>(rng() % 48);
    const Topology t = ring_random_directed(m, 0.1, rng);
    REQUIRE(is_strongly_connected(t));
    const Eigen::MatrixXd A = build_weights(t);
    check_row_stochastic(A);
    const PerronVector p = left_eigenvector(A, 1e-13);
    CHECK(((p.pi.transpose() * A) - p.pi.transpose()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(p.pi.minCoeff() > 0.0);
    CHECK(p.pi.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(consensus_contraction_factor(A, p.pi) < 1.0);
  }
}

TEST_CASE("time-varying sampling") {
  const Topology base = complete_graph(5);
  SUBCASE("activation 1 returns base") {
    Rng rng = make_stream(5, 6);
    const Topology t = sample_time_varying(base, 1.0, rng);
    CHECK(t.edges == base.edges);
  }
  SUBCASE("fixed seed is deterministic") {
    Rng a = make_stream(5, 6), b = make_stream(5, 6);
    CHECK(sample_time_varying(base, 0.5, a).edges ==
          sample_time_varying(base, 0.5, b).edges);
  }
  SUBCASE("undirected pairs survive together") {
    Rng rng = make_stream(5, 7);
    for (int r = 0; r < 50; ++r) {
      const Topology t = sample_time_varying(base, 0.4, rng);
      for (auto [i, j] : t.edges) {
        const bool rev = std::find(t.edges.begin(), t.edges.end(),
                                   std::make_pair(j, i)) != t.edges.end();
        CHECK(rev);
      }
    }
  }
  SUBCASE("empirical edge frequency matches activation probability") {
    Rng rng = make_stream(5, 8);
    const double p = 0.5;
    const int rounds = 10000;
    long kept = 0;
    for (int r = 0; r < rounds; ++r) {
      const Topology t = sample_time_varying(base, p, rng);
      for (auto [i, j] : t.edges)
        if (i == 0 && j == 1) ++kept;
    }
    const double mean = static_cast<double>(kept) / rounds;
    const double se = std::sqrt(p * (1 - p) / rounds);
    CHECK(std::abs(mean - p) < 3.0 * se + 1e-12);
  }
}

TEST_CASE("ring-random generators") {
  Rng rng = make_stream(11, 12);
  const Topology tu = ring_random_undirected(10, 0.05, rng);
  CHECK_FALSE(tu.directed);
  CHECK(is_strongly_connected(tu));
  for (auto [i, j] : tu.edges)
    CHECK(std::find(tu.edges.begin(), tu.edges.end(), std::make_pair(j, i)) !=
          tu.edges.end());

  const Topology td = ring_random_directed(10, 0.05, rng);
  CHECK(td.directed);
  CHECK(is_strongly_connected(td));
}

TEST_CASE("topology file round trip") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "scenet_topo_test.txt";
  Rng rng = make_stream(21, 22);
  const Topology t = ring_random_directed(7, 0.2, rng);
  save_topology(t, path.string());
  const Topology back = load_topology(path.string());
  CHECK(back.m == t.m);
  CHECK(back.directed == t.directed);
  CHECK(back.edges == t.edges);
  fs::remove(path);
  CHECK_THROWS_AS(load_topology("/nonexistent/scenet_topo.txt"), IoError);
}
