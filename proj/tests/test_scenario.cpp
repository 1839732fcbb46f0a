#include <cmath>
#include <vector>

#include "doctest.h"
#include "scenet/errors.hpp"
#include "scenet/problems.hpp"
#include "scenet/scenario.hpp"

using namespace scenet;

TEST_CASE("sample_complexity closed form") {
  CHECK(sample_complexity({0.001, 1e-6, 32}) == 70898);
  CHECK(sample_complexity({0.002, 1e-4, 3}) == 8868);
  CHECK(sample_complexity({0.5, 0.5, 1}) == 3);
  CHECK_THROWS_AS(sample_complexity({0.0, 0.5, 1}), ParameterError);
  CHECK_THROWS_AS(sample_complexity({1.0, 0.5, 1}), ParameterError);
  CHECK_THROWS_AS(sample_complexity({0.5, 0.0, 1}), ParameterError);
  CHECK_THROWS_AS(sample_complexity({0.5, 1.0, 1}), ParameterError);
  CHECK_THROWS_AS(sample_complexity({0.5, 0.5, 0}), ParameterError);
}

TEST_CASE("binomial tail predicate") {
  CHECK(binomial_tail_holds(2, {0.5, 0.25, 1}));
  CHECK(binomial_tail_holds(70898, {0.001, 1e-6, 32}));
  CHECK_FALSE(binomial_tail_holds(1, {0.001, 1e-6, 32}));
}

TEST_CASE("minimal complexity by search") {
  CHECK(minimal_complexity_by_search({0.5, 0.25, 1}) == 2);
  CHECK(minimal_complexity_by_search({0.002, 1e-4, 3}) <= 8868);
  CHECK(minimal_complexity_by_search({0.9, 0.9, 1}) == 1);

  // Exhaustive-scan cross-check: the returned N is the first true value.
  const SampleComplexityParams p{0.05, 0.01, 2};
  const long long found = minimal_complexity_by_search(p);
  CHECK(binomial_tail_holds(found, p));
  CHECK_FALSE(binomial_tail_holds(found - 1, p));
}

TEST_CASE("bound monotonicity and consistency on a grid") {
  const double eps_grid[] = {0.001, 0.01, 0.05, 0.1, 0.5};
  const double delta_grid[] = {1e-6, 1e-3, 0.1};
  const int n_grid[] = {1, 3, 16, 64};
  for (double eps : eps_grid)
    for (double delta : delta_grid)
      for (int n : n_grid) {
        const SampleComplexityParams p{eps, delta, n};
        const long long nb = sample_complexity(p);
        CHECK(binomial_tail_holds(nb, p));
        CHECK(minimal_complexity_by_search(p) <= nb);
      }
  // Monotone: nonincreasing in eps and delta, nondecreasing in n.
  for (size_t i = 0; i + 1 < 5; ++i)
    CHECK(sample_complexity({eps_grid[i], 1e-4, 8}) >=
          sample_complexity({eps_grid[i + 1], 1e-4, 8}));
  for (size_t i = 0; i + 1 < 3; ++i)
    CHECK(sample_complexity({0.01, delta_grid[i], 8}) >=
          sample_complexity({0.01, delta_grid[i + 1], 8}));
  for (size_t i = 0; i + 1 < 4; ++i)
    CHECK(sample_complexity({0.01, 1e-4, n_grid[i]}) <=
          sample_complexity({0.01, 1e-4, n_grid[i + 1]}));
}

TEST_CASE("partition_samples") {
  SUBCASE("100 nodes of capacity 100 cover 8868") {
    const Partition part = partition_samples(8868, std::vector<long long>(100, 100));
    CHECK(part.total == 10000);
    for (long long c : part.counts) CHECK(c == 100);
  }
  SUBCASE("single node takes all") {
    const Partition part = partition_samples(10, {10});
    CHECK(part.counts == std::vector<long long>{10});
  }
  SUBCASE("three equal nodes") {
    const Partition part = partition_samples(7, {3, 3, 3});
    CHECK(part.counts == std::vector<long long>{3, 3, 3});
    CHECK(part.total == 9);
  }
  SUBCASE("insufficient capacity") {
    CHECK_THROWS_AS(partition_samples(10, {3, 3, 3}), CapacityError);
  }
}

TEST_CASE("uniform ball sampling") {
  Rng rng = make_stream(42, 1);
  for (int i = 0; i < 200; ++i) {
    const Eigen::VectorXd q = uniform_ball(6, 3.0, rng);
    REQUIRE(q.size() == 6);
    CHECK(q.norm() <= 3.0 + 1e-12);
  }
  SUBCASE("degenerate radius") {
    const Eigen::VectorXd q = uniform_ball(4, 0.0, rng);
    CHECK(q.norm() == 0.0);
  }
  SUBCASE("mean near zero by symmetry") {
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(3);
    const int M = 20000;
    for (int i = 0; i < M; ++i) acc += uniform_ball(3, 1.0, rng);
    // Per-coordinate std dev of one draw is sqrt(1/5); 5 sigma band.
    CHECK((acc / M).cwiseAbs().maxCoeff() < 5.0 * std::sqrt(0.2 / M));
  }
}

TEST_CASE("draw_scenarios determinism and support") {
  const IdentFamily fam((Eigen::Vector3d() << 1, 2, 3).finished(),
                        (Eigen::Vector3d() << 4, 5, 6).finished(), 3.0);
  SUBCASE("rho = 0 gives zero vectors") {
    const IdentFamily degenerate(fam.toeplitz().col(0), fam.y(), 0.0);
    Rng rng = make_stream(1, 2);
    const ScenarioSet set = draw_scenarios(degenerate, 0, 5, rng);
    REQUIRE(set.count() == 5);
    for (const auto& q : set.samples) CHECK(q.norm() == 0.0);
  }
  SUBCASE("uniform ball radius 3 in R^6") {
    Rng rng = make_stream(1, 2);
    const ScenarioSet set = draw_scenarios(fam, 0, 100, rng);
    REQUIRE(set.count() == 100);
    for (const auto& q : set.samples) {
      REQUIRE(q.size() == 6);
      CHECK(q.norm() <= 3.0 + 1e-12);
    }
  }
  SUBCASE("equal seeds give bitwise-equal sets") {
    Rng a = make_stream(9, 3), b = make_stream(9, 3);
    const ScenarioSet sa = draw_scenarios(fam, 1, 50, a);
    const ScenarioSet sb = draw_scenarios(fam, 1, 50, b);
    REQUIRE(sa.count() == sb.count());
    for (int i = 0; i < sa.count(); ++i) CHECK(sa.samples[i] == sb.samples[i]);
  }
}
