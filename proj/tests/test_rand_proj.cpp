#include <cmath>

#include "doctest.h"
#include "scenet/errors.hpp"
#include "scenet/oracle.hpp"
#include "scenet/rand_proj.hpp"

using namespace scenet;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

}  // namespace

TEST_CASE("mix") {
  const Eigen::VectorXd c = vec({1, 0});
  SUBCASE("single node gradient step") {
    const Eigen::MatrixXd A = Eigen::MatrixXd::Ones(1, 1);
    std::vector<Eigen::VectorXd> th = {vec({2, 3})};
    CHECK(mix(0, th, A, 0.5, c) == vec({1.5, 3}));
  }
  SUBCASE("consensus fixed point at zeta 0") {
    const Eigen::MatrixXd A = build_weights(ring_graph(3, true));
    std::vector<Eigen::VectorXd> th(3, vec({1, -2}));
    for (int j = 0; j < 3; ++j) CHECK(mix(j, th, A, 0.0, c) == vec({1, -2}));
  }
  SUBCASE("convex hull property") {
    const Eigen::MatrixXd A = build_weights(complete_graph(4));
    Rng rng = make_stream(19, 0);
    std::normal_distribution<double> gauss;
    std::vector<Eigen::VectorXd> th(4);
    for (auto& t : th) t = vec({gauss(rng), gauss(rng)});
    double lo = 1e300, hi = -1e300;
    for (const auto& t : th) {
      lo = std::min(lo, t(0));
      hi = std::max(hi, t(0));
    }
    const double zeta = 0.3;
    for (int j = 0; j < 4; ++j) {
      const Eigen::VectorXd v = mix(j, th, A, zeta, c);
      CHECK(v(0) >= lo - zeta * c(0) - 1e-12);
      CHECK(v(0) <= hi - zeta * c(0) + 1e-12);
    }
  }
}

TEST_CASE("polyak step") {
  const HalfspaceFamily fam(2);
  const DomainSet all = DomainSet::whole_space(2);
  const Eigen::VectorXd fallback = vec({1, 0});
  ScenarioSet set{0, {vec({1, 0, 1})}};  // theta_1 <= 1
  Rng rng = make_stream(20, 0);

  SUBCASE("beta 1 lands on the boundary") {
    const Eigen::VectorXd out = polyak_step(vec({2, 0}), fam, set, 1.0, all, rng, fallback);
    CHECK((out - vec({1, 0})).norm() < 1e-12);
  }
  SUBCASE("beta 0.5 takes half the step") {
    const Eigen::VectorXd out = polyak_step(vec({2, 0}), fam, set, 0.5, all, rng, fallback);
    CHECK((out - vec({1.5, 0})).norm() < 1e-12);
  }
  SUBCASE("feasible draw projects only") {
    const DomainSet ball = DomainSet::ball(Eigen::VectorXd::Zero(2), 0.25);
    const Eigen::VectorXd out =
        polyak_step(vec({0.5, 0}), fam, set, 1.0, ball, rng, fallback);
    CHECK((out - vec({0.25, 0})).norm() < 1e-12);
  }
}

TEST_CASE("Fejer descent over random triples") {
  // Constraint theta_1 <= q_b with a constructed feasible point y.
  const HalfspaceFamily fam(2, 0.5, 1.5);
  const DomainSet all = DomainSet::whole_space(2);
  Rng rng = make_stream(22, 0);
  std::normal_distribution<double> gauss(0.0, 2.0);
  const double betas[] = {0.5, 1.0, 1.5};
  int checked = 0;
  for (int t = 0; t < 4000; ++t) {
    const Eigen::VectorXd q = fam.draw(rng);
    const Eigen::VectorXd v = vec({gauss(rng), gauss(rng)});
    const double beta = betas[t % 3];
    const double phi = std::max(0.0, fam.eval(v, q));
    // y on the feasible side: q_a' y = q_b - |slack|.
    const Eigen::VectorXd y = (q(2) - 0.7) * q.head(2);
    REQUIRE(fam.eval(y, q) <= 0.0);
    ScenarioSet single{0, {q}};
    Rng step_rng = make_stream(22, 1000 + t);
    const Eigen::VectorXd next =
        polyak_step(v, fam, single, beta, all, step_rng, vec({1, 0}));
    const Eigen::VectorXd d = fam.subgrad(v, q);
    const double decrease = beta * (2.0 - beta) * phi * phi / d.squaredNorm();
    CHECK((next - y).squaredNorm() <= (v - y).squaredNorm() - decrease + 1e-9);
    if (phi > 0) {
      CHECK((next - y).norm() <= (v - y).norm() + 1e-12);
      ++checked;
    }
  }
  CHECK(checked > 500);  // the property must actually bite on many triples
}

TEST_CASE("rp_round") {
  const HalfspaceFamily fam(2);
  const Eigen::VectorXd c = vec({1, 1}).normalized();
  const DomainSet dom = DomainSet::box_centered(2, 5.0);

  SUBCASE("fixed point at a common feasible optimum with zeta 0") {
    const Eigen::MatrixXd A = build_weights(ring_graph(3, true));
    std::vector<ScenarioSet> sets(3);
    for (int j = 0; j < 3; ++j) sets[j] = ScenarioSet{j, {vec({1, 0, 1})}};
    std::vector<Eigen::VectorXd> th(3, vec({0.5, 0.5}));
    std::vector<Rng> streams;
    for (int j = 0; j < 3; ++j) streams.push_back(make_stream(23, j));
    // Vanishing stepsize isolates the fixed-point property of mix + step.
    RPConfig cfg{1.0, StepSchedule{1e-18, 1.0}, vec({1, 0})};
    rp_round(th, A, c, dom, fam, sets, cfg, 0, streams);
    for (const auto& t : th) CHECK((t - vec({0.5, 0.5})).norm() < 1e-12);
  }

  SUBCASE("post-round domain membership every node every round") {
    const Eigen::MatrixXd A = build_weights(ring_graph(4, true));
    Rng rng = make_stream(24, 0);
    std::vector<ScenarioSet> sets;
    for (int j = 0; j < 4; ++j) sets.push_back(draw_scenarios(fam, j, 4, rng));
    std::vector<Eigen::VectorXd> th(4, Eigen::VectorXd::Zero(2));
    std::vector<Rng> streams;
    for (int j = 0; j < 4; ++j) streams.push_back(make_stream(24, 100 + j));
    RPConfig cfg{1.5, StepSchedule{1.0, 0.6}, vec({1, 0})};
    for (long k = 0; k < 500; ++k) {
      rp_round(th, A, c, dom, fam, sets, cfg, k, streams);
      for (const auto& t : th) CHECK(dom.contains(t, 1e-12));
    }
  }

  SUBCASE("single node single halfspace converges to the constrained optimum") {
    // minimize -theta s.t. theta <= 1 on [-5,5]: optimum theta = 1.
    const HalfspaceFamily fam1(1);
    const Eigen::MatrixXd A = Eigen::MatrixXd::Ones(1, 1);
    const DomainSet dom1 = DomainSet::box_centered(1, 5.0);
    std::vector<ScenarioSet> sets = {ScenarioSet{0, {vec({1, 1})}}};
    std::vector<Eigen::VectorXd> th = {vec({0})};
    std::vector<Rng> streams = {make_stream(25, 0)};
    RPConfig cfg{1.0, StepSchedule{1.0, 0.6}, vec({1})};
    const Eigen::VectorXd c1 = vec({-1});
    for (long k = 0; k < 200000; ++k)
      rp_round(th, A, c1, dom1, fam1, sets, cfg, k, streams);
    CHECK(th[0](0) == doctest::Approx(1.0).epsilon(1e-3));
  }

  SUBCASE("3-node directed cycle matches the vertex oracle") {
    const Topology topo = ring_graph(3, true);
    const Eigen::MatrixXd A = build_weights(topo);
    Rng rng = make_stream(26, 0);
    std::vector<ScenarioSet> sets;
    std::vector<Halfspace> cons;
    for (int j = 0; j < 3; ++j) {
      sets.push_back(draw_scenarios(fam, j, 6, rng));
      for (const auto& q : sets.back().samples) cons.push_back({q.head(2), q(2)});
    }
    const OracleSolution lp = solve_lp_by_vertices(-c, cons, dom);
    REQUIRE(lp.feasible);
    std::vector<Eigen::VectorXd> th(3, Eigen::VectorXd::Zero(2));
    std::vector<Rng> streams;
    for (int j = 0; j < 3; ++j) streams.push_back(make_stream(26, 50 + j));
    RPConfig cfg{1.0, StepSchedule{10.0, 1.0}, vec({1, 0})};
    for (long k = 0; k < 60000; ++k)
      rp_round(th, A, -c, dom, fam, sets, cfg, k, streams);
    const PerronVector p = left_eigenvector(A);
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(2);
    for (int j = 0; j < 3; ++j) mean += p.pi(j) * th[j];
    for (int j = 0; j < 3; ++j) CHECK((th[j] - mean).norm() < 1e-3);
    CHECK(std::abs((-c).dot(mean) - lp.value) <
          1e-2 * std::max(1.0, std::abs(lp.value)));
  }
}

TEST_CASE("rp config validation") {
  CHECK_THROWS_AS((RPConfig{0.0, StepSchedule{1.0, 1.0}, vec({1})}.validate()),
                  ParameterError);
  CHECK_THROWS_AS((RPConfig{2.0, StepSchedule{1.0, 1.0}, vec({1})}.validate()),
                  ParameterError);
  CHECK_THROWS_AS((RPConfig{1.0, StepSchedule{1.0, 1.0}, vec({0})}.validate()),
                  ParameterError);
  CHECK_NOTHROW((RPConfig{1.0, StepSchedule{1.0, 1.0}, vec({1})}.validate()));
}
