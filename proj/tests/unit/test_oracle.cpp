#include <doctest.h>

#include "arrayctl/controllability.hpp"
#include "arrayctl/errors.hpp"
#include "arrayctl/oracle.hpp"
#include "arrayctl_cli/corpus.hpp"

using namespace arrayctl;

TEST_SUITE("oracle") {
  TEST_CASE("Kalman reduced rank") {
    CHECK(kalman_reduced(cli::watertanks()));
    CHECK_FALSE(kalman_reduced(cli::oscillators('b')));
    CHECK(kalman_reduced(cli::oscillators('a')));
    CHECK_FALSE(kalman_reduced(
        ArraySpec::from_incidence("zero", Matrix::Zero(1, 1), 3, Matrix::Zero(3, 2))));
  }

  TEST_CASE("Brammer cone test") {
    CHECK_FALSE(brammer_positive(cli::watertanks()));
    CHECK(brammer_positive(cli::watertanks_ring()));
    CHECK(brammer_positive(cli::oscillators('a')));
  }

  TEST_CASE("direct pairwise range test") {
    const auto spec = cli::counterexample_23();
    CHECK_FALSE(pairwise_range(spec, {2, 3}));
    const ArrayAnalyzer an(spec);
    CHECK(pairwise_range(spec, {1, 2}) == an.pairwise({1, 2}).value);
    CHECK(pairwise_range(cli::watertanks(), {3, 1}));
  }

  TEST_CASE("path oracle") {
    const Matrix tanks = cli::watertanks().B;
    CHECK_FALSE(path_oracle(tanks, PathQuery::strong_kl, {1, 3}));
    CHECK(path_oracle(tanks, PathQuery::kl, {1, 3}));
    CHECK(path_oracle(tanks, PathQuery::connected));
    CHECK_FALSE(path_oracle(tanks, PathQuery::strong));
    const Matrix ring = cli::watertanks_ring().B;
    CHECK(path_oracle(ring, PathQuery::strong));
    CHECK(path_oracle(ring, PathQuery::strong_kl, {3, 2}));
    const Matrix empty(2, 0);
    CHECK_FALSE(path_oracle(empty, PathQuery::connected));
    CHECK_FALSE(path_oracle(empty, PathQuery::strong));
    CHECK_FALSE(path_oracle(empty, PathQuery::kl, {1, 2}));
    CHECK_FALSE(path_oracle(empty, PathQuery::strong_kl, {1, 2}));
    Matrix weighted(2, 1);
    weighted << 2, -2;
    CHECK_THROWS_AS(path_oracle(weighted, PathQuery::connected), Error);
  }

  TEST_CASE("default grid") {
    const auto g = default_grid(Matrix::Zero(1, 1));
    REQUIRE(g.size() == 64);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 4.0);
    Matrix fast = Matrix::Zero(1, 1);
    fast(0, 0) = -8.0;
    CHECK(default_grid(fast).back() == doctest::Approx(0.5));
  }

  TEST_CASE("falsifier on the water tanks finds a witness") {
    const auto spec = cli::watertanks();
    const auto w = polar_falsifier(spec, {1, 2}, {.attempts = 20, .seed = 3});
    REQUIRE(w);
    CHECK((spec.B.transpose() * *w).maxCoeff() <= 1e-9);
    CHECK(std::abs((*w)(0) - (*w)(1)) >= 0.1 * w->norm());
  }

  TEST_CASE("falsifier on the ring finds nothing") {
    CHECK_FALSE(polar_falsifier(cli::watertanks_ring(), {1, 2}, {.attempts = 100, .seed = 7}));
  }

  TEST_CASE("falsifier on a trivial array") {
    const auto spec = ArraySpec::from_incidence("idle", Matrix::Zero(1, 1), 2, Matrix::Zero(2, 1));
    CHECK(polar_falsifier(spec, {1, 2}, {.attempts = 5}).has_value());
  }

  TEST_CASE("falsifier is reproducible") {
    const auto a = polar_falsifier(cli::watertanks(), {2, 3}, {.attempts = 5, .seed = 42});
    const auto b = polar_falsifier(cli::watertanks(), {2, 3}, {.attempts = 5, .seed = 42});
    REQUIRE(a);
    REQUIRE(b);
    CHECK((*a - *b).norm() == 0.0);
  }

  TEST_CASE("reach simulator") {
    const auto ring = reach_simulator(make_reach_problem(cli::watertanks_ring(), {1, 2}, 2.0, 20));
    REQUIRE(ring.size() == 2);
    for (const auto& r : ring) CHECK(r.residual <= 1e-6);

    const auto chain =
        reach_simulator(make_reach_problem(cli::integrator_chain_ring(), {1, 2}, 5.0, 60));
    REQUIRE(chain.size() == 4);
    for (const auto& r : chain) CHECK(r.residual <= 1e-6);

    for (const int steps : {2, 10, 50, 100}) {
      ReachProblem prob = make_reach_problem(cli::watertanks(), {1, 2}, 2.0, steps);
      Vector target = Vector::Zero(3);
      target << -1, 1, 0;
      prob.targets = {target};
      CHECK(reach_simulator(prob)[0].residual >= 0.1);
    }
    CHECK_THROWS_AS(reach_simulator(make_reach_problem(cli::watertanks(), {1, 2}, 2.0, 1)), Error);
  }

  TEST_CASE("oracle suite agrees on every example") {
    for (const auto& name : cli::example_names()) {
      const AnalysisReport r = ArrayAnalyzer(*cli::example(name)).report({{1, 2}, {2, 3}});
      OracleOptions options;
      options.attempts = 10;
      if (name == "integrator-chain-ring") {
        options.horizon = 5.0;
        options.steps = 60;
      }
      for (const auto& v : run_oracles(r, options)) {
        INFO(name << " " << v.name << " " << v.detail);
        CHECK(v.agrees.value_or(true));
      }
    }
  }
}
