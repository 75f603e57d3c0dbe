#include <doctest.h>

#include "arrayctl/controllability.hpp"
#include "arrayctl/errors.hpp"
#include "arrayctl/oracle.hpp"
#include "arrayctl_cli/corpus.hpp"
#include "random_corpus.hpp"

using namespace arrayctl;

namespace {

/// eigenvalues {0, +-j}; with `chain` the +-j part is a 2-chain.
ArraySpec zero_and_rotation(bool chain) {
  const int n = chain ? 5 : 3;
  Matrix a = Matrix::Zero(n, n);
  a(1, 2) = 1.0;
  a(2, 1) = -1.0;
  if (chain) {
    a(3, 4) = 1.0;
    a(4, 3) = -1.0;
    a(1, 3) = 1.0;
    a(2, 4) = 1.0;
  }
  Matrix b = Matrix::Zero(3 * n, 2);
  for (int r = 0; r < n; ++r) {
    b(r, 0) = 1.0;
    b(n + r, 0) = -1.0;
    b(n + r, 1) = 1.0;
    b(2 * n + r, 1) = -1.0;
  }
  return ArraySpec::from_incidence("rot", a, 3, b);
}

}  // namespace

TEST_SUITE("controllability") {
  TEST_CASE("controllability matrix of the water tanks is B") {
    const auto spec = cli::watertanks();
    const GenGraph w = controllability_matrix(spec, build_big(spec));
    CHECK((w.real_matrix() - spec.B).norm() == 0.0);
  }

  TEST_CASE("double-integrator ring controllability matrix has full reduced rank") {
    const auto spec = cli::integrator_chain_ring();
    const GenGraph w = controllability_matrix(spec, build_big(spec));
    CHECK(numerical_rank(w.real_matrix(), 1e-9) == 4);
  }

  TEST_CASE("water tanks") {
    const auto spec = cli::watertanks();
    CHECK(is_controllable(spec));
    CHECK_FALSE(is_positively_controllable(spec));
    CHECK(is_pairwise_controllable(spec, {1, 3}));
    const auto pp = is_positive_pairwise_controllable(spec, {1, 2});
    CHECK_FALSE(pp.value);
    CHECK_FALSE(pp.conditional);
  }

  TEST_CASE("water-tank ring") {
    const auto spec = cli::watertanks_ring();
    CHECK(is_controllable(spec));
    CHECK(is_positively_controllable(spec));
    for (const VertexPair pair : {VertexPair{1, 2}, VertexPair{2, 3}, VertexPair{3, 1}}) {
      const auto pp = is_positive_pairwise_controllable(spec, pair);
      CHECK(pp.value);
      CHECK_FALSE(pp.conditional);
    }
  }

  TEST_CASE("zero input matrix") {
    const auto spec = ArraySpec::from_incidence("zero", Matrix::Zero(1, 1), 2, Matrix::Zero(2, 1));
    CHECK_FALSE(is_controllable(spec));
  }

  TEST_CASE("oscillator arrays") {
    const ArrayAnalyzer a(cli::oscillators('a'));
    const ArrayAnalyzer b(cli::oscillators('b'));
    REQUIRE(a.v_graphs().size() == 10);
    for (const auto& g : a.v_graphs()) {
      CHECK(g.q() == 3);
      CHECK(detect_scalar_edges(g).has_value());
    }
    CHECK(a.controllability().value);
    CHECK(a.positive_controllability().value);
    const Decision db = b.controllability();
    CHECK_FALSE(db.value);
    for (const auto& row : db.per_kappa) {
      const bool half = std::abs(std::abs(row.mu.imag()) - std::sqrt(0.5)) < 1e-9;
      CHECK(*row.connected == !half);
    }
  }

  TEST_CASE("w-graphs reduce to v-graph spans for simple eigenvalues") {
    const ArrayAnalyzer a(cli::oscillators('a'));
    for (size_t i = 0; i < a.v_graphs().size(); ++i) {
      const CMatrix v = a.v_graphs()[i].matrix();
      const CMatrix w = a.w_graphs()[i].matrix();
      CHECK(numerical_rank(v, 1e-9) == numerical_rank(w, 1e-9));
      CMatrix joined(v.rows(), v.cols() + w.cols());
      joined << v, w;
      CHECK(numerical_rank(joined, 1e-9) == numerical_rank(v, 1e-9));
    }
  }

  TEST_CASE("counterexample: v-graph pair-connected, array not pair-controllable") {
    const ArrayAnalyzer an(cli::counterexample_23());
    CHECK(is_kl_connected(an.v_graphs()[0], {2, 3}));
    CHECK_FALSE(is_kl_connected(an.w_graphs()[0], {2, 3}));
    CHECK(an.w_graphs()[0].matrix().rows() == 12);
    CHECK_FALSE(an.pairwise({2, 3}).value);
    const AnalysisReport r = an.report({{2, 3}});
    REQUIRE(r.notes.size() == 1);
    CHECK(r.notes[0].find("(2,3)-connected") != std::string::npos);
    CHECK_FALSE(r.pairs[0].pairwise);
    CHECK_FALSE(r.pairs[0].positive_pairwise);
  }

  TEST_CASE("index recursion examples") {
    const auto tanks = ArrayAnalyzer(cli::watertanks()).q_graphs().trace;
    REQUIRE(tanks.size() == 1);
    CHECK(tanks[0].I == std::vector<int>{1, 2});
    CHECK(tanks[0].I_minus == std::vector<int>{1, 2});
    CHECK(*tanks[0].Q_dim == 0);

    const auto ring = ArrayAnalyzer(cli::watertanks_ring()).q_graphs().trace;
    CHECK(ring[0].I == std::vector<int>{1, 2, 3});
    CHECK(ring[0].I_minus.empty());
    CHECK(*ring[0].Q_dim == 2);

    const ArrayAnalyzer osc(cli::oscillators('a'));
    for (const auto& step : osc.q_graphs().trace) {
      CHECK(step.I == std::vector<int>{1, 2, 3});
      CHECK(step.I_minus.empty());
      CHECK_FALSE(step.Q_dim.has_value());
    }
  }

  TEST_CASE("assumption 1") {
    CHECK(check_assumption_eigen(compute_spectrum(cli::oscillators('a').A)).holds);
    CHECK(ArrayAnalyzer(zero_and_rotation(false)).assumption_eigen().holds);
    // A defective +-j splits by about sqrt(machine epsilon), so the clustering radius is widened.
    Tolerances wide;
    wide.eig = 1e-6;
    const Assumption1 v = ArrayAnalyzer(zero_and_rotation(true), wide).assumption_eigen();
    CHECK_FALSE(v.holds);
    REQUIRE(v.violated_at);
    CHECK(*v.violated_at == 2);
  }

  TEST_CASE("assumption 2 structural check") {
    CHECK(check_assumption_closed_structural(cli::watertanks()));
    CHECK(check_assumption_closed_structural(cli::watertanks_ring()));
    CHECK(check_assumption_closed_structural(cli::integrator_chain_ring()));
    CHECK(check_assumption_closed_structural(cli::integrator_chain_ring(4)));
    CHECK_FALSE(check_assumption_closed_structural(cli::oscillators('a')));
    CHECK_FALSE(check_assumption_closed_structural(cli::counterexample_23()));

    // Relabelled chain: states visited in the order 2 -> 3 -> 1, input on state 1.
    Matrix a = Matrix::Zero(3, 3);
    a(1, 2) = 1.0;
    a(2, 0) = 1.0;
    Matrix b = Matrix::Zero(6, 1);
    b(0, 0) = 1.0;
    b(3, 0) = -1.0;
    CHECK(check_assumption_closed_structural(ArraySpec::from_incidence("perm", a, 2, b)));
    b(1, 0) = 0.5;
    CHECK_FALSE(check_assumption_closed_structural(ArraySpec::from_incidence("perm", a, 2, b)));
  }

  TEST_CASE("positive pairwise is conditional without structural closedness") {
    const auto pp = is_positive_pairwise_controllable(cli::oscillators('a'), {1, 2});
    CHECK(pp.value);
    CHECK(pp.conditional);
    const AnalysisReport r = ArrayAnalyzer(cli::oscillators('a')).report({{1, 2}});
    CHECK_FALSE(r.caveats.empty());
  }

  TEST_CASE("bad pairs are rejected") {
    const ArrayAnalyzer an(cli::watertanks());
    CHECK_THROWS_AS(an.pairwise({1, 1}), Error);
    CHECK_THROWS_AS(an.pairwise({0, 2}), Error);
    CHECK_THROWS_AS(an.report({{1, 4}}), Error);
  }

  TEST_CASE("strong flags only for real eigenvalues") {
    const AnalysisReport r = ArrayAnalyzer(zero_and_rotation(false)).report({{1, 2}});
    for (const auto& row : r.rows) {
      const bool real = std::abs(row.mu.imag()) == 0.0;
      if (!real) {
        CHECK_FALSE(row.strongly_connected.has_value());
        for (const auto& f : row.pairs) CHECK_FALSE(f.strongly_kl_connected.has_value());
      }
    }
  }

  TEST_CASE("structural properties on the random corpus") {
    for (const auto& spec : testing::random_array_corpus(80, 99)) {
      const ArrayAnalyzer an(spec);
      const bool c = an.controllability().value;
      const bool pc = an.positive_controllability().value;
      CHECK((!pc || c));
      const auto& trace = an.q_graphs().trace;
      for (size_t i = 1; i < trace.size(); ++i) {
        for (const int s : trace[i].I) {
          CHECK(std::find(trace[i - 1].I.begin(), trace[i - 1].I.end(), s) != trace[i - 1].I.end());
        }
      }
      for (int k = 1; k <= spec.q; ++k) {
        for (int l = k + 1; l <= spec.q; ++l) {
          const bool pw = an.pairwise({k, l}).value;
          if (c) CHECK(pw);
          if (an.positive_pairwise({k, l}).value) CHECK(pw);
        }
      }
    }
  }
}
