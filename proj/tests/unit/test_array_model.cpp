#include <doctest.h>

#include "arrayctl/array_model.hpp"
#include "arrayctl/errors.hpp"
#include "arrayctl_cli/corpus.hpp"

using namespace arrayctl;

TEST_SUITE("array_model") {
  TEST_CASE("water tanks validate") {
    const auto r = validate_array(cli::watertanks());
    CHECK(r.ok());
  }

  TEST_CASE("column without relative actuation is reported") {
    Matrix b(3, 1);
    b << 1, 0, 0;
    const auto spec = ArraySpec::from_incidence("bad", Matrix::Zero(1, 1), 3, b);
    const auto r = validate_array(spec);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].kind == ViolationKind::column_sum);
    CHECK(r.violations[0].sigma == 1);
    CHECK(r.violations[0].magnitude == doctest::Approx(1.0));
    CHECK(r.describe().find("sigma=1") != std::string::npos);
  }

  TEST_CASE("counterexample validates") { CHECK(validate_array(cli::counterexample_23()).ok()); }

  TEST_CASE("dimension and finiteness violations") {
    auto spec = cli::watertanks();
    spec.B(0, 0) = std::nan("");
    CHECK_FALSE(validate_array(spec).ok());
    auto wrong = cli::watertanks();
    wrong.q = 4;
    CHECK_FALSE(validate_array(wrong).ok());
  }

  TEST_CASE("ragged blocks are rejected") {
    std::vector<std::vector<Vector>> blocks{{Vector::Ones(1)}, {Vector::Ones(1), Vector::Ones(1)}};
    CHECK_THROWS_AS(ArraySpec::from_blocks("ragged", Matrix::Zero(1, 1), blocks), Error);
  }

  TEST_CASE("disagreement basis") {
    for (int q = 2; q <= 7; ++q) {
      const Matrix d = disagreement_basis(q);
      CHECK(d.rows() == q);
      CHECK(d.cols() == q - 1);
      CHECK((d.transpose() * d - Matrix::Identity(q - 1, q - 1)).norm() < 1e-12);
      CHECK((Vector::Ones(q).transpose() * d).norm() < 1e-12);
      CHECK((disagreement_basis(q) - d).norm() == 0.0);
    }
    CHECK_THROWS_AS(disagreement_basis(1), Error);
  }

  TEST_CASE("big operator identities") {
    for (const auto& name : cli::example_names()) {
      const auto spec = *cli::example(name);
      const BigOperators big = build_big(spec);
      const int q = spec.q;
      const int n = spec.n;
      const Matrix dds = big.D * big.D.transpose() + big.S * big.S.transpose();
      CHECK((dds - Matrix::Identity(q, q)).norm() < 1e-12);
      const Matrix sync = kron(Matrix(big.S.transpose()), Matrix::Identity(n, n)) * big.Bbig;
      CHECK(sync.norm() < 1e-12);
      CHECK(big.Abig.rows() == q * n);
      CHECK(big.Ared.rows() == (q - 1) * n);
      CHECK(big.Bred.rows() == (q - 1) * n);
    }
  }

  TEST_CASE("reduced input for two systems") {
    Matrix b(2, 1);
    b << 1, -1;
    const auto big = build_big(ArraySpec::from_incidence("pair", Matrix::Zero(1, 1), 2, b));
    CHECK(std::abs(big.Bred(0, 0)) == doctest::Approx(std::sqrt(2.0)));
  }

  TEST_CASE("invalid spec cannot be assembled") {
    Matrix b(3, 1);
    b << 1, 0, 0;
    CHECK_THROWS_AS(build_big(ArraySpec::from_incidence("bad", Matrix::Zero(1, 1), 3, b)), Error);
  }
}
