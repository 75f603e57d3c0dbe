#include <doctest.h>

#include "arrayctl/errors.hpp"
#include "arrayctl/linalg.hpp"
#include "arrayctl/nnls.hpp"

using namespace arrayctl;

TEST_SUITE("linalg") {
  TEST_CASE("kron of identity blocks") {
    const Matrix k = kron(Matrix(Matrix::Identity(2, 2)), Matrix(Matrix::Constant(2, 3, 1.0)));
    CHECK(k.rows() == 4);
    CHECK(k.cols() == 6);
    CHECK(k(0, 0) == 1.0);
    CHECK(k(0, 3) == 0.0);
    CHECK(k(3, 5) == 1.0);
  }

  TEST_CASE("numerical rank and null space") {
    Matrix m(3, 3);
    m << 1, 2, 3, 2, 4, 6, 1, 0, 1;
    CHECK(numerical_rank(m, 1e-9) == 2);
    const Matrix z = null_space(m, 1e-9);
    REQUIRE(z.cols() == 1);
    CHECK((m * z).norm() < 1e-12);
    CHECK(numerical_rank(Matrix(Matrix::Zero(2, 2)), 1e-9) == 0);
    CHECK(null_space(Matrix(Matrix::Zero(2, 2)), 1e-9).cols() == 2);
  }

  TEST_CASE("orthonormal range") {
    Matrix m(3, 2);
    m << 1, 2, 1, 2, 0, 0;
    const Matrix r = orthonormal_range(m, 1e-9);
    REQUIRE(r.cols() == 1);
    CHECK(std::abs(r.col(0).norm() - 1.0) < 1e-12);
  }

  TEST_CASE("matrix exponential of a nilpotent block") {
    Matrix a(2, 2);
    a << 0, 1, 0, 0;
    const Matrix e = expm(a * 2.0);
    CHECK(e(0, 0) == doctest::Approx(1.0));
    CHECK(e(0, 1) == doctest::Approx(2.0));
    CHECK(std::abs(e(1, 0)) < 1e-14);
    const Matrix integral = expm_integral(a, 2.0);
    CHECK(integral(0, 0) == doctest::Approx(2.0));
    CHECK(integral(0, 1) == doctest::Approx(2.0));
    CHECK(integral(1, 1) == doctest::Approx(2.0));
  }

  TEST_CASE("expm of a rotation") {
    Matrix a(2, 2);
    a << 0, -1, 1, 0;
    const Matrix e = expm(a * std::acos(-1.0));
    CHECK(e(0, 0) == doctest::Approx(-1.0));
    CHECK(std::abs(e(0, 1)) < 1e-12);
  }

  TEST_CASE("pair frame") {
    const Matrix f = pair_frame(3, 2, {1, 3});
    CHECK(f.rows() == 6);
    CHECK(f.cols() == 2);
    CHECK(f(0, 0) == 1.0);
    CHECK(f(4, 0) == -1.0);
    CHECK(f(5, 1) == -1.0);
    CHECK(f.colwise().sum().norm() == 0.0);
  }
}

TEST_SUITE("nnls") {
  TEST_CASE("projection onto the nonnegative orthant") {
    const NnlsResult r = nnls(Matrix::Identity(2, 2), Vector::Unit(2, 0) - Vector::Unit(2, 1));
    CHECK(r.x(0) == doctest::Approx(1.0));
    CHECK(r.x(1) == 0.0);
    CHECK(r.residual == doctest::Approx(1.0));
  }

  TEST_CASE("exact conic combination") {
    Matrix m(2, 3);
    m << 1, 0, 1, 0, 1, 1;
    Vector v(2);
    v << 2, 3;
    const NnlsResult r = nnls(m, v);
    CHECK(r.residual < 1e-12);
    CHECK((r.x.array() >= 0.0).all());
  }

  TEST_CASE("dependent and duplicated columns") {
    Matrix m(2, 4);
    m << 1, 1, 2, -1, 0, 0, 0, 0;
    Vector v(2);
    v << -3, 0;
    const NnlsResult r = nnls(m, v);
    CHECK(r.residual < 1e-12);
    CHECK((m * r.x - v).norm() < 1e-12);
  }

  TEST_CASE("empty matrix") {
    const NnlsResult r = nnls(Matrix(2, 0), Vector::Ones(2));
    CHECK(r.residual == doctest::Approx(std::sqrt(2.0)));
  }

  TEST_CASE("iteration cap") {
    Matrix m(2, 2);
    m << 1, 0, 0, 1;
    CHECK_THROWS_AS(nnls(m, Vector::Ones(2), 1), Error);
  }
}
