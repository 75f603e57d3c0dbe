#include <benchmark/benchmark.h>

#include <cmath>

#include "arrayctl/controllability.hpp"
#include "arrayctl/genographe.hpp"
#include "arrayctl/oracle.hpp"
#include "arrayctl/spectral.hpp"

namespace {

using namespace arrayctl;

// Inverse stiffness of five masses on a fixed-fixed chain of unit springs.
Matrix compliance() {
  Matrix cinv(5, 5);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      cinv(i, j) = std::min(i + 1, j + 1) * (6.0 - std::max(i + 1, j + 1)) / 6.0;
    }
  }
  return cinv;
}

Matrix oscillator_a() {
  Matrix a = Matrix::Zero(10, 10);
  a.topRightCorner(5, 5) = -compliance();
  a.bottomLeftCorner(5, 5) = Matrix::Identity(5, 5);
  return a;
}

ArraySpec oscillator_array(int node) {
  const Matrix a = oscillator_a();
  Matrix b = Matrix::Zero(10, 1);
  b.topRows(5) = compliance().col(node);
  Matrix tri(3, 3);
  tri << 1, 0, -1, -1, 1, 0, 0, -1, 1;
  return ArraySpec::from_incidence("bench", a, 3, kron(tri, b));
}

void BM_Spectrum(benchmark::State& state) {
  const Matrix a = oscillator_a();
  for (auto _ : state) benchmark::DoNotOptimize(compute_spectrum(a));
}
BENCHMARK(BM_Spectrum);

void BM_ConeMember(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  Matrix m = Matrix::Zero(q, 2 * q);
  for (int i = 0; i < q; ++i) {
    m(i, i) = 1.0;
    m((i + 1) % q, i) = -1.0;
    m(i, q + i) = -1.0;
    m((i + 2) % q, q + i) = 1.0;
  }
  const GenGraph g = GenGraph::from_real(q, 1, m);
  Vector target = Vector::Zero(q);
  target(0) = 1.0;
  target(q - 1) = -1.0;
  for (auto _ : state) benchmark::DoNotOptimize(cone_member(g, target));
}
BENCHMARK(BM_ConeMember)->Arg(4)->Arg(16)->Arg(64);

void BM_FullReport(benchmark::State& state) {
  const ArraySpec spec = oscillator_array(0);
  for (auto _ : state) {
    const ArrayAnalyzer an(spec);
    benchmark::DoNotOptimize(an.report({{1, 2}}));
  }
}
BENCHMARK(BM_FullReport);

void BM_Falsifier(benchmark::State& state) {
  Matrix tri(3, 3);
  tri << 1, 0, -1, -1, 1, 0, 0, -1, 1;
  const ArraySpec ring = ArraySpec::from_incidence("ring", Matrix::Zero(1, 1), 3, tri);
  FalsifierOptions options;
  options.attempts = 20;
  for (auto _ : state) benchmark::DoNotOptimize(polar_falsifier(ring, {1, 2}, options));
}
BENCHMARK(BM_Falsifier);

}  // namespace

BENCHMARK_MAIN();
