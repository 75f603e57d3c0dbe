#include "arrayctl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "arrayctl/errors.hpp"
#include "arrayctl/nnls.hpp"

namespace arrayctl {

namespace {

// ---- dense phase-one simplex, Bland's rule ---------------------------------------------

/// Decides whether m x = b has a solution with x >= 0.
bool simplex_feasible(const Matrix& m, const Vector& b, double tol) {
  const Index rows = m.rows();
  const Index cols = m.cols();
  if (rows == 0) return true;

  Matrix scaled = m;
  for (Index j = 0; j < cols; ++j) {
    const double nrm = scaled.col(j).norm();
    if (nrm > 0.0) scaled.col(j) /= nrm;
  }

  const Index width = cols + rows + 1;
  Matrix t = Matrix::Zero(rows, width);
  t.leftCols(cols) = scaled;
  t.block(0, cols, rows, rows).setIdentity();
  t.col(width - 1) = b;
  for (Index i = 0; i < rows; ++i) {
    if (t(i, width - 1) < 0.0) t.row(i) *= -1.0;
    t(i, cols + i) = 1.0;
  }
  std::vector<Index> basis(static_cast<size_t>(rows));
  for (Index i = 0; i < rows; ++i) basis[static_cast<size_t>(i)] = cols + i;

  const double pivot_eps = 1e-12;
  const int cap = 100 * static_cast<int>(width);
  for (int iter = 0; iter < cap; ++iter) {
    // Artificial columns never re-enter; a structural column improves the phase-one
    // objective when its entries in rows with artificial basics sum to a positive value.
    Index entering = -1;
    for (Index j = 0; j < cols; ++j) {
      if (std::find(basis.begin(), basis.end(), j) != basis.end()) continue;
      double gain = 0.0;
      for (Index i = 0; i < rows; ++i) {
        if (basis[static_cast<size_t>(i)] >= cols) gain += t(i, j);
      }
      if (gain > pivot_eps) {
        entering = j;
        break;
      }
    }
    if (entering < 0) break;

    Index leaving = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < rows; ++i) {
      const double a = t(i, entering);
      if (a <= pivot_eps) continue;
      const double ratio = t(i, width - 1) / a;
      if (ratio < best_ratio - 1e-15 ||
          (std::abs(ratio - best_ratio) <= 1e-15 &&
           basis[static_cast<size_t>(i)] < basis[static_cast<size_t>(leaving)])) {
        best_ratio = ratio;
        leaving = i;
      }
    }
    if (leaving < 0) break;  // unbounded direction cannot lower a nonnegative objective

    t.row(leaving) /= t(leaving, entering);
    for (Index i = 0; i < rows; ++i) {
      if (i != leaving && t(i, entering) != 0.0) t.row(i) -= t(i, entering) * t.row(leaving);
    }
    basis[static_cast<size_t>(leaving)] = entering;
  }

  double infeasibility = 0.0;
  for (Index i = 0; i < rows; ++i) {
    if (basis[static_cast<size_t>(i)] >= cols) infeasibility += std::abs(t(i, width - 1));
  }
  return infeasibility <= tol * (1.0 + b.norm());
}

// ---- helpers ---------------------------------------------------------------------------

Matrix stacked_controllability(const ArraySpec& spec, const Matrix& a, const Matrix& b) {
  Matrix w(b.rows(), b.cols() * spec.n);
  Matrix term = b;
  for (int k = 0; k < spec.n; ++k) {
    w.middleCols(k * b.cols(), b.cols()) = term;
    term = a * term;
  }
  return w;
}

Index rank_at(const Matrix& m, double threshold) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return static_cast<Index>((svd.singularValues().array() > threshold).count());
}

std::vector<double> real_eigenvalues(const Matrix& a, double tol_eig) {
  std::vector<double> out;
  if (a.rows() == 0) return out;
  Eigen::EigenSolver<Matrix> solver(a, false);
  const CVector lambda = solver.eigenvalues();
  const double tol = tol_eig * (1.0 + lambda.cwiseAbs().maxCoeff());
  std::vector<double> reals;
  for (Index i = 0; i < lambda.size(); ++i) {
    if (std::abs(lambda(i).imag()) <= tol) reals.push_back(lambda(i).real());
  }
  std::sort(reals.begin(), reals.end());
  for (size_t i = 0; i < reals.size();) {
    size_t j = i;
    double sum = 0.0;
    while (j < reals.size() && reals[j] - reals[i] <= tol) sum += reals[j++];
    out.push_back(sum / static_cast<double>(j - i));
    i = j;
  }
  return out;
}

Matrix left_kernel(const Matrix& a, double mu, double tol_eig) {
  Matrix shifted = a.transpose();
  shifted.diagonal().array() -= mu;
  Eigen::FullPivLU<Matrix> lu(shifted);
  const double radius = a.rows() == 0 ? 0.0 : a.eigenvalues().cwiseAbs().maxCoeff();
  const double abs_tol = std::max(tol_eig * (1.0 + radius),
                                  a.rows() * std::numeric_limits<double>::epsilon() *
                                      std::max(shifted.norm(), 1.0));
  if (lu.maxPivot() > 0.0) lu.setThreshold(std::min(1.0, abs_tol / lu.maxPivot()));
  return lu.kernel();
}

bool unit_incidence(const Matrix& g) {
  for (Index c = 0; c < g.cols(); ++c) {
    int plus = 0;
    int minus = 0;
    for (Index r = 0; r < g.rows(); ++r) {
      const double v = g(r, c);
      if (v == 1.0) {
        ++plus;
      } else if (v == -1.0) {
        ++minus;
      } else if (v != 0.0) {
        return false;
      }
    }
    if (plus != 1 || minus != 1) return false;
  }
  return true;
}

std::vector<bool> reachable_from(int start, int q, const std::vector<std::pair<int, int>>& arcs,
                                 bool undirected) {
  std::vector<std::vector<int>> adj(static_cast<size_t>(q));
  for (const auto& [from, to] : arcs) {
    adj[static_cast<size_t>(from)].push_back(to);
    if (undirected) adj[static_cast<size_t>(to)].push_back(from);
  }
  std::vector<bool> seen(static_cast<size_t>(q), false);
  std::deque<int> queue{start};
  seen[static_cast<size_t>(start)] = true;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (const int w : adj[static_cast<size_t>(v)]) {
      if (!seen[static_cast<size_t>(w)]) {
        seen[static_cast<size_t>(w)] = true;
        queue.push_back(w);
      }
    }
  }
  return seen;
}

// ---- seeded randomness that does not depend on the standard library's distributions ----

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Gaussian {
 public:
  explicit Gaussian(std::uint64_t seed) : rng_(seed) {}

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 rng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// ---- Nelder-Mead -----------------------------------------------------------------------

Vector nelder_mead(const std::function<double(const Vector&)>& f, const Vector& x0, double step,
                   int max_evaluations, double target) {
  const Index d = x0.size();
  std::vector<Vector> simplex(static_cast<size_t>(d + 1), x0);
  std::vector<double> values(static_cast<size_t>(d + 1));
  for (Index i = 0; i < d; ++i) simplex[static_cast<size_t>(i + 1)](i) += step;
  int evaluations = 0;
  for (size_t i = 0; i < simplex.size(); ++i) {
    values[i] = f(simplex[i]);
    ++evaluations;
  }
  std::vector<size_t> order(simplex.size());

  while (evaluations < max_evaluations) {
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return values[a] < values[b]; });
    const size_t best = order.front();
    const size_t worst = order.back();
    const size_t second = order[order.size() - 2];
    if (values[best] <= target) break;
    double spread = 0.0;
    for (const auto& v : simplex) spread = std::max(spread, (v - simplex[best]).cwiseAbs().maxCoeff());
    if (values[worst] - values[best] <= 1e-15 * (1.0 + std::abs(values[best])) && spread < 1e-10) {
      break;
    }

    Vector centroid = Vector::Zero(d);
    for (size_t i = 0; i < simplex.size(); ++i) {
      if (i != worst) centroid += simplex[i];
    }
    centroid /= static_cast<double>(d);

    const Vector reflected = centroid + (centroid - simplex[worst]);
    const double fr = f(reflected);
    ++evaluations;
    if (fr < values[best]) {
      const Vector expanded = centroid + 2.0 * (centroid - simplex[worst]);
      const double fe = f(expanded);
      ++evaluations;
      if (fe < fr) {
        simplex[worst] = expanded;
        values[worst] = fe;
      } else {
        simplex[worst] = reflected;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = reflected;
      values[worst] = fr;
      continue;
    }
    const bool outside = fr < values[worst];
    const Vector contracted = outside ? Vector(centroid + 0.5 * (reflected - centroid))
                                      : Vector(centroid + 0.5 * (simplex[worst] - centroid));
    const double fc = f(contracted);
    ++evaluations;
    if (fc < std::min(fr, values[worst])) {
      simplex[worst] = contracted;
      values[worst] = fc;
      continue;
    }
    for (size_t i = 0; i < simplex.size(); ++i) {
      if (i == best) continue;
      simplex[i] = simplex[best] + 0.5 * (simplex[i] - simplex[best]);
      values[i] = f(simplex[i]);
      ++evaluations;
    }
  }
  const auto it = std::min_element(values.begin(), values.end());
  return simplex[static_cast<size_t>(it - values.begin())];
}

/// Rows B^T exp(A^T t) for every grid point, acting on stacked eta.
Matrix polar_rows(const ArraySpec& spec, const std::vector<double>& grid) {
  const Index qn = static_cast<Index>(spec.q) * spec.n;
  Matrix rows(static_cast<Index>(grid.size()) * spec.p, qn);
  const Matrix eye_q = Matrix::Identity(spec.q, spec.q);
  for (size_t i = 0; i < grid.size(); ++i) {
    const Matrix e = kron(eye_q, expm(spec.A.transpose() * grid[i]));
    rows.middleRows(static_cast<Index>(i) * spec.p, spec.p) = spec.B.transpose() * e;
  }
  return rows;
}

Vector pair_component(const Vector& eta, int n, VertexPair pair) {
  return eta.segment(static_cast<Index>(pair.k - 1) * n, n) -
         eta.segment(static_cast<Index>(pair.l - 1) * n, n);
}

double max_row_norm(const Matrix& m) {
  return m.rows() == 0 ? 0.0 : m.rowwise().norm().maxCoeff();
}

}  // namespace

bool kalman_reduced(const ArraySpec& spec, const Tolerances& tol) {
  const BigOperators big = build_big(spec, tol.zero);
  const Matrix wr = stacked_controllability(spec, big.Ared, big.Bred);
  return numerical_rank(wr, tol.rank) == static_cast<Index>(spec.q - 1) * spec.n;
}

bool brammer_positive(const ArraySpec& spec, const Tolerances& tol) {
  if (!kalman_reduced(spec, tol)) return false;
  const BigOperators big = build_big(spec, tol.zero);
  for (const double mu : real_eigenvalues(spec.A, tol.eig)) {
    const Matrix v = left_kernel(spec.A, mu, tol.eig);
    const Matrix m = kron(Matrix::Identity(spec.q - 1, spec.q - 1), Matrix(v.transpose())) * big.Bred;
    for (Index j = 0; j < m.rows(); ++j) {
      for (const double sign : {1.0, -1.0}) {
        const Vector target = sign * Vector::Unit(m.rows(), j);
        if (!simplex_feasible(m, target, tol.cone)) return false;
      }
    }
  }
  return true;
}

bool pairwise_range(const ArraySpec& spec, VertexPair pair, const Tolerances& tol) {
  if (pair.k < 1 || pair.l < 1 || pair.k > spec.q || pair.l > spec.q || pair.k == pair.l) {
    throw Error(ErrorKind::domain, "vertex pair out of range");
  }
  const BigOperators big = build_big(spec, tol.zero);
  const Matrix w = stacked_controllability(spec, big.Abig, big.Bbig);
  const Matrix target = pair_frame(spec.q, spec.n, pair);
  Matrix joined(w.rows(), w.cols() + target.cols());
  joined << w, target;
  Eigen::JacobiSVD<Matrix> svd(joined);
  const double threshold = tol.rank * std::max(1.0, svd.singularValues()(0));
  return rank_at(joined, threshold) == rank_at(w, threshold);
}

bool path_oracle(const Matrix& G, PathQuery query, VertexPair pair) {
  if (!unit_incidence(G)) {
    throw Error(ErrorKind::domain, "path oracle needs columns of the form e_i - e_j");
  }
  const int q = static_cast<int>(G.rows());
  std::vector<std::pair<int, int>> arcs;
  for (Index c = 0; c < G.cols(); ++c) {
    Index from = 0;
    Index to = 0;
    G.col(c).maxCoeff(&from);
    G.col(c).minCoeff(&to);
    arcs.emplace_back(static_cast<int>(from), static_cast<int>(to));
  }
  const bool strong = query == PathQuery::strong || query == PathQuery::strong_kl;
  if (query == PathQuery::kl || query == PathQuery::strong_kl) {
    if (pair.k < 1 || pair.l < 1 || pair.k > q || pair.l > q || pair.k == pair.l) {
      throw Error(ErrorKind::domain, "vertex pair out of range");
    }
    const int k = pair.k - 1;
    const int l = pair.l - 1;
    if (!reachable_from(k, q, arcs, !strong)[static_cast<size_t>(l)]) return false;
    return !strong || reachable_from(l, q, arcs, false)[static_cast<size_t>(k)];
  }
  for (int v = 0; v < q; ++v) {
    const auto seen = reachable_from(v, q, arcs, !strong);
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) return false;
    if (!strong) break;
  }
  return true;
}

std::vector<double> default_grid(const Matrix& A, int points) {
  double max_re = 0.0;
  if (A.rows() > 0) max_re = A.eigenvalues().real().cwiseAbs().maxCoeff();
  const double horizon = 4.0 / std::max(1.0, max_re);
  std::vector<double> grid(static_cast<size_t>(points));
  for (int i = 0; i < points; ++i) {
    grid[static_cast<size_t>(i)] =
        0.5 * horizon * (1.0 - std::cos(std::numbers::pi * i / (points - 1)));
  }
  grid.front() = 0.0;
  grid.back() = horizon;
  return grid;
}

std::optional<Vector> polar_falsifier(const ArraySpec& spec, VertexPair pair,
                                      const FalsifierOptions& options) {
  if (pair.k < 1 || pair.l < 1 || pair.k > spec.q || pair.l > spec.q || pair.k == pair.l) {
    throw Error(ErrorKind::domain, "vertex pair out of range");
  }
  const std::vector<double> grid =
      options.grid.empty() ? default_grid(spec.A) : options.grid;
  std::vector<double> dense;
  if (grid.size() >= 2) {
    const int per = 10;
    for (size_t i = 0; i + 1 < grid.size(); ++i) {
      for (int s = 0; s < per; ++s) dense.push_back(grid[i] + (grid[i + 1] - grid[i]) * s / per);
    }
    dense.push_back(grid.back());
  } else {
    dense = grid;
  }
  const Matrix rows = polar_rows(spec, grid);
  const Matrix dense_rows = polar_rows(spec, dense);
  const double accept = 1e-9 * std::max(1.0, max_row_norm(dense_rows));

  const int n = spec.n;
  const Index qn = static_cast<Index>(spec.q) * n;
  const Matrix avg = kron(Matrix(Matrix::Constant(spec.q, spec.q, 1.0 / spec.q)), Matrix(Matrix::Identity(n, n)));
  const Matrix project = Matrix::Identity(qn, qn) - avg;

  auto normalized = [&](const Vector& x, Vector& out) {
    out = project * x;
    const double nrm = out.norm();
    if (nrm < 1e-12) return false;
    out /= nrm;
    return true;
  };
  auto violation = [](const Matrix& r, const Vector& eta) {
    return (r * eta).cwiseMax(0.0).squaredNorm();
  };
  const std::function<double(const Vector&)> stage1 = [&](const Vector& x) {
    Vector eta;
    if (!normalized(x, eta)) return 1e6;
    return violation(rows, eta) - options.lambda * pair_component(eta, n, pair).squaredNorm();
  };
  const std::function<double(const Vector&)> stage2 = [&](const Vector& x) {
    Vector eta;
    if (!normalized(x, eta)) return 1e6;
    return violation(rows, eta);
  };

  for (int attempt = 0; attempt < options.attempts; ++attempt) {
    Gaussian gauss(splitmix64(options.seed ^ splitmix64(static_cast<std::uint64_t>(attempt))));
    Vector x0(qn);
    for (Index i = 0; i < qn; ++i) x0(i) = gauss();
    Vector start;
    if (!normalized(x0, start)) continue;

    const Vector x1 = nelder_mead(stage1, start, 0.5, options.max_evaluations,
                                  -std::numeric_limits<double>::infinity());
    Vector mid;
    if (!normalized(x1, mid)) continue;
    const Vector x2 = nelder_mead(stage2, mid, 0.05, options.max_evaluations, 0.0);
    Vector eta;
    if (!normalized(x2, eta)) continue;

    if (pair_component(eta, n, pair).norm() < options.min_pair_fraction) continue;
    if (rows.rows() > 0 && (rows * eta).maxCoeff() > accept) continue;
    if (dense_rows.rows() > 0 && (dense_rows * eta).maxCoeff() > accept) continue;
    return eta;
  }
  return std::nullopt;
}

ReachProblem make_reach_problem(const ArraySpec& spec, VertexPair pair, double horizon, int steps) {
  ReachProblem prob;
  prob.spec = spec;
  prob.pair = pair;
  prob.horizon = horizon;
  prob.steps = steps;
  const Matrix frame = pair_frame(spec.q, spec.n, pair);
  for (Index j = 0; j < frame.cols(); ++j) {
    prob.targets.push_back(frame.col(j));
    prob.targets.push_back(-frame.col(j));
  }
  return prob;
}

std::vector<ReachResult> reach_simulator(const ReachProblem& problem, double tol_hit) {
  const ArraySpec& spec = problem.spec;
  if (!(problem.horizon > 0.0) || problem.steps < 2) {
    throw Error(ErrorKind::domain, "reach simulation needs T > 0 and at least two steps");
  }
  const double dt = problem.horizon / problem.steps;
  const Matrix eye_q = Matrix::Identity(spec.q, spec.q);
  const Matrix step = kron(eye_q, expm(spec.A * dt));
  const Matrix hold = kron(eye_q, expm_integral(spec.A, dt)) * spec.B;

  // Input held on interval j reaches the final time through exp(A (T - t_{j+1})).
  const Index p = spec.p;
  Matrix gamma(hold.rows(), p * problem.steps);
  Matrix block = hold;
  for (int j = problem.steps - 1; j >= 0; --j) {
    gamma.middleCols(static_cast<Index>(j) * p, p) = block;
    block = step * block;
  }

  std::vector<ReachResult> out;
  for (const auto& target : problem.targets) {
    const NnlsResult sol = nnls(gamma, target);
    out.push_back({target, sol.residual, sol.residual <= tol_hit});
  }
  return out;
}

std::vector<OracleVerdict> run_oracles(const AnalysisReport& report, const OracleOptions& options) {
  const ArraySpec& spec = report.spec;
  const Tolerances& tol = report.tolerances;
  std::vector<OracleVerdict> out;
  auto yes_no = [](bool b) { return std::string(b ? "true" : "false"); };

  {
    const bool k = kalman_reduced(spec, tol);
    out.push_back({"kalman_reduced", std::nullopt, k == report.controllable,
                   "reduced rank test " + yes_no(k) + ", analysis " + yes_no(report.controllable),
                   std::nullopt});
  }
  {
    const bool b = brammer_positive(spec, tol);
    out.push_back({"brammer_positive", std::nullopt, b == report.positively_controllable,
                   "simplex cone test " + yes_no(b) + ", analysis " +
                       yes_no(report.positively_controllable),
                   std::nullopt});
  }
  if (spec.n == 1 && unit_incidence(spec.B)) {
    const bool weak = path_oracle(spec.B, PathQuery::connected);
    const bool strong = path_oracle(spec.B, PathQuery::strong);
    out.push_back({"path_oracle", std::nullopt,
                   weak == report.controllable && strong == report.positively_controllable,
                   "BFS connected " + yes_no(weak) + ", strongly connected " + yes_no(strong),
                   std::nullopt});
  }

  for (const auto& pv : report.pairs) {
    const bool r = pairwise_range(spec, pv.pair, tol);
    out.push_back({"pairwise_range", pv.pair, r == pv.pairwise,
                   "range test " + yes_no(r) + ", analysis " + yes_no(pv.pairwise), std::nullopt});

    FalsifierOptions fo;
    fo.attempts = options.attempts;
    fo.seed = options.seed;
    const auto witness = polar_falsifier(spec, pv.pair, fo);
    OracleVerdict fv{"polar_falsifier", pv.pair, std::nullopt, "", std::nullopt};
    if (witness) {
      fv.witness = *witness;
      if (pv.positive_pairwise && pv.conditional) {
        fv.detail = "witness on the finite grid; the analysis verdict is conditional, no comparison";
      } else {
        fv.agrees = !pv.positive_pairwise;
        fv.detail = "validated witness found; positive pairwise controllability refuted";
      }
    } else {
      if (pv.positive_pairwise) fv.agrees = true;
      fv.detail = "no witness in " + std::to_string(options.attempts) + " attempts (proves nothing)";
    }
    out.push_back(std::move(fv));

    if (pv.positive_pairwise && !pv.conditional) {
      const auto results = reach_simulator(
          make_reach_problem(spec, pv.pair, options.horizon, options.steps), options.tol_hit);
      double worst = 0.0;
      bool all = true;
      for (const auto& res : results) {
        worst = std::max(worst, res.residual);
        all = all && res.hit;
      }
      std::ostringstream os;
      os.precision(3);
      os << "evidence: worst residual " << worst << " over " << results.size() << " targets";
      out.push_back({"reach_simulator", pv.pair, all, os.str(), std::nullopt});
    }
  }
  return out;
}

}  // namespace arrayctl
