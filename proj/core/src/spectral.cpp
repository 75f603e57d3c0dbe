#include "arrayctl/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "arrayctl/errors.hpp"

namespace arrayctl {

namespace {

struct Cluster {
  Complex center;
  int size = 0;
  bool real = false;
  double re_key = 0.0;
};

int find_root(std::vector<int>& parent, int i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

CMatrix shifted_transpose(const Matrix& A, Complex mu) {
  CMatrix m = A.transpose().cast<Complex>();
  m.diagonal().array() -= mu;
  return m;
}

}  // namespace

Spectrum distinct_eigenvalues(const Matrix& A, double tol_eig) {
  if (A.rows() != A.cols()) throw Error(ErrorKind::dimension, "A must be square");
  const Index n = A.rows();
  Spectrum spectrum;
  if (n == 0) return spectrum;

  Eigen::EigenSolver<Matrix> solver(A.transpose(), false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::numerical_failure, "eigenvalue iteration did not converge");
  }
  const CVector lambda = solver.eigenvalues();
  const double radius = lambda.cwiseAbs().maxCoeff();
  const double tol = tol_eig * (1.0 + radius);
  spectrum.tol_abs = tol;

  std::vector<int> parent(static_cast<size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (std::abs(lambda(i) - lambda(j)) <= tol) {
        parent[find_root(parent, static_cast<int>(i))] = find_root(parent, static_cast<int>(j));
      }
    }
  }
  std::vector<int> root_of(static_cast<size_t>(n));
  for (Index i = 0; i < n; ++i) root_of[i] = find_root(parent, static_cast<int>(i));

  // Two distinct clusters closer than 2 tol make the grouping depend on tol.
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (root_of[i] != root_of[j] && std::abs(lambda(i) - lambda(j)) < 2.0 * tol) {
        std::ostringstream os;
        os.precision(12);
        os << "eigenvalues " << lambda(i) << " and " << lambda(j)
           << " are neither clearly equal nor clearly distinct at tol_eig = " << tol_eig
           << "; rerun with a different eig tolerance";
        throw Error(ErrorKind::ill_conditioned_spectrum, os.str());
      }
    }
  }

  std::vector<Cluster> clusters;
  std::vector<int> cluster_of_root(static_cast<size_t>(n), -1);
  for (Index i = 0; i < n; ++i) {
    int& c = cluster_of_root[root_of[i]];
    if (c < 0) {
      c = static_cast<int>(clusters.size());
      clusters.push_back({});
    }
    clusters[c].center += lambda(i);
    clusters[c].size += 1;
  }
  for (auto& c : clusters) {
    c.center /= static_cast<double>(c.size);
    if (std::abs(c.center.imag()) <= tol) {
      c.center = Complex(c.center.real(), 0.0);
      c.real = true;
    }
  }

  // Enforce exact conjugate symmetry: A is real.
  for (auto& c : clusters) {
    if (c.real || c.center.imag() < 0.0) continue;
    auto partner = std::min_element(clusters.begin(), clusters.end(),
                                    [&](const Cluster& a, const Cluster& b) {
                                      return std::abs(a.center - std::conj(c.center)) <
                                             std::abs(b.center - std::conj(c.center));
                                    });
    if (partner->real || partner->center.imag() >= 0.0 || partner->size != c.size ||
        std::abs(partner->center - std::conj(c.center)) > tol) {
      throw Error(ErrorKind::inconsistent_spectrum, "non-real eigenvalue without conjugate partner");
    }
    partner->center = std::conj(c.center);
  }

  // Group equal real parts so the ordering is a strict weak order.
  std::vector<size_t> by_re(clusters.size());
  std::iota(by_re.begin(), by_re.end(), 0);
  std::sort(by_re.begin(), by_re.end(), [&](size_t a, size_t b) {
    return clusters[a].center.real() > clusters[b].center.real();
  });
  double key = 0.0;
  for (size_t i = 0; i < by_re.size(); ++i) {
    const double re = clusters[by_re[i]].center.real();
    if (i == 0 || key - re > tol) key = re;
    clusters[by_re[i]].re_key = key;
  }
  std::sort(clusters.begin(), clusters.end(), [](const Cluster& a, const Cluster& b) {
    if (a.re_key != b.re_key) return a.re_key > b.re_key;
    if (a.real != b.real) return a.real;
    const double ia = std::abs(a.center.imag());
    const double ib = std::abs(b.center.imag());
    if (ia != ib) return ia < ib;
    return a.center.imag() > b.center.imag();
  });

  int index = 1;
  for (const auto& c : clusters) {
    EigComponent comp;
    comp.mu = c.center;
    comp.alg_mult = c.size;
    comp.is_real = c.real;
    spectrum.components.push_back(std::move(comp));
    spectrum.order_certificate.push_back({index++, c.center.real(), c.center.imag()});
  }
  return spectrum;
}

CMatrix eigenvector_basis(const Matrix& A, Complex mu, double tol_abs) {
  const Index n = A.rows();
  CMatrix V;
  if (mu.imag() == 0.0) {
    Matrix m = A.transpose();
    m.diagonal().array() -= mu.real();
    V = null_space(m, std::max(tol_abs, n * std::numeric_limits<double>::epsilon() * m.norm()))
            .cast<Complex>();
  } else {
    const CMatrix m = shifted_transpose(A, mu);
    V = null_space(m, std::max(tol_abs, n * std::numeric_limits<double>::epsilon() * m.norm()));
  }
  if (V.cols() == 0) {
    std::ostringstream os;
    os << "no eigenvector found for mu = " << mu;
    throw Error(ErrorKind::inconsistent_spectrum, os.str());
  }
  return V;
}

CMatrix generalized_basis(const Matrix& A, Complex mu, int n_k, double tol_abs) {
  const Index n = A.rows();
  const CMatrix m = shifted_transpose(A, mu);
  const bool real = mu.imag() == 0.0;
  const double threshold =
      std::max(tol_abs, n * std::numeric_limits<double>::epsilon() * m.norm());

  // K_r = null((I - P_{K_{r-1}}) M) equals null(M^r).
  CMatrix K(n, 0);
  for (int r = 1; r <= n_k; ++r) {
    const CMatrix proj = CMatrix::Identity(n, n) - K * K.adjoint();
    const CMatrix step = proj * m;
    CMatrix next;
    if (real) {
      next = null_space(Matrix(step.real()), threshold).cast<Complex>();
    } else {
      next = null_space(step, threshold);
    }
    if (next.cols() == K.cols()) break;
    K = next;
    if (K.cols() >= n_k) break;
  }
  if (K.cols() != n_k) {
    std::ostringstream os;
    os << "generalized eigenspace of mu = " << mu << " has dimension " << K.cols()
       << ", expected algebraic multiplicity " << n_k;
    throw Error(ErrorKind::inconsistent_spectrum, os.str());
  }
  return K;
}

Restriction restriction(const Matrix& A, const CMatrix& U, Complex mu, double tol_res) {
  const CMatrix a = A.cast<Complex>();
  Restriction r;
  r.A_k = U.adjoint() * a * U;
  const Index nk = r.A_k.rows();
  r.Lambda = r.A_k - std::conj(mu) * CMatrix::Identity(nk, nk);

  const double scale = 1.0 + A.norm();
  const double invariance = (a.transpose() * U - U * r.A_k.adjoint()).norm();
  if (invariance > tol_res * scale) {
    std::ostringstream os;
    os << "range U is not invariant under A^T for mu = " << mu << " (residual " << invariance
       << ")";
    throw Error(ErrorKind::invariance_violation, os.str());
  }
  CMatrix power = CMatrix::Identity(nk, nk);
  for (Index i = 0; i < nk; ++i) power = power * r.Lambda;
  if (power.norm() > tol_res * std::pow(scale, static_cast<double>(nk))) {
    std::ostringstream os;
    os << "nilpotent part for mu = " << mu << " is not nilpotent (|Lambda^n_k| = "
       << power.norm() << ")";
    throw Error(ErrorKind::invariance_violation, os.str());
  }
  return r;
}

Spectrum compute_spectrum(const Matrix& A, const Tolerances& tol) {
  Spectrum spectrum = distinct_eigenvalues(A, tol.eig);
  auto& comps = spectrum.components;
  for (size_t i = 0; i < comps.size(); ++i) {
    auto& c = comps[i];
    if (!c.is_real && c.mu.imag() < 0.0) {
      // Conjugate of the preceding component.
      const auto& partner = comps.at(i - 1);
      c.geo_mult = partner.geo_mult;
      c.V = partner.V.conjugate();
      c.U = partner.U.conjugate();
      c.A_k = partner.A_k.conjugate();
      c.Lambda = partner.Lambda.conjugate();
      continue;
    }
    c.V = eigenvector_basis(A, c.mu, spectrum.tol_abs);
    c.geo_mult = static_cast<int>(c.V.cols());
    if (c.geo_mult > c.alg_mult) {
      throw Error(ErrorKind::inconsistent_spectrum,
                  "geometric multiplicity exceeds algebraic multiplicity");
    }
    c.U = generalized_basis(A, c.mu, c.alg_mult, spectrum.tol_abs);
    auto r = restriction(A, c.U, c.mu, tol.residual);
    c.A_k = std::move(r.A_k);
    c.Lambda = std::move(r.Lambda);
    if (c.is_real) {
      c.A_k = c.A_k.real().cast<Complex>();
      c.Lambda = c.Lambda.real().cast<Complex>();
    }
  }
  return spectrum;
}

}  // namespace arrayctl
