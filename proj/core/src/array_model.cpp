#include "arrayctl/array_model.hpp"

#include <cmath>
#include <sstream>

#include "arrayctl/errors.hpp"

namespace arrayctl {

Vector ArraySpec::block(int i, int sigma) const {
  return B.block(static_cast<Index>(i) * n, sigma, n, 1);
}

ArraySpec ArraySpec::from_blocks(std::string name, Matrix A,
                                 const std::vector<std::vector<Vector>>& blocks) {
  ArraySpec spec;
  spec.name = std::move(name);
  spec.n = static_cast<int>(A.rows());
  spec.q = static_cast<int>(blocks.size());
  spec.p = blocks.empty() ? 0 : static_cast<int>(blocks.front().size());
  spec.A = std::move(A);
  spec.B = Matrix::Zero(static_cast<Index>(spec.q) * spec.n, spec.p);
  for (int i = 0; i < spec.q; ++i) {
    if (static_cast<int>(blocks[i].size()) != spec.p) {
      throw Error(ErrorKind::dimension, "system " + std::to_string(i + 1) + " has " +
                                            std::to_string(blocks[i].size()) +
                                            " input vectors, expected " + std::to_string(spec.p));
    }
    for (int s = 0; s < spec.p; ++s) {
      if (blocks[i][s].size() != spec.n) {
        throw Error(ErrorKind::dimension, "B[" + std::to_string(i + 1) + "][" +
                                              std::to_string(s + 1) + "] has length " +
                                              std::to_string(blocks[i][s].size()) +
                                              ", expected n = " + std::to_string(spec.n));
      }
      spec.B.block(static_cast<Index>(i) * spec.n, s, spec.n, 1) = blocks[i][s];
    }
  }
  return spec;
}

ArraySpec ArraySpec::from_incidence(std::string name, Matrix A, int q, Matrix B) {
  ArraySpec spec;
  spec.name = std::move(name);
  spec.n = static_cast<int>(A.rows());
  spec.q = q;
  spec.p = static_cast<int>(B.cols());
  spec.A = std::move(A);
  spec.B = std::move(B);
  return spec;
}

std::string ValidationReport::describe() const {
  std::ostringstream os;
  for (const auto& v : violations) {
    switch (v.kind) {
      case ViolationKind::dimension: os << "dimension"; break;
      case ViolationKind::column_sum: os << "column sum"; break;
      case ViolationKind::non_finite: os << "non-finite entry"; break;
    }
    os << " at " << v.location << " (magnitude " << v.magnitude << ")\n";
  }
  return os.str();
}

ValidationReport validate_array(const ArraySpec& spec, double tol_zero) {
  ValidationReport report;
  auto dim = [&](std::string where, double magnitude) {
    report.violations.push_back({ViolationKind::dimension, std::move(where), magnitude, 0});
  };
  if (spec.n < 1) dim("n", spec.n);
  if (spec.q < 2) dim("q", spec.q);
  if (spec.p < 1) dim("p", spec.p);
  if (spec.A.rows() != spec.n || spec.A.cols() != spec.n) {
    dim("A is " + std::to_string(spec.A.rows()) + "x" + std::to_string(spec.A.cols()) +
            ", expected " + std::to_string(spec.n) + "x" + std::to_string(spec.n),
        static_cast<double>(spec.A.rows() * spec.A.cols()));
  }
  const Index expected_rows = static_cast<Index>(spec.q) * spec.n;
  if (spec.B.rows() != expected_rows || spec.B.cols() != spec.p) {
    dim("B is " + std::to_string(spec.B.rows()) + "x" + std::to_string(spec.B.cols()) +
            ", expected " + std::to_string(expected_rows) + "x" + std::to_string(spec.p),
        static_cast<double>(spec.B.rows() * spec.B.cols()));
  }
  if (!spec.A.allFinite()) {
    report.violations.push_back({ViolationKind::non_finite, "A", 0.0, 0});
  }
  if (!spec.B.allFinite()) {
    report.violations.push_back({ViolationKind::non_finite, "B", 0.0, 0});
  }
  if (!report.ok()) return report;

  for (int s = 0; s < spec.p; ++s) {
    Vector sum = Vector::Zero(spec.n);
    for (int i = 0; i < spec.q; ++i) sum += spec.block(i, s);
    const double norm = sum.norm();
    if (norm > tol_zero) {
      report.violations.push_back({ViolationKind::column_sum,
                                   "sigma=" + std::to_string(s + 1), norm, s + 1});
    }
  }
  return report;
}

Matrix disagreement_basis(int q) {
  if (q < 2) throw Error(ErrorKind::dimension, "disagreement basis needs q >= 2");
  const Vector s = Vector::Constant(q, 1.0 / std::sqrt(static_cast<double>(q)));
  Vector w = -s;
  w(0) += 1.0;
  const Matrix h = Matrix::Identity(q, q) - 2.0 * w * w.transpose() / w.squaredNorm();
  return h.rightCols(q - 1);
}

BigOperators build_big(const ArraySpec& spec, double tol_zero) {
  const auto report = validate_array(spec, tol_zero);
  if (!report.ok()) throw Error(ErrorKind::domain, "invalid array: " + report.describe());
  BigOperators big;
  const Matrix iq = Matrix::Identity(spec.q, spec.q);
  big.Abig = kron(iq, spec.A);
  big.Bbig = spec.B;
  big.S = Vector::Constant(spec.q, 1.0 / std::sqrt(static_cast<double>(spec.q)));
  big.D = disagreement_basis(spec.q);
  big.Ared = kron(Matrix::Identity(spec.q - 1, spec.q - 1), spec.A);
  big.Bred = kron(Matrix(big.D.transpose()), Matrix::Identity(spec.n, spec.n)) * big.Bbig;
  return big;
}

}  // namespace arrayctl
