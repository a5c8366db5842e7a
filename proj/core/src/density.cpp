#include "icocqed/density.hpp"

#include <utility>

#include "icocqed/errors.hpp"

namespace icocqed {

FieldDensityMatrix::FieldDensityMatrix(int offset, Eigen::MatrixXcd elements)
    : offset_(offset), elements_(std::move(elements)) {
  if (offset_ < 0) throw DomainError("density matrix offset must be >= 0");
  if (elements_.rows() == 0 || elements_.rows() != elements_.cols()) {
    throw DomainError("density matrix must be square and non-empty");
  }
  if ((elements_ - elements_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw DomainError("density matrix is not Hermitian");
  }
  if (std::abs(elements_.trace() - std::complex<double>(1.0, 0.0)) > 1e-12) {
    throw DomainError("density matrix trace differs from 1");
  }
  if (eigenvalues().minCoeff() < -1e-10) {
    throw DomainError("density matrix is not positive semidefinite");
  }
}

std::complex<double> FieldDensityMatrix::element(int row, int col) const {
  const int r = row - offset_;
  const int c = col - offset_;
  if (r < 0 || c < 0 || r >= dimension() || c >= dimension()) return {};
  return elements_(r, c);
}

Eigen::VectorXd FieldDensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(elements_,
                                                         Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace icocqed
