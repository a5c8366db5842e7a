#pragma once

#include <Eigen/Dense>

namespace icocqed {

// Density matrix of one cavity mode restricted to the Fock window
// [offset, offset + dimension()).
//
// The constructor checks Hermiticity (1e-12), unit trace (1e-12) and positive
// semidefiniteness (eigenvalues >= -1e-10) and throws DomainError otherwise.
class FieldDensityMatrix {
 public:
  FieldDensityMatrix(int offset, Eigen::MatrixXcd elements);

  int offset() const noexcept { return offset_; }
  int dimension() const noexcept { return static_cast<int>(elements_.rows()); }
  const Eigen::MatrixXcd& elements() const noexcept { return elements_; }

  // <row|rho|col> in absolute Fock labels; zero outside the window.
  std::complex<double> element(int row, int col) const;

  Eigen::VectorXd eigenvalues() const;

 private:
  int offset_;
  Eigen::MatrixXcd elements_;
};

}  // namespace icocqed
