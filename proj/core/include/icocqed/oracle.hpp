#pragma once

#include <Eigen/Dense>

#include "icocqed/params.hpp"
#include "icocqed/state.hpp"

// Brute-force propagation on a truncated Fock space.
//
// Nothing in this namespace calls into the closed-form engine; the two paths
// meet only in tests and in verify().

namespace icocqed::oracle {

// Fock states 0..n_max in each cavity. Atom-field basis index is
// (atom * L + n) * L + m with L = n_max + 1 and excited = 0; the full basis
// prepends the control bit as the most significant digit.
class TruncationWindow {
 public:
  explicit TruncationWindow(int n_max);

  // max(n, m) + 2: the dynamics adds at most one photon per cavity, so the
  // top row is a guard that must stay empty.
  static TruncationWindow for_params(const SystemParams& p);

  int n_max() const noexcept { return n_max_; }
  int levels() const noexcept { return n_max_ + 1; }
  int atom_field_dimension() const noexcept { return 2 * levels() * levels(); }
  int full_dimension() const noexcept { return 2 * atom_field_dimension(); }

  int index(AtomLevel atom, int n, int m) const;
  Ket atom_field_ket(int index) const;

 private:
  int n_max_;
};

// Dense matrix with U^dagger U = I checked to 1e-10 (max-norm) at construction.
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(Eigen::MatrixXcd matrix);
  const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }

 private:
  Eigen::MatrixXcd matrix_;
};

// Entry and exit times of the two cavity passages.
struct Schedule {
  double T0;
  double T1;
  double T;

  static Schedule from_params(const SystemParams& p);
};

// g (a_j^dagger sigma_- + sigma_+ a_j) on the atom-field basis, hbar = 1.
Eigen::MatrixXcd jc_generator(int cavity, double g, const TruncationWindow& w);

// exp(-i g t (a_j^dagger sigma_- + sigma_+ a_j)) assembled from the dressed
// doublets |+-,k> with eigenvalues +-g sqrt(k+1); |g,0> and the truncation
// edge |e,n_max> are null vectors of the generator and stay fixed.
UnitaryMatrix jc_propagator(int cavity, double t, double g,
                            const TruncationWindow& w);

// Control (x) atom (x) |n, m> product state at t = 0. Full flavor.
PureState initial_state(const SystemParams& p);

// Interaction-picture state at time t under the piecewise schedule. Throws
// TruncationOverflow if the top Fock row of either cavity picks up population
// >= 1e-12; with for_params(p) that row is provably empty.
PureState evolve(const SystemParams& p, double t, const TruncationWindow& w);
PureState evolve(const SystemParams& p, double t);

// Balanced beamsplitter on the control: |j> -> (|0> + (-1)^j |1>) / sqrt 2.
PureState hadamard_control(const PureState& s);

struct Measurement {
  PureState state;
  double probability;
};

// Project the control on |j>; returns the normalized atom-field remainder and
// its Born probability. Throws ImpossiblePostselection below 1e-12.
Measurement measure_control(const PureState& s, int j);

// Multiply each ket by exp(-i omega t (N_e - 1/2)), N_e = atom excitation +
// photon number (photon number alone for fields-only states).
PureState schrodinger_phase(const PureState& s, double omega, double t);

Eigen::VectorXcd to_vector(const PureState& s, const TruncationWindow& w);
PureState from_vector(const Eigen::VectorXcd& v, KetFlavor flavor,
                      const TruncationWindow& w);

}  // namespace icocqed::oracle
