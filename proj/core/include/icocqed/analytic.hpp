#pragma once

#include "icocqed/params.hpp"
#include "icocqed/state.hpp"

// Closed-form states of the atom after traversing both cavities, in a fixed
// order or in a coherent superposition of the two orders.
//
// All states here live in the interaction picture unless a function takes an
// omega_t argument, in which case the Schroedinger-picture phases are applied
// with the common factor exp(-i omega t (n + m + 1/2)) removed.

namespace icocqed {

enum class CavityOrder { c0_then_c1, c1_then_c0 };

// Outcome j of measuring the control qubit after the Hadamard recombination.
class ControlOutcome {
 public:
  explicit ControlOutcome(int j);
  int value() const noexcept { return j_; }
  // (-1)^j
  double sign() const noexcept { return j_ == 0 ? 1.0 : -1.0; }

 private:
  int j_;
};

// Vacuum Rabi frequency of the doublet {|e,k>, |g,k+1>}: g sqrt(k + 1).
// gamma(-1, g) == 0, which makes every amplitude of a negative-occupation ket
// vanish. Throws DomainError for k < -1.
double gamma(int k, double g);

// c_1..c_8 of the C0-then-C1 ordering at time tau into the second cavity.
// Throws DomainError unless 0 <= tau <= p.T.
CoeffSet coeffs_c(const SystemParams& p, double tau);
// s_1..s_8 of the C1-then-C0 ordering (the n <-> m mirror of coeffs_c).
CoeffSet coeffs_s(const SystemParams& p, double tau);

// |C1C0(tau)> for c0_then_c1, |C0C1(tau)> for c1_then_c0. Atom-field flavor.
PureState state_after_both(CavityOrder order, const SystemParams& p, double tau);

// <C1C0(T)|C0C1(T)> from the coefficient sums.
Complex overlap_orders(const SystemParams& p);

// N_j^2 = (1 + (-1)^j Re<C1C0|C0C1>) / 2 for the balanced control state
// (theta = pi/4, varphi = 0); DomainError otherwise.
double control_probability(ControlOutcome j, const SystemParams& p);

// Balanced-control state after the control is found in |j>, built from the
// e- and g-branches Phi_e, Phi_g. Normalized. Requires theta = pi/4 and
// varphi = 0; throws ImpossiblePostselection when N_j <= 1e-10.
PureState ico_postselected_state(ControlOutcome j, const SystemParams& p,
                                 double omega_t);

struct Postselected {
  PureState state;
  double probability;
};

// Born probability of control outcome j for arbitrary theta, varphi.
double postselection_probability(ControlOutcome j, const SystemParams& p);

// Same construction for any control and atom angles: superpose the two
// orderings with the control amplitudes, recombine on a Hadamard, project on
// |j>, apply the free phases. Throws ImpossiblePostselection when the outcome
// probability is below 1e-12.
Postselected general_postselect(ControlOutcome j, const SystemParams& p,
                                double omega_t);

// Transit time T with g T sqrt(n + 1) = (2N - 1) pi / 2.
double bell_transit_time(int n, int N, double g = 1.0);

// Normalized two-mode state left behind when the atom is found in
// atom_branch, for n = m photons and the N-th resonant transit time.
// Fields flavor. Throws DegenerateBranch when that branch has no amplitude
// (always the case for the excited branch with n = 0).
PureState bell_state(AtomLevel atom_branch, int n, int N);

}  // namespace icocqed
