#pragma once

#include "icocqed/density.hpp"
#include "icocqed/params.hpp"
#include "icocqed/state.hpp"

namespace icocqed {

// |<k|s>|^2.
double ket_probability(const PureState& s, const Ket& k);

struct ConditionedState {
  PureState fields;
  double probability;
};

// Projects the atom of an atom-field state on `level`. Throws
// ImpossiblePostselection when the branch probability is below 1e-12.
ConditionedState condition_on_atom(const PureState& s, AtomLevel level);

// Partial traces of a two-mode (fields flavor) state. The Fock window spans
// the occupied labels of the kept cavity.
FieldDensityMatrix reduced_cavity0(const PureState& fields);
FieldDensityMatrix reduced_cavity1(const PureState& fields);

// 1 - Tr(rho^2).
double linear_entropy(const FieldDensityMatrix& rho);

enum class Arrangement { series, ico };

struct EntropyReport {
  double value;
  // 1 - 1/min(d_A, d_B) for the support dimensions of the two modes.
  double bound;
  AtomLevel conditioned_on;
  Arrangement scenario;
};

// Linear entropy of cavity C0 after finding the atom in `level`.
EntropyReport entropy_report(const PureState& atom_field, AtomLevel level,
                             Arrangement scenario);

// <sigma_z> computed directly from the amplitudes.
double atomic_inversion(const PureState& atom_field);

// Closed-form <sigma_z> for the C0-then-C1 series arrangement, atom initially
// excited (xi = 0).
double sigma_z_series(const SystemParams& p);

// Closed-form <sigma_z> after the balanced control is found in |0>, atom
// initially excited. Throws ImpossiblePostselection when N_0 <= 1e-10.
double sigma_z_ico(const SystemParams& p);

// Expectation of the excitation number. Control-free and full states both
// accepted; fields-only states count photons only.
double excitation_expectation(const PureState& s);

}  // namespace icocqed
