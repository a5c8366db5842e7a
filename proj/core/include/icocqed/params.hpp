#pragma once

#include <array>
#include <numbers>
#include <optional>

#include "icocqed/state.hpp"

namespace icocqed {

// Physical inputs of one run. Units: hbar = 1, times in the units of 1/g.
struct SystemParams {
  double g = 1.0;      // atom-field coupling, > 0
  double T = 0.0;      // transit time through each cavity, >= 0
  double omega = 1.0;  // resonant field/atom angular frequency, > 0

  // Control qubit cos(theta)|0> + e^{i varphi} sin(theta)|1>.
  double theta = std::numbers::pi / 4;
  double varphi = 0.0;

  // Atom cos(xi)|e> + e^{i chi} sin(xi)|g>.
  double xi = 0.0;
  double chi = 0.0;

  int n = 0;  // photons initially in cavity C0
  int m = 0;  // photons initially in cavity C1

  double T0 = 0.0;           // entry into the first cavity
  std::optional<double> T1;  // entry into the second cavity, defaults to T0 + T

  double second_entry() const { return T1.value_or(T0 + T); }
  // Time at which the atom has left both cavities.
  double exit_time() const { return second_entry() + T; }

  // Throws DomainError naming the first offending field.
  void validate() const;
};

// The eight closed-form amplitudes of one cavity ordering, 1-based like c_1..c_8.
struct CoeffSet {
  std::array<Complex, 8> values{};

  Complex operator()(int j) const { return values.at(static_cast<std::size_t>(j - 1)); }
  Complex& operator()(int j) { return values.at(static_cast<std::size_t>(j - 1)); }

  double norm_squared() const;
};

}  // namespace icocqed
