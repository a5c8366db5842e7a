#include "icocqed/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "icocqed/errors.hpp"

namespace icocqed {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kBalancedTolerance = 1e-12;
constexpr double kMinNormalization = 1e-10;
constexpr double kMinProbability = 1e-12;

using Terms = std::vector<PureState::Term>;

// Appends coef |atom, n, m>. Kets with a negative occupation are dropped, but
// only after checking their amplitude is exactly zero.
void add_atom_field(Terms& terms, AtomLevel atom, int n, int m, Complex coef) {
  if (n < 0 || m < 0) {
    if (std::abs(coef) > kPruneEpsilon) {
      throw std::logic_error("nonzero amplitude on negative-occupation ket");
    }
    return;
  }
  terms.emplace_back(Ket::atom_field(atom, n, m), coef);
}

void add_fields(Terms& terms, int n, int m, Complex coef) {
  if (n < 0 || m < 0) {
    if (std::abs(coef) > kPruneEpsilon) {
      throw std::logic_error("nonzero amplitude on negative-occupation ket");
    }
    return;
  }
  terms.emplace_back(Ket::fields(n, m), coef);
}

void require_tau(const SystemParams& p, double tau) {
  if (!(tau >= 0.0 && tau <= p.T)) {
    throw DomainError("tau must lie in [0, T]; got " + std::to_string(tau));
  }
}

void require_balanced(const SystemParams& p) {
  if (std::abs(p.theta - std::numbers::pi / 4) > kBalancedTolerance ||
      std::abs(p.varphi) > kBalancedTolerance) {
    throw DomainError("balanced control (theta = pi/4, varphi = 0) required");
  }
}

// Coefficients for an atom crossing the cavity holding `first` photons for
// the full transit time, then the cavity holding `second` photons for tau.
CoeffSet ordered_coefficients(const SystemParams& p, int first, int second,
                              double tau) {
  const double cx = std::cos(p.xi);
  const Complex sx = std::exp(kI * p.chi) * std::sin(p.xi);
  const double T = p.T;

  const double f = gamma(first, p.g) * T;
  const double f1 = gamma(first - 1, p.g) * T;
  const double s = gamma(second, p.g) * tau;
  const double s1 = gamma(second - 1, p.g) * tau;

  CoeffSet c;
  c(1) = cx * std::cos(f) * std::cos(s);
  c(2) = -kI * sx * std::sin(f1) * std::cos(s);
  c(3) = -kI * cx * std::cos(f) * std::sin(s);
  c(4) = -sx * std::sin(f1) * std::sin(s);
  c(5) = -kI * sx * std::cos(f1) * std::sin(s1);
  c(6) = -cx * std::sin(f) * std::sin(s1);
  c(7) = sx * std::cos(f1) * std::cos(s1);
  c(8) = -kI * cx * std::sin(f) * std::cos(s1);
  return c;
}

}  // namespace

ControlOutcome::ControlOutcome(int j) : j_(j) {
  if (j != 0 && j != 1) throw DomainError("control outcome must be 0 or 1");
}

double gamma(int k, double g) {
  if (k < -1) throw DomainError("gamma index must be >= -1");
  return g * std::sqrt(static_cast<double>(k + 1));
}

CoeffSet coeffs_c(const SystemParams& p, double tau) {
  p.validate();
  require_tau(p, tau);
  return ordered_coefficients(p, p.n, p.m, tau);
}

CoeffSet coeffs_s(const SystemParams& p, double tau) {
  p.validate();
  require_tau(p, tau);
  return ordered_coefficients(p, p.m, p.n, tau);
}

PureState state_after_both(CavityOrder order, const SystemParams& p, double tau) {
  const int n = p.n;
  const int m = p.m;
  constexpr auto e = AtomLevel::excited;
  constexpr auto g = AtomLevel::ground;
  Terms terms;
  if (order == CavityOrder::c0_then_c1) {
    const CoeffSet c = coeffs_c(p, tau);
    add_atom_field(terms, e, n, m, c(1));
    add_atom_field(terms, e, n - 1, m, c(2));
    add_atom_field(terms, g, n, m + 1, c(3));
    add_atom_field(terms, g, n - 1, m + 1, c(4));
    add_atom_field(terms, e, n, m - 1, c(5));
    add_atom_field(terms, e, n + 1, m - 1, c(6));
    add_atom_field(terms, g, n, m, c(7));
    add_atom_field(terms, g, n + 1, m, c(8));
  } else {
    const CoeffSet s = coeffs_s(p, tau);
    add_atom_field(terms, e, n, m, s(1));
    add_atom_field(terms, e, n, m - 1, s(2));
    add_atom_field(terms, g, n + 1, m, s(3));
    add_atom_field(terms, g, n + 1, m - 1, s(4));
    add_atom_field(terms, e, n - 1, m, s(5));
    add_atom_field(terms, e, n - 1, m + 1, s(6));
    add_atom_field(terms, g, n, m, s(7));
    add_atom_field(terms, g, n, m + 1, s(8));
  }
  return PureState(KetFlavor::atom_field, terms);
}

Complex overlap_orders(const SystemParams& p) {
  const CoeffSet c = coeffs_c(p, p.T);
  const CoeffSet s = coeffs_s(p, p.T);
  return std::conj(c(1)) * s(1) + std::conj(c(2)) * s(5) +
         std::conj(c(3)) * s(8) + std::conj(c(5)) * s(2) +
         std::conj(c(7)) * s(7) + std::conj(c(8)) * s(3);
}

double control_probability(ControlOutcome j, const SystemParams& p) {
  require_balanced(p);
  return 0.5 * (1.0 + j.sign() * overlap_orders(p).real());
}

PureState ico_postselected_state(ControlOutcome j, const SystemParams& p,
                                 double omega_t) {
  const double norm_j = std::sqrt(control_probability(j, p));
  if (norm_j <= kMinNormalization) {
    throw ImpossiblePostselection("control outcome " +
                                  std::to_string(j.value()) +
                                  " has vanishing probability");
  }
  const CoeffSet c = coeffs_c(p, p.T);
  const CoeffSet s = coeffs_s(p, p.T);
  const double sg = j.sign();
  const Complex phase = std::exp(kI * omega_t);
  const int n = p.n;
  const int m = p.m;
  constexpr auto e = AtomLevel::excited;
  constexpr auto g = AtomLevel::ground;

  Terms terms;
  // Phi_e
  add_atom_field(terms, e, n, m, c(1) + sg * s(1));
  add_atom_field(terms, e, n + 1, m - 1, c(6));
  add_atom_field(terms, e, n - 1, m + 1, sg * s(6));
  add_atom_field(terms, e, n - 1, m, phase * (c(2) + sg * s(5)));
  add_atom_field(terms, e, n, m - 1, phase * (c(5) + sg * s(2)));
  // Phi_g
  add_atom_field(terms, g, n, m, phase * (c(7) + sg * s(7)));
  add_atom_field(terms, g, n - 1, m + 1, phase * c(4));
  add_atom_field(terms, g, n + 1, m - 1, phase * sg * s(4));
  add_atom_field(terms, g, n, m + 1, c(3) + sg * s(8));
  add_atom_field(terms, g, n + 1, m, c(8) + sg * s(3));

  return PureState(KetFlavor::atom_field, terms).scaled(1.0 / (2.0 * norm_j));
}

namespace {

PureState projected_branch(ControlOutcome j, const SystemParams& p) {
  const Complex first = std::cos(p.theta) / std::numbers::sqrt2;
  const Complex second = j.sign() * std::exp(kI * p.varphi) *
                         std::sin(p.theta) / std::numbers::sqrt2;
  return scale_and_add(first, state_after_both(CavityOrder::c0_then_c1, p, p.T),
                       second,
                       state_after_both(CavityOrder::c1_then_c0, p, p.T));
}

}  // namespace

double postselection_probability(ControlOutcome j, const SystemParams& p) {
  const double length = norm(projected_branch(j, p));
  return length * length;
}

Postselected general_postselect(ControlOutcome j, const SystemParams& p,
                                double omega_t) {
  const PureState branch = projected_branch(j, p);
  const double length = norm(branch);
  const double probability = length * length;
  if (probability < kMinProbability) {
    throw ImpossiblePostselection("control outcome " +
                                  std::to_string(j.value()) +
                                  " has vanishing probability");
  }
  // exp(-i omega t (N_e - 1/2)) relative to the dropped exp(-i omega t (n + m + 1/2)).
  const int reference = p.n + p.m + 1;
  Terms terms;
  terms.reserve(branch.size());
  for (const auto& [ket, value] : branch) {
    const double shift = static_cast<double>(ket.excitations() - reference);
    terms.emplace_back(ket, value * std::exp(-kI * omega_t * shift) / length);
  }
  return {PureState(KetFlavor::atom_field, terms), probability};
}

double bell_transit_time(int n, int N, double g) {
  if (n < 0) throw DomainError("photon number must be non-negative");
  if (N < 1) throw DomainError("resonance index N must be a positive integer");
  if (!(g > 0.0)) throw DomainError("coupling must be positive");
  return (2.0 * N - 1.0) * std::numbers::pi / (2.0 * gamma(n, g));
}

PureState bell_state(AtomLevel atom_branch, int n, int N) {
  bell_transit_time(n, N);
  const double sign = N % 2 == 0 ? 1.0 : -1.0;
  const double angle = std::numbers::pi / 2 * (2.0 * N - 1.0) *
                       std::sqrt(static_cast<double>(n) / (n + 1.0));
  Terms terms;
  if (atom_branch == AtomLevel::excited) {
    if (n == 0) {
      throw DegenerateBranch("excited branch is empty for n = m = 0");
    }
    const Complex c6 = sign * std::sin(angle);
    if (std::abs(c6) < kMinNormalization) {
      throw DegenerateBranch("excited branch has vanishing amplitude");
    }
    const Complex amp = c6 / std::abs(c6) / std::numbers::sqrt2;
    add_fields(terms, n + 1, n - 1, amp);
    add_fields(terms, n - 1, n + 1, amp);
  } else {
    const Complex c8 = kI * sign * std::cos(angle);
    if (std::abs(c8) < kMinNormalization) {
      throw DegenerateBranch("ground branch has vanishing amplitude");
    }
    const Complex amp = c8 / std::abs(c8) / std::numbers::sqrt2;
    add_fields(terms, n, n + 1, amp);
    add_fields(terms, n + 1, n, amp);
  }
  return PureState(KetFlavor::fields, terms);
}

}  // namespace icocqed
