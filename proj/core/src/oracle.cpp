#include "icocqed/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "icocqed/errors.hpp"

namespace icocqed::oracle {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kGuardTolerance = 1e-12;
constexpr double kMinProbability = 1e-12;

int atom_index(AtomLevel atom) { return atom == AtomLevel::excited ? 0 : 1; }

void require_cavity(int cavity) {
  if (cavity != 0 && cavity != 1) throw DomainError("cavity must be 0 or 1");
}

// Atom-field index with photon number k in `cavity` and `spectator` photons
// in the other one.
int index_in(const TruncationWindow& w, int cavity, AtomLevel atom, int k,
             int spectator) {
  return cavity == 0 ? w.index(atom, k, spectator) : w.index(atom, spectator, k);
}

}  // namespace

TruncationWindow::TruncationWindow(int n_max) : n_max_(n_max) {
  if (n_max < 1) throw DomainError("truncation n_max must be positive");
}

TruncationWindow TruncationWindow::for_params(const SystemParams& p) {
  return TruncationWindow(std::max(p.n, p.m) + 2);
}

int TruncationWindow::index(AtomLevel atom, int n, int m) const {
  if (n < 0 || m < 0 || n > n_max_ || m > n_max_) {
    throw DomainError("Fock label outside the truncation window");
  }
  return (atom_index(atom) * levels() + n) * levels() + m;
}

Ket TruncationWindow::atom_field_ket(int index) const {
  const int m = index % levels();
  const int n = (index / levels()) % levels();
  const int atom = index / (levels() * levels());
  return Ket::atom_field(atom == 0 ? AtomLevel::excited : AtomLevel::ground, n, m);
}

UnitaryMatrix::UnitaryMatrix(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw DomainError("unitary matrix must be square");
  }
  const Eigen::MatrixXcd defect =
      matrix_.adjoint() * matrix_ -
      Eigen::MatrixXcd::Identity(matrix_.rows(), matrix_.cols());
  if (defect.size() > 0 && defect.cwiseAbs().maxCoeff() > 1e-10) {
    throw DomainError("matrix is not unitary to 1e-10");
  }
}

Schedule Schedule::from_params(const SystemParams& p) {
  p.validate();
  return {p.T0, p.second_entry(), p.T};
}

Eigen::MatrixXcd jc_generator(int cavity, double g, const TruncationWindow& w) {
  require_cavity(cavity);
  const int dim = w.atom_field_dimension();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (int spectator = 0; spectator <= w.n_max(); ++spectator) {
    for (int k = 0; k < w.n_max(); ++k) {
      // a^dagger sigma_- : |e,k> -> sqrt(k+1) |g,k+1>, plus its adjoint.
      const int upper = index_in(w, cavity, AtomLevel::excited, k, spectator);
      const int lower = index_in(w, cavity, AtomLevel::ground, k + 1, spectator);
      const double element = g * std::sqrt(static_cast<double>(k + 1));
      h(lower, upper) = element;
      h(upper, lower) = element;
    }
  }
  return h;
}

UnitaryMatrix jc_propagator(int cavity, double t, double g,
                            const TruncationWindow& w) {
  require_cavity(cavity);
  if (!(t >= 0.0)) throw DomainError("propagation time must be >= 0");
  const int dim = w.atom_field_dimension();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
  for (int spectator = 0; spectator <= w.n_max(); ++spectator) {
    const int ground_vacuum = index_in(w, cavity, AtomLevel::ground, 0, spectator);
    const int excited_top =
        index_in(w, cavity, AtomLevel::excited, w.n_max(), spectator);
    u(ground_vacuum, ground_vacuum) = 1.0;
    u(excited_top, excited_top) = 1.0;

    for (int k = 0; k < w.n_max(); ++k) {
      const int upper = index_in(w, cavity, AtomLevel::excited, k, spectator);
      const int lower = index_in(w, cavity, AtomLevel::ground, k + 1, spectator);
      const double frequency = g * std::sqrt(static_cast<double>(k + 1));
      // |+-,k> = +-(|e,k> +- |g,k+1>) / sqrt 2 with eigenvalue +-frequency.
      for (const double branch : {1.0, -1.0}) {
        Eigen::Vector2cd dressed;
        dressed << branch / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
        const Complex phase = std::exp(-kI * branch * frequency * t);
        const Eigen::Matrix2cd projector = dressed * dressed.adjoint();
        const int idx[2] = {upper, lower};
        for (int r = 0; r < 2; ++r) {
          for (int c = 0; c < 2; ++c) u(idx[r], idx[c]) += phase * projector(r, c);
        }
      }
    }
  }
  return UnitaryMatrix(std::move(u));
}

PureState initial_state(const SystemParams& p) {
  p.validate();
  const Complex control[2] = {std::cos(p.theta),
                              std::exp(kI * p.varphi) * std::sin(p.theta)};
  const Complex atom[2] = {std::cos(p.xi), std::exp(kI * p.chi) * std::sin(p.xi)};
  std::vector<PureState::Term> terms;
  for (int c = 0; c < 2; ++c) {
    terms.emplace_back(Ket::full(c, AtomLevel::excited, p.n, p.m), control[c] * atom[0]);
    terms.emplace_back(Ket::full(c, AtomLevel::ground, p.n, p.m), control[c] * atom[1]);
  }
  return PureState(KetFlavor::full, terms);
}

Eigen::VectorXcd to_vector(const PureState& s, const TruncationWindow& w) {
  const int block = w.atom_field_dimension();
  const bool full = s.flavor() == KetFlavor::full;
  if (!full && s.flavor() != KetFlavor::atom_field) {
    throw FlavorMismatch("to_vector expects a full or atom-field state");
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(full ? 2 * block : block);
  for (const auto& [ket, value] : s) {
    const int offset = full ? ket.control() * block : 0;
    v(offset + w.index(ket.atom(), ket.n(), ket.m())) = value;
  }
  return v;
}

PureState from_vector(const Eigen::VectorXcd& v, KetFlavor flavor,
                      const TruncationWindow& w) {
  const int block = w.atom_field_dimension();
  std::vector<PureState::Term> terms;
  for (int i = 0; i < v.size(); ++i) {
    if (v(i) == Complex{}) continue;
    const Ket ket = w.atom_field_ket(i % block);
    terms.emplace_back(flavor == KetFlavor::full ? ket.with_control(i / block) : ket,
                       v(i));
  }
  return PureState(flavor, terms);
}

PureState evolve(const SystemParams& p, double t, const TruncationWindow& w) {
  const Schedule schedule = Schedule::from_params(p);
  if (!(t >= 0.0)) throw DomainError("evolution time must be >= 0");

  // Time spent so far inside the first and the second cavity. Outside the
  // cavities the interaction-picture state is frozen.
  const double in_first = std::clamp(t - schedule.T0, 0.0, schedule.T);
  const double in_second = std::clamp(t - schedule.T1, 0.0, schedule.T);

  const int block = w.atom_field_dimension();
  Eigen::VectorXcd psi = to_vector(initial_state(p), w);
  for (int control = 0; control < 2; ++control) {
    // Control |0> visits C0 first, control |1> visits C1 first.
    const int first = control;
    const int second = 1 - control;
    const auto u_first = jc_propagator(first, in_first, p.g, w);
    const auto u_second = jc_propagator(second, in_second, p.g, w);
    psi.segment(control * block, block) =
        u_second.matrix() * (u_first.matrix() * psi.segment(control * block, block));
  }

  double guard = 0.0;
  for (int i = 0; i < psi.size(); ++i) {
    const Ket ket = w.atom_field_ket(i % block);
    if (ket.n() == w.n_max() || ket.m() == w.n_max()) guard += std::norm(psi(i));
  }
  if (guard >= kGuardTolerance) {
    throw TruncationOverflow("population " + std::to_string(guard) +
                             " reached the truncation guard row");
  }
  return from_vector(psi, KetFlavor::full, w);
}

PureState evolve(const SystemParams& p, double t) {
  return evolve(p, t, TruncationWindow::for_params(p));
}

PureState hadamard_control(const PureState& s) {
  if (s.flavor() != KetFlavor::full) {
    throw FlavorMismatch("hadamard_control expects a full state");
  }
  std::vector<PureState::Term> terms;
  terms.reserve(2 * s.size());
  for (const auto& [ket, value] : s) {
    const Ket rest = ket.without_control();
    const double sign = ket.control() == 0 ? 1.0 : -1.0;
    terms.emplace_back(rest.with_control(0), value / std::numbers::sqrt2);
    terms.emplace_back(rest.with_control(1), sign * value / std::numbers::sqrt2);
  }
  return PureState(KetFlavor::full, terms);
}

Measurement measure_control(const PureState& s, int j) {
  if (s.flavor() != KetFlavor::full) {
    throw FlavorMismatch("measure_control expects a full state");
  }
  if (j != 0 && j != 1) throw DomainError("control outcome must be 0 or 1");
  std::vector<PureState::Term> terms;
  double probability = 0.0;
  for (const auto& [ket, value] : s) {
    if (ket.control() != j) continue;
    terms.emplace_back(ket.without_control(), value);
    probability += std::norm(value);
  }
  if (probability < kMinProbability) {
    throw ImpossiblePostselection("control outcome " + std::to_string(j) +
                                  " has vanishing probability");
  }
  return {PureState(KetFlavor::atom_field, terms).scaled(1.0 / std::sqrt(probability)),
          probability};
}

PureState schrodinger_phase(const PureState& s, double omega, double t) {
  std::vector<PureState::Term> terms;
  terms.reserve(s.size());
  for (const auto& [ket, value] : s) {
    const double excitations = static_cast<double>(ket.excitations());
    terms.emplace_back(ket, value * std::exp(-kI * omega * t * (excitations - 0.5)));
  }
  return PureState(s.flavor(), terms);
}

}  // namespace icocqed::oracle
