#include "icocqed/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <vector>

#include "icocqed/analytic.hpp"
#include "icocqed/errors.hpp"

namespace icocqed {

namespace {

constexpr double kMinProbability = 1e-12;

void require_excited_start(const SystemParams& p) {
  if (p.xi != 0.0) {
    throw DomainError("closed-form inversion requires the atom to start excited (xi = 0)");
  }
}

void require_fields(const PureState& s) {
  if (s.flavor() != KetFlavor::fields) {
    throw FlavorMismatch("partial trace expects a fields-only state");
  }
}

// rho_kept = Tr_other |psi><psi| with `kept` selecting n (cavity 0) or m.
template <typename Kept, typename Traced>
FieldDensityMatrix partial_trace(const PureState& fields, Kept kept, Traced traced) {
  require_fields(fields);
  if (fields.empty()) throw DomainError("partial trace of the zero state");
  int low = std::numeric_limits<int>::max();
  int high = 0;
  for (const auto& [ket, value] : fields) {
    low = std::min(low, kept(ket));
    high = std::max(high, kept(ket));
  }
  const int dim = high - low + 1;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [a, va] : fields) {
    for (const auto& [b, vb] : fields) {
      if (traced(a) != traced(b)) continue;
      rho(kept(a) - low, kept(b) - low) += va * std::conj(vb);
    }
  }
  return FieldDensityMatrix(low, std::move(rho));
}

int support_dimension(const PureState& fields, bool cavity0) {
  std::set<int> labels;
  for (const auto& [ket, value] : fields) labels.insert(cavity0 ? ket.n() : ket.m());
  return static_cast<int>(labels.size());
}

}  // namespace

double ket_probability(const PureState& s, const Ket& k) {
  return std::norm(s.amplitude(k));
}

ConditionedState condition_on_atom(const PureState& s, AtomLevel level) {
  if (s.flavor() != KetFlavor::atom_field) {
    throw FlavorMismatch("condition_on_atom expects an atom-field state");
  }
  std::vector<PureState::Term> terms;
  double probability = 0.0;
  for (const auto& [ket, value] : s) {
    if (ket.atom() != level) continue;
    terms.emplace_back(ket.without_atom(), value);
    probability += std::norm(value);
  }
  if (probability < kMinProbability) {
    throw ImpossiblePostselection(std::string("atom level ") + atom_symbol(level) +
                                  " has vanishing probability");
  }
  return {PureState(KetFlavor::fields, terms).scaled(1.0 / std::sqrt(probability)),
          probability};
}

FieldDensityMatrix reduced_cavity0(const PureState& fields) {
  return partial_trace(
      fields, [](const Ket& k) { return k.n(); }, [](const Ket& k) { return k.m(); });
}

FieldDensityMatrix reduced_cavity1(const PureState& fields) {
  return partial_trace(
      fields, [](const Ket& k) { return k.m(); }, [](const Ket& k) { return k.n(); });
}

double linear_entropy(const FieldDensityMatrix& rho) {
  return 1.0 - rho.elements().cwiseAbs2().sum();
}

EntropyReport entropy_report(const PureState& atom_field, AtomLevel level,
                             Arrangement scenario) {
  const ConditionedState conditioned = condition_on_atom(atom_field, level);
  const double value = linear_entropy(reduced_cavity0(conditioned.fields));
  const int d = std::min(support_dimension(conditioned.fields, true),
                         support_dimension(conditioned.fields, false));
  const double bound = 1.0 - 1.0 / d;
  if (value > bound + 1e-12 || value < -1e-12) {
    throw std::logic_error("linear entropy outside [0, 1 - 1/d]");
  }
  return {value, bound, level, scenario};
}

double atomic_inversion(const PureState& atom_field) {
  if (atom_field.flavor() != KetFlavor::atom_field) {
    throw FlavorMismatch("atomic_inversion expects an atom-field state");
  }
  double sum = 0.0;
  for (const auto& [ket, value] : atom_field) {
    sum += (ket.atom() == AtomLevel::excited ? 1.0 : -1.0) * std::norm(value);
  }
  return sum;
}

double sigma_z_series(const SystemParams& p) {
  p.validate();
  require_excited_start(p);
  const double x = p.g * p.T;
  const double cn = std::cos(x * std::sqrt(1.0 + p.n));
  const double sn = std::sin(x * std::sqrt(1.0 + p.n));
  return std::cos(2.0 * x * std::sqrt(1.0 + p.m)) * cn * cn -
         std::cos(2.0 * x * std::sqrt(static_cast<double>(p.m))) * sn * sn;
}

double sigma_z_ico(const SystemParams& p) {
  require_excited_start(p);
  const ControlOutcome outcome(0);
  const double norm_sq = control_probability(outcome, p);
  if (std::sqrt(norm_sq) <= 1e-10) {
    throw ImpossiblePostselection("control outcome 0 has vanishing probability");
  }
  const CoeffSet c = coeffs_c(p, p.T);
  const CoeffSet s = coeffs_s(p, p.T);
  const double numerator = std::norm(c(1) + s(1)) + std::norm(c(6)) +
                           std::norm(s(6)) - std::norm(c(3) + s(8)) -
                           std::norm(c(8) + s(3));
  return numerator / (4.0 * norm_sq);
}

double excitation_expectation(const PureState& s) {
  double sum = 0.0;
  for (const auto& [ket, value] : s) sum += ket.excitations() * std::norm(value);
  return sum;
}

}  // namespace icocqed
