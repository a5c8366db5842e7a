#include "icocqed/state.hpp"

#include <cmath>
#include <algorithm>
#include <cstdio>
#include <optional>

#include <nlohmann/json.hpp>

#include "icocqed/errors.hpp"

namespace icocqed {

char atom_symbol(AtomLevel level) noexcept {
  return level == AtomLevel::excited ? 'e' : 'g';
}

AtomLevel parse_atom_level(std::string_view text) {
  if (text == "e") return AtomLevel::excited;
  if (text == "g") return AtomLevel::ground;
  throw DomainError("atom level must be \"e\" or \"g\", got \"" +
                    std::string(text) + "\"");
}

std::string_view flavor_name(KetFlavor flavor) noexcept {
  switch (flavor) {
    case KetFlavor::full:
      return "full";
    case KetFlavor::atom_field:
      return "atom-field";
    case KetFlavor::fields:
      return "fields";
  }
  return "?";
}

Ket::Ket(int control, int atom, int n, int m)
    : control_(static_cast<std::int8_t>(control)),
      atom_(static_cast<std::int8_t>(atom)),
      n_(n),
      m_(m) {
  if (n < 0 || m < 0) {
    throw DomainError("negative photon number in ket (n=" + std::to_string(n) +
                      ", m=" + std::to_string(m) + ")");
  }
}

Ket Ket::fields(int n, int m) { return Ket(-1, -1, n, m); }

Ket Ket::atom_field(AtomLevel atom, int n, int m) {
  return Ket(-1, static_cast<int>(atom), n, m);
}

Ket Ket::full(int control, AtomLevel atom, int n, int m) {
  if (control != 0 && control != 1) {
    throw DomainError("control bit must be 0 or 1");
  }
  return Ket(control, static_cast<int>(atom), n, m);
}

KetFlavor Ket::flavor() const noexcept {
  if (has_control()) return KetFlavor::full;
  if (has_atom()) return KetFlavor::atom_field;
  return KetFlavor::fields;
}

int Ket::control() const {
  if (!has_control()) throw FlavorMismatch("ket carries no control qubit");
  return control_;
}

AtomLevel Ket::atom() const {
  if (!has_atom()) throw FlavorMismatch("ket carries no atom level");
  return static_cast<AtomLevel>(atom_);
}

int Ket::excitations() const noexcept {
  return (atom_ == static_cast<int>(AtomLevel::excited) ? 1 : 0) + n_ + m_;
}

Ket Ket::with_control(int control) const {
  if (flavor() != KetFlavor::atom_field) {
    throw FlavorMismatch("with_control expects an atom-field ket");
  }
  return full(control, atom(), n_, m_);
}

Ket Ket::without_control() const {
  if (flavor() != KetFlavor::full) {
    throw FlavorMismatch("without_control expects a full ket");
  }
  return atom_field(atom(), n_, m_);
}

Ket Ket::without_atom() const {
  if (flavor() != KetFlavor::atom_field) {
    throw FlavorMismatch("without_atom expects an atom-field ket");
  }
  return fields(n_, m_);
}

std::string Ket::to_string() const {
  std::string out = "|";
  if (has_control()) out += std::to_string(control_) + ",";
  if (has_atom()) out += std::string(1, atom_symbol(atom())) + ",";
  out += std::to_string(n_) + "," + std::to_string(m_) + ">";
  return out;
}

PureState::PureState(KetFlavor flavor, const std::vector<Term>& terms)
    : flavor_(flavor) {
  for (const auto& [ket, value] : terms) insert(ket, value);
  prune();
}

PureState::PureState(KetFlavor flavor, std::initializer_list<Term> terms)
    : flavor_(flavor) {
  for (const auto& [ket, value] : terms) insert(ket, value);
  prune();
}

PureState PureState::basis(const Ket& ket) {
  return PureState(ket.flavor(), {{ket, Complex(1.0, 0.0)}});
}

void PureState::insert(const Ket& ket, Complex value) {
  if (ket.flavor() != flavor_) {
    throw FlavorMismatch("ket " + ket.to_string() + " is not of flavor " +
                         std::string(flavor_name(flavor_)));
  }
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw DomainError("non-finite amplitude for ket " + ket.to_string());
  }
  amplitudes_[ket] += value;
}

void PureState::prune() {
  std::erase_if(amplitudes_, [](const auto& entry) {
    return std::abs(entry.second) < kPruneEpsilon;
  });
}

Complex PureState::amplitude(const Ket& ket) const {
  if (ket.flavor() != flavor_) {
    throw FlavorMismatch("amplitude lookup with ket of flavor " +
                         std::string(flavor_name(ket.flavor())));
  }
  const auto it = amplitudes_.find(ket);
  return it == amplitudes_.end() ? Complex{} : it->second;
}

PureState PureState::scaled(Complex factor) const {
  std::vector<Term> terms(amplitudes_.begin(), amplitudes_.end());
  for (auto& term : terms) term.second *= factor;
  return PureState(flavor_, terms);
}

PureState PureState::normalized() const {
  const double length = norm(*this);
  if (length == 0.0) throw DomainError("cannot normalize the zero state");
  return scaled(1.0 / length);
}

namespace {

void require_same_flavor(const PureState& a, const PureState& b) {
  if (a.flavor() != b.flavor()) {
    throw FlavorMismatch("states have flavors " +
                         std::string(flavor_name(a.flavor())) + " and " +
                         std::string(flavor_name(b.flavor())));
  }
}

}  // namespace

Complex inner_product(const PureState& a, const PureState& b) {
  require_same_flavor(a, b);
  Complex sum{};
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  for (const auto& [ket, value] : small) {
    const auto it = large.amplitudes().find(ket);
    if (it == large.amplitudes().end()) continue;
    sum += &small == &a ? std::conj(value) * it->second
                        : std::conj(it->second) * value;
  }
  return sum;
}

double norm(const PureState& a) {
  double sum = 0.0;
  for (const auto& [ket, value] : a) sum += std::norm(value);
  return std::sqrt(sum);
}

PureState scale_and_add(Complex alpha, const PureState& a, Complex beta,
                        const PureState& b) {
  require_same_flavor(a, b);
  std::vector<PureState::Term> terms;
  terms.reserve(a.size() + b.size());
  for (const auto& [ket, value] : a) terms.emplace_back(ket, alpha * value);
  for (const auto& [ket, value] : b) terms.emplace_back(ket, beta * value);
  return PureState(a.flavor(), terms);
}

double max_abs_difference(const PureState& a, const PureState& b) {
  require_same_flavor(a, b);
  double worst = 0.0;
  for (const auto& [ket, value] : a) {
    worst = std::max(worst, std::abs(value - b.amplitude(ket)));
  }
  for (const auto& [ket, value] : b) {
    if (!a.amplitudes().contains(ket)) worst = std::max(worst, std::abs(value));
  }
  return worst;
}

namespace {

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

}  // namespace

std::string to_json(const PureState& state) {
  std::string out = "{\"kets\":[";
  bool first = true;
  for (const auto& [ket, value] : state) {
    if (!first) out += ',';
    first = false;
    out += "{\"control\":";
    out += ket.has_control() ? std::to_string(ket.control()) : "null";
    out += ",\"atom\":";
    out += ket.has_atom() ? std::string("\"") + atom_symbol(ket.atom()) + "\""
                          : std::string("null");
    out += ",\"n\":" + std::to_string(ket.n());
    out += ",\"m\":" + std::to_string(ket.m());
    out += ",\"re\":" + format_double(value.real());
    out += ",\"im\":" + format_double(value.imag());
    out += '}';
  }
  out += "]}";
  return out;
}

PureState state_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("state JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("kets") || !doc["kets"].is_array()) {
    throw DomainError("state JSON: expected an object with a \"kets\" array");
  }
  std::vector<PureState::Term> terms;
  std::optional<KetFlavor> flavor;
  for (const auto& entry : doc["kets"]) {
    try {
      const int n = entry.at("n").get<int>();
      const int m = entry.at("m").get<int>();
      const auto& atom = entry.at("atom");
      const auto& control = entry.at("control");
      Ket ket = Ket::fields(n, m);
      if (!atom.is_null()) {
        const AtomLevel level = parse_atom_level(atom.get<std::string>());
        ket = control.is_null() ? Ket::atom_field(level, n, m)
                                : Ket::full(control.get<int>(), level, n, m);
      } else if (!control.is_null()) {
        throw DomainError("state JSON: control without atom level");
      }
      const Complex value(entry.at("re").get<double>(),
                          entry.at("im").get<double>());
      if (!flavor) flavor = ket.flavor();
      terms.emplace_back(ket, value);
    } catch (const nlohmann::json::exception& e) {
      throw DomainError(std::string("state JSON: ") + e.what());
    }
  }
  return PureState(flavor.value_or(KetFlavor::atom_field), terms);
}

}  // namespace icocqed
