#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace icocqed {

using Complex = std::complex<double>;

// Amplitudes with magnitude below this are never stored.
inline constexpr double kPruneEpsilon = 1e-15;

enum class AtomLevel : std::uint8_t { excited = 0, ground = 1 };

char atom_symbol(AtomLevel level) noexcept;
AtomLevel parse_atom_level(std::string_view text);

// Which factors a ket carries: control qubit, atom, and the two Fock numbers.
enum class KetFlavor : std::uint8_t {
  full,        // |c> (x) |l> (x) |n>_0 (x) |m>_1
  atom_field,  // |l> (x) |n>_0 (x) |m>_1
  fields,      // |n>_0 (x) |m>_1
};

std::string_view flavor_name(KetFlavor flavor) noexcept;

// Basis label of the control (x) atom (x) two-mode Fock space.
//
// Ordering is lexicographic in (control, atom, n, m) with excited < ground,
// which fixes the order of serialized states. Factories reject negative
// occupations, so no ket with n < 0 or m < 0 can exist.
class Ket {
 public:
  static Ket fields(int n, int m);
  static Ket atom_field(AtomLevel atom, int n, int m);
  static Ket full(int control, AtomLevel atom, int n, int m);

  KetFlavor flavor() const noexcept;
  bool has_control() const noexcept { return control_ >= 0; }
  bool has_atom() const noexcept { return atom_ >= 0; }

  int control() const;
  AtomLevel atom() const;
  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }

  // Atom excitation plus total photon number.
  int excitations() const noexcept;

  Ket with_control(int control) const;
  Ket without_control() const;
  Ket without_atom() const;

  std::string to_string() const;

  friend auto operator<=>(const Ket&, const Ket&) = default;
  friend bool operator==(const Ket&, const Ket&) = default;

 private:
  Ket(int control, int atom, int n, int m);

  std::int8_t control_;
  std::int8_t atom_;
  std::int32_t n_;
  std::int32_t m_;
};

// Sparse superposition of kets of a single flavor.
//
// Immutable after construction. Duplicate kets passed to the constructor are
// summed, amplitudes below kPruneEpsilon are dropped, and non-finite
// amplitudes are rejected.
class PureState {
 public:
  using Term = std::pair<Ket, Complex>;
  using Map = std::map<Ket, Complex>;

  explicit PureState(KetFlavor flavor) : flavor_(flavor) {}
  PureState(KetFlavor flavor, const std::vector<Term>& terms);
  PureState(KetFlavor flavor, std::initializer_list<Term> terms);

  static PureState basis(const Ket& ket);

  KetFlavor flavor() const noexcept { return flavor_; }
  const Map& amplitudes() const noexcept { return amplitudes_; }
  bool empty() const noexcept { return amplitudes_.empty(); }
  std::size_t size() const noexcept { return amplitudes_.size(); }

  // Zero for kets not in the support.
  Complex amplitude(const Ket& ket) const;

  PureState scaled(Complex factor) const;
  // Throws DomainError on the zero state.
  PureState normalized() const;

  auto begin() const noexcept { return amplitudes_.begin(); }
  auto end() const noexcept { return amplitudes_.end(); }

 private:
  void insert(const Ket& ket, Complex value);
  void prune();

  KetFlavor flavor_;
  Map amplitudes_;
};

// <a|b>. Throws FlavorMismatch when the flavors differ.
Complex inner_product(const PureState& a, const PureState& b);
double norm(const PureState& a);
PureState scale_and_add(Complex alpha, const PureState& a, Complex beta,
                        const PureState& b);

// Max-norm of the amplitude difference over the union of supports.
double max_abs_difference(const PureState& a, const PureState& b);

// {"kets":[{"control":0|1|null,"atom":"e"|"g"|null,"n":..,"m":..,"re":..,"im":..}]}
// Floats are written with 17 significant digits, so parsing the output
// reproduces every amplitude exactly.
std::string to_json(const PureState& state);
PureState state_from_json(std::string_view text);

}  // namespace icocqed
