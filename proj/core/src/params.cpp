#include "icocqed/params.hpp"

#include <cmath>
#include <string>

#include "icocqed/errors.hpp"

namespace icocqed {

namespace {

void require(bool ok, const char* field, const std::string& what) {
  if (!ok) throw DomainError(std::string(field) + ": " + what);
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

void SystemParams::validate() const {
  using std::numbers::pi;
  require(finite(g) && g > 0.0, "g", "coupling must be positive");
  require(finite(T) && T >= 0.0, "T", "transit time must be non-negative");
  require(finite(omega) && omega > 0.0, "omega", "frequency must be positive");
  require(finite(theta) && theta >= 0.0 && theta <= pi / 2, "theta",
          "must lie in [0, pi/2]");
  require(finite(varphi) && varphi >= 0.0 && varphi < 2 * pi, "varphi",
          "must lie in [0, 2pi)");
  require(finite(xi) && xi >= 0.0 && xi <= pi / 2, "xi", "must lie in [0, pi/2]");
  require(finite(chi) && chi >= 0.0 && chi < 2 * pi, "chi",
          "must lie in [0, 2pi)");
  require(n >= 0, "n", "photon number must be non-negative");
  require(m >= 0, "m", "photon number must be non-negative");
  require(finite(T0) && T0 >= 0.0, "T0", "entry time must be non-negative");
  require(finite(second_entry()) && T0 + T <= second_entry(), "T1",
          "second cavity must be entered after leaving the first (T0 + T <= T1)");
}

double CoeffSet::norm_squared() const {
  double sum = 0.0;
  for (const auto& v : values) sum += std::norm(v);
  return sum;
}

}  // namespace icocqed
