#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "icocqed/params.hpp"

namespace icocqed {

inline constexpr double kVerifyTolerance = 1e-9;

// Random draw used by the closed-form vs. brute-force comparison:
// gT in [0, 10]; theta, varphi, xi, chi uniform over their ranges;
// n, m in {0..4}; g in [0.5, 2]; random entry times T0, T1 and omega.
SystemParams draw_params(std::mt19937_64& rng);

struct VerifyReport {
  std::uint64_t seed = 0;
  int draws = 0;
  int outcomes_compared = 0;
  int outcomes_impossible = 0;
  double max_state_deviation = 0.0;
  double max_probability_deviation = 0.0;
  // |P(0) + P(1) - 1| from the closed form.
  double max_normalization_deviation = 0.0;
  bool passed = false;

  std::string to_text() const;
};

// Compare general_postselect against evolve -> hadamard_control ->
// measure_control -> schrodinger_phase for `draws` random parameter sets.
// Throws UsageError when draws < 1.
VerifyReport verify(std::uint64_t seed, int draws);

}  // namespace icocqed
