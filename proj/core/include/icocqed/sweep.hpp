#pragma once

#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "icocqed/state.hpp"

namespace icocqed {

enum class SweepScenario { series_c0c1, series_c1c0, ico_j0, ico_j1 };

std::string_view scenario_name(SweepScenario scenario) noexcept;
std::optional<SweepScenario> parse_scenario(std::string_view text);

// One output column.
//
// Text form: [<scenario>:]ket_prob(<e|g>,<n>,<m>) | entropy(<e|g>) | sigma_z |
// control_prob. A scenario prefix evaluates the column in that scenario
// instead of the config's default one. ket_prob labels may be negative; such
// kets lie outside the state space and report probability 0.
struct Quantity {
  enum class Kind { ket_prob, entropy, sigma_z, control_prob };

  Kind kind = Kind::sigma_z;
  std::optional<SweepScenario> scenario;
  AtomLevel atom = AtomLevel::excited;
  int n = 0;
  int m = 0;

  std::string id() const;
  static Quantity parse(std::string_view text);
};

// Parameter sweep over gT with g = 1, so T = gT and omega t = omega_t.
struct SweepConfig {
  SweepScenario scenario = SweepScenario::ico_j0;
  std::vector<Quantity> quantities;
  int n = 0;
  int m = 0;
  double xi = 0.0;
  double chi = 0.0;
  double theta = std::numbers::pi / 4;
  double varphi = 0.0;
  double gT_start = 0.0;
  double gT_stop = 10.0;
  double gT_step = 0.01;
  double omega_t = 0.0;

  // Throws UsageError naming the offending field.
  void validate() const;
  std::vector<double> grid() const;
};

// Row-major table; an empty optional is a point where a conditional quantity
// is undefined (conditioning event of zero probability).
struct SweepTable {
  std::vector<std::string> header;
  std::vector<double> gT;
  std::vector<std::vector<std::optional<double>>> values;
};

SweepTable run_sweep(const SweepConfig& config);

// Header `gT,<quantity-id>,...`, shortest round-trip doubles, empty cells for
// undefined values.
std::string to_csv(const SweepTable& table);

// JSON with the SweepConfig field names. Unknown keys and malformed values
// raise UsageError.
SweepConfig parse_sweep_config(std::string_view json);
std::string sweep_config_to_json(const SweepConfig& config);

// Sidecar metadata: resolved config, library version, grid size and columns.
std::string sweep_metadata_json(const SweepConfig& config, const SweepTable& table);

enum class FigurePreset {
  fig2a, fig2b, fig2c, fig2d, fig2e, fig2f,
  fig3a, fig3b,
  fig4a, fig4b,
  fig5a, fig5b, fig5c,
};

std::string_view preset_name(FigurePreset preset) noexcept;
std::optional<FigurePreset> parse_preset(std::string_view text);
const std::vector<FigurePreset>& all_presets();

// Every preset sweeps gT over [0, 10] in steps of 0.01.
SweepConfig preset_config(FigurePreset preset);

}  // namespace icocqed
