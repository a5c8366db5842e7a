#include "icocqed/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <thread>

#include <nlohmann/json.hpp>

#include "icocqed/analytic.hpp"
#include "icocqed/errors.hpp"
#include "icocqed/observables.hpp"
#include "icocqed/params.hpp"
#include "icocqed/version.hpp"

namespace icocqed {

namespace {

using nlohmann::json;

constexpr std::pair<SweepScenario, std::string_view> kScenarioNames[] = {
    {SweepScenario::series_c0c1, "series_C0C1"},
    {SweepScenario::series_c1c0, "series_C1C0"},
    {SweepScenario::ico_j0, "ico_j0"},
    {SweepScenario::ico_j1, "ico_j1"},
};

constexpr std::pair<FigurePreset, std::string_view> kPresetNames[] = {
    {FigurePreset::fig2a, "fig2a"}, {FigurePreset::fig2b, "fig2b"},
    {FigurePreset::fig2c, "fig2c"}, {FigurePreset::fig2d, "fig2d"},
    {FigurePreset::fig2e, "fig2e"}, {FigurePreset::fig2f, "fig2f"},
    {FigurePreset::fig3a, "fig3a"}, {FigurePreset::fig3b, "fig3b"},
    {FigurePreset::fig4a, "fig4a"}, {FigurePreset::fig4b, "fig4b"},
    {FigurePreset::fig5a, "fig5a"}, {FigurePreset::fig5b, "fig5b"},
    {FigurePreset::fig5c, "fig5c"},
};

bool is_ico(SweepScenario s) {
  return s == SweepScenario::ico_j0 || s == SweepScenario::ico_j1;
}

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // no "-0"
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

int parse_int(std::string_view text, std::string_view what) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto result = std::from_chars(text.data(), end, value);
  if (result.ec != std::errc() || result.ptr != end) {
    throw UsageError("quantities: bad integer \"" + std::string(text) + "\" in " +
                     std::string(what));
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

// Evaluates the state of one scenario at one grid point, lazily.
class PointContext {
 public:
  PointContext(const SweepConfig& config, double gT) : config_(config) {
    base_.g = 1.0;
    base_.T = gT;
    base_.n = config.n;
    base_.m = config.m;
    base_.xi = config.xi;
    base_.chi = config.chi;
    base_.theta = config.theta;
    base_.varphi = config.varphi;
  }

  // nullptr when the scenario's post-selection is impossible here.
  const PureState* state(SweepScenario scenario) {
    auto it = states_.find(scenario);
    if (it == states_.end()) it = states_.emplace(scenario, compute(scenario)).first;
    return it->second ? &*it->second : nullptr;
  }

  double control_probability(SweepScenario scenario) const {
    const int j = scenario == SweepScenario::ico_j0 ? 0 : 1;
    return postselection_probability(ControlOutcome(j), base_);
  }

 private:
  std::optional<PureState> compute(SweepScenario scenario) const {
    switch (scenario) {
      case SweepScenario::series_c0c1:
        return state_after_both(CavityOrder::c0_then_c1, base_, base_.T);
      case SweepScenario::series_c1c0:
        return state_after_both(CavityOrder::c1_then_c0, base_, base_.T);
      case SweepScenario::ico_j0:
      case SweepScenario::ico_j1:
        try {
          const int j = scenario == SweepScenario::ico_j0 ? 0 : 1;
          return general_postselect(ControlOutcome(j), base_, config_.omega_t).state;
        } catch (const ImpossiblePostselection&) {
          return std::nullopt;
        }
    }
    return std::nullopt;
  }

  const SweepConfig& config_;
  SystemParams base_;
  std::map<SweepScenario, std::optional<PureState>> states_;
};

std::optional<double> evaluate(const Quantity& q, SweepScenario scenario,
                               PointContext& point) {
  if (q.kind == Quantity::Kind::control_prob) {
    return point.control_probability(scenario);
  }
  const PureState* state = point.state(scenario);
  if (state == nullptr) return std::nullopt;
  switch (q.kind) {
    case Quantity::Kind::ket_prob:
      if (q.n < 0 || q.m < 0) return 0.0;
      return ket_probability(*state, Ket::atom_field(q.atom, q.n, q.m));
    case Quantity::Kind::entropy:
      try {
        const ConditionedState cond = condition_on_atom(*state, q.atom);
        return linear_entropy(reduced_cavity0(cond.fields));
      } catch (const ImpossiblePostselection&) {
        return std::nullopt;
      }
    case Quantity::Kind::sigma_z:
      return atomic_inversion(*state);
    case Quantity::Kind::control_prob:
      break;
  }
  return std::nullopt;
}

}  // namespace

std::string_view scenario_name(SweepScenario scenario) noexcept {
  for (const auto& [value, name] : kScenarioNames) {
    if (value == scenario) return name;
  }
  return "?";
}

std::optional<SweepScenario> parse_scenario(std::string_view text) {
  for (const auto& [value, name] : kScenarioNames) {
    if (name == text) return value;
  }
  return std::nullopt;
}

std::string Quantity::id() const {
  std::string out;
  if (scenario) out = std::string(scenario_name(*scenario)) + ":";
  switch (kind) {
    case Kind::ket_prob:
      out += "ket_prob(" + std::string(1, atom_symbol(atom)) + "," +
             std::to_string(n) + "," + std::to_string(m) + ")";
      break;
    case Kind::entropy:
      out += "entropy(" + std::string(1, atom_symbol(atom)) + ")";
      break;
    case Kind::sigma_z:
      out += "sigma_z";
      break;
    case Kind::control_prob:
      out += "control_prob";
      break;
  }
  return out;
}

Quantity Quantity::parse(std::string_view text) {
  Quantity q;
  std::string_view body = trim(text);
  if (const auto colon = body.find(':'); colon != std::string_view::npos) {
    const auto scenario = parse_scenario(trim(body.substr(0, colon)));
    if (!scenario) {
      throw UsageError("quantities: unknown scenario prefix in \"" +
                       std::string(text) + "\"");
    }
    q.scenario = scenario;
    body = trim(body.substr(colon + 1));
  }
  const auto open = body.find('(');
  const std::string_view name = body.substr(0, open);
  std::vector<std::string_view> args;
  if (open != std::string_view::npos) {
    if (body.back() != ')') {
      throw UsageError("quantities: missing ')' in \"" + std::string(text) + "\"");
    }
    std::string_view inner = body.substr(open + 1, body.size() - open - 2);
    while (true) {
      const auto comma = inner.find(',');
      args.push_back(trim(inner.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      inner.remove_prefix(comma + 1);
    }
  }
  const auto atom_arg = [&](std::string_view a) {
    if (a != "e" && a != "g") {
      throw UsageError("quantities: atom level must be e or g in \"" +
                       std::string(text) + "\"");
    }
    return parse_atom_level(a);
  };
  if (name == "ket_prob" && args.size() == 3) {
    q.kind = Kind::ket_prob;
    q.atom = atom_arg(args[0]);
    q.n = parse_int(args[1], text);
    q.m = parse_int(args[2], text);
  } else if (name == "entropy" && args.size() == 1) {
    q.kind = Kind::entropy;
    q.atom = atom_arg(args[0]);
  } else if (name == "sigma_z" && args.empty()) {
    q.kind = Kind::sigma_z;
  } else if (name == "control_prob" && args.empty()) {
    q.kind = Kind::control_prob;
  } else {
    throw UsageError("quantities: cannot parse \"" + std::string(text) + "\"");
  }
  return q;
}

void SweepConfig::validate() const {
  if (quantities.empty()) throw UsageError("quantities: must not be empty");
  for (const auto& q : quantities) {
    if (q.kind == Quantity::Kind::control_prob && !is_ico(q.scenario.value_or(scenario))) {
      throw UsageError("quantities: control_prob needs an ico scenario (" + q.id() + ")");
    }
  }
  if (!std::isfinite(gT_step) || gT_step <= 0.0) {
    throw UsageError("gT_step: must be positive");
  }
  if (!std::isfinite(gT_start) || gT_start < 0.0) {
    throw UsageError("gT_start: must be non-negative");
  }
  if (!std::isfinite(gT_stop) || gT_stop < gT_start) {
    throw UsageError("gT_stop: must be >= gT_start");
  }
  if ((gT_stop - gT_start) / gT_step > 1e8) {
    throw UsageError("gT_step: grid would exceed 1e8 points");
  }
  if (!std::isfinite(omega_t)) throw UsageError("omega_t: must be finite");
  SystemParams p;
  p.n = n;
  p.m = m;
  p.xi = xi;
  p.chi = chi;
  p.theta = theta;
  p.varphi = varphi;
  try {
    p.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

std::vector<double> SweepConfig::grid() const {
  const auto count =
      static_cast<std::size_t>(std::floor((gT_stop - gT_start) / gT_step + 1e-9)) + 1;
  std::vector<double> points(count);
  for (std::size_t i = 0; i < count; ++i) {
    // Rounded to 1e-12 so decimal steps print as written.
    points[i] = std::round((gT_start + static_cast<double>(i) * gT_step) * 1e12) / 1e12;
  }
  return points;
}

SweepTable run_sweep(const SweepConfig& config) {
  config.validate();
  SweepTable table;
  table.header.emplace_back("gT");
  for (const auto& q : config.quantities) table.header.push_back(q.id());
  table.gT = config.grid();
  table.values.resize(table.gT.size());

  const auto fill = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      PointContext point(config, table.gT[i]);
      auto& row = table.values[i];
      row.reserve(config.quantities.size());
      for (const auto& q : config.quantities) {
        row.push_back(evaluate(q, q.scenario.value_or(config.scenario), point));
      }
    }
  };

  const std::size_t total = table.gT.size();
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 8);
  if (workers == 1 || total < 256) {
    fill(0, total);
    return table;
  }
  const std::size_t chunk = (total + workers - 1) / workers;
  {
    std::vector<std::jthread> threads;
    for (std::size_t begin = 0; begin < total; begin += chunk) {
      threads.emplace_back(fill, begin, std::min(total, begin + chunk));
    }
  }
  return table;
}

std::string to_csv(const SweepTable& table) {
  std::string out;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c) out += ',';
    out += table.header[c];
  }
  out += '\n';
  for (std::size_t r = 0; r < table.gT.size(); ++r) {
    out += format_number(table.gT[r]);
    for (const auto& cell : table.values[r]) {
      out += ',';
      if (cell) out += format_number(*cell);
    }
    out += '\n';
  }
  return out;
}

namespace {

json config_to_json_object(const SweepConfig& config) {
  json quantities = json::array();
  for (const auto& q : config.quantities) quantities.push_back(q.id());
  return json{
      {"scenario", scenario_name(config.scenario)},
      {"quantities", quantities},
      {"n", config.n},
      {"m", config.m},
      {"xi", config.xi},
      {"chi", config.chi},
      {"theta", config.theta},
      {"varphi", config.varphi},
      {"gT_start", config.gT_start},
      {"gT_stop", config.gT_stop},
      {"gT_step", config.gT_step},
      {"omega_t", config.omega_t},
  };
}

}  // namespace

SweepConfig parse_sweep_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw UsageError("config: top level must be an object");

  SweepConfig config;
  const auto number = [&](const std::string& key, double& target) {
    if (!doc.contains(key)) return;
    if (!doc[key].is_number()) throw UsageError(key + ": must be a number");
    target = doc[key].get<double>();
  };
  const auto integer = [&](const std::string& key, int& target) {
    if (!doc.contains(key)) return;
    if (!doc[key].is_number_integer()) throw UsageError(key + ": must be an integer");
    target = doc[key].get<int>();
  };

  static const std::vector<std::string> known = {
      "scenario", "quantities", "n",       "m",        "xi",      "chi",
      "theta",    "varphi",     "gT_start", "gT_stop", "gT_step", "omega_t"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw UsageError(key + ": unknown config field");
    }
  }

  if (!doc.contains("scenario") || !doc["scenario"].is_string()) {
    throw UsageError("scenario: required string field");
  }
  const auto scenario = parse_scenario(doc["scenario"].get<std::string>());
  if (!scenario) {
    throw UsageError("scenario: expected series_C0C1, series_C1C0, ico_j0 or ico_j1");
  }
  config.scenario = *scenario;

  if (!doc.contains("quantities") || !doc["quantities"].is_array()) {
    throw UsageError("quantities: required array field");
  }
  for (const auto& entry : doc["quantities"]) {
    if (!entry.is_string()) throw UsageError("quantities: entries must be strings");
    config.quantities.push_back(Quantity::parse(entry.get<std::string>()));
  }

  integer("n", config.n);
  integer("m", config.m);
  number("xi", config.xi);
  number("chi", config.chi);
  number("theta", config.theta);
  number("varphi", config.varphi);
  number("gT_start", config.gT_start);
  number("gT_stop", config.gT_stop);
  number("gT_step", config.gT_step);
  number("omega_t", config.omega_t);

  config.validate();
  return config;
}

std::string sweep_config_to_json(const SweepConfig& config) {
  return config_to_json_object(config).dump(2);
}

std::string sweep_metadata_json(const SweepConfig& config, const SweepTable& table) {
  const json meta{
      {"library", "ico_cqed"},
      {"library_version", kVersion},
      {"config", config_to_json_object(config)},
      {"grid_points", table.gT.size()},
      {"columns", table.header},
      {"g", 1.0},
  };
  return meta.dump(2) + "\n";
}

std::string_view preset_name(FigurePreset preset) noexcept {
  for (const auto& [value, name] : kPresetNames) {
    if (value == preset) return name;
  }
  return "?";
}

std::optional<FigurePreset> parse_preset(std::string_view text) {
  for (const auto& [value, name] : kPresetNames) {
    if (name == text) return value;
  }
  return std::nullopt;
}

const std::vector<FigurePreset>& all_presets() {
  static const std::vector<FigurePreset> presets = [] {
    std::vector<FigurePreset> out;
    for (const auto& [value, name] : kPresetNames) out.push_back(value);
    return out;
  }();
  return presets;
}

SweepConfig preset_config(FigurePreset preset) {
  SweepConfig config;
  const auto ket = [](AtomLevel atom, int n, int m,
                      std::optional<SweepScenario> scenario = std::nullopt) {
    Quantity q;
    q.kind = Quantity::Kind::ket_prob;
    q.atom = atom;
    q.n = n;
    q.m = m;
    q.scenario = scenario;
    return q;
  };
  const auto of_kind = [](Quantity::Kind kind, SweepScenario scenario,
                          AtomLevel atom = AtomLevel::excited) {
    Quantity q;
    q.kind = kind;
    q.scenario = scenario;
    q.atom = atom;
    return q;
  };
  constexpr auto e = AtomLevel::excited;
  constexpr auto g = AtomLevel::ground;
  constexpr auto series = SweepScenario::series_c0c1;
  constexpr auto ico = SweepScenario::ico_j0;

  // Series panels: (a, c, e) show |e,n,m> and |g,n,m+1>; (b, d, f) show
  // |g,n+1,m> and |e,n+1,m-1>.
  const auto series_panel = [&](int n, int m, bool first_column) {
    config.scenario = series;
    config.n = n;
    config.m = m;
    if (first_column) {
      config.quantities = {ket(e, n, m), ket(g, n, m + 1)};
    } else {
      config.quantities = {ket(g, n + 1, m), ket(e, n + 1, m - 1)};
    }
  };

  switch (preset) {
    case FigurePreset::fig2a: series_panel(0, 0, true); break;
    case FigurePreset::fig2b: series_panel(0, 0, false); break;
    case FigurePreset::fig2c: series_panel(5, 5, true); break;
    case FigurePreset::fig2d: series_panel(5, 5, false); break;
    case FigurePreset::fig2e: series_panel(4, 5, true); break;
    case FigurePreset::fig2f: series_panel(4, 5, false); break;
    case FigurePreset::fig3a:
      config.scenario = ico;
      config.quantities = {ket(e, 0, 0)};
      break;
    case FigurePreset::fig3b:
      config.scenario = ico;
      config.quantities = {ket(g, 0, 1), ket(g, 1, 0)};
      break;
    case FigurePreset::fig4a:
      config.scenario = ico;
      config.n = config.m = 1;
      config.quantities = {of_kind(Quantity::Kind::entropy, series, e),
                           of_kind(Quantity::Kind::entropy, ico, e)};
      break;
    case FigurePreset::fig4b:
      config.scenario = ico;
      config.quantities = {of_kind(Quantity::Kind::entropy, series, g),
                           of_kind(Quantity::Kind::entropy, ico, g)};
      break;
    case FigurePreset::fig5a:
    case FigurePreset::fig5b:
    case FigurePreset::fig5c:
      config.scenario = ico;
      config.n = preset == FigurePreset::fig5b ? 1 : 0;
      config.m = preset == FigurePreset::fig5a ? 0 : 1;
      config.quantities = {of_kind(Quantity::Kind::sigma_z, series),
                           of_kind(Quantity::Kind::sigma_z, ico)};
      break;
  }
  return config;
}

}  // namespace icocqed
