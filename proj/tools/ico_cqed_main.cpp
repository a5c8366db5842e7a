#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "icocqed/errors.hpp"
#include "icocqed/sweep.hpp"
#include "icocqed/verify.hpp"
#include "icocqed/version.hpp"

namespace {

constexpr int kUsage = 1;
constexpr int kVerifyFailed = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw icocqed::UsageError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw icocqed::UsageError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw icocqed::UsageError("write to '" + path.string() + "' failed");
}

// CSV to stdout, or to `out` plus `<stem>.meta.json` beside it.
void emit(const icocqed::SweepConfig& config, const std::string& out) {
  const icocqed::SweepTable table = icocqed::run_sweep(config);
  const std::string csv = icocqed::to_csv(table);
  if (out.empty()) {
    std::cout << csv;
    return;
  }
  std::filesystem::path meta(out);
  meta.replace_extension(".meta.json");
  write_file(out, csv);
  write_file(meta, icocqed::sweep_metadata_json(config, table) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Atom-cavity simulations with the two cavities in series or in indefinite order",
               "ico-cqed"};
  app.set_version_flag("--version", std::string(icocqed::kVersion));
  app.require_subcommand(1);

  std::string config_path, sweep_out;
  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep over gT from a JSON config");
  sweep->add_option("--config", config_path, "Sweep configuration (JSON)")->required();
  sweep->add_option("--out", sweep_out, "CSV output file (default: stdout)");

  std::string figure_id, figure_out;
  auto* figure = app.add_subcommand("figure", "Emit the data for a figure preset");
  std::string presets;
  for (auto p : icocqed::all_presets()) {
    presets += (presets.empty() ? "" : ", ") + std::string(icocqed::preset_name(p));
  }
  figure->add_option("id", figure_id, "Preset: " + presets)->required();
  figure->add_option("--out", figure_out, "CSV output file (default: stdout)");

  std::uint64_t seed = 1;
  int draws = 200;
  auto* verify = app.add_subcommand("verify", "Compare the closed forms with the matrix propagator");
  verify->add_option("--seed", seed, "Random seed")->capture_default_str();
  verify->add_option("--draws", draws, "Number of random parameter draws")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*sweep) {
      emit(icocqed::parse_sweep_config(read_file(config_path)), sweep_out);
    } else if (*figure) {
      const auto preset = icocqed::parse_preset(figure_id);
      if (!preset) throw icocqed::UsageError("unknown figure '" + figure_id + "' (" + presets + ")");
      emit(icocqed::preset_config(*preset), figure_out);
    } else if (*verify) {
      const icocqed::VerifyReport report = icocqed::verify(seed, draws);
      std::cout << report.to_text();
      return report.passed ? 0 : kVerifyFailed;
    }
  } catch (const icocqed::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return 0;
}
