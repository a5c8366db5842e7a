#include "icocqed/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "icocqed/analytic.hpp"
#include "icocqed/errors.hpp"
#include "icocqed/oracle.hpp"

namespace icocqed {

SystemParams draw_params(std::mt19937_64& rng) {
  using std::numbers::pi;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> photons(0, 4);
  SystemParams p;
  p.g = 0.5 + 1.5 * unit(rng);
  p.T = 10.0 * unit(rng) / p.g;
  p.omega = 0.1 + 4.9 * unit(rng);
  p.theta = pi / 2 * unit(rng);
  p.varphi = 2 * pi * unit(rng);
  p.xi = pi / 2 * unit(rng);
  p.chi = 2 * pi * unit(rng);
  p.n = photons(rng);
  p.m = photons(rng);
  p.T0 = 3.0 * unit(rng);
  p.T1 = p.T0 + p.T + 3.0 * unit(rng);
  return p;
}

VerifyReport verify(std::uint64_t seed, int draws) {
  if (draws < 1) throw UsageError("draws: must be at least 1");
  VerifyReport report;
  report.seed = seed;
  report.draws = draws;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> linger(0.0, 2.0);
  bool consistent = true;

  for (int d = 0; d < draws; ++d) {
    const SystemParams p = draw_params(rng);
    const double t = p.exit_time() + linger(rng);
    const double omega_t = p.omega * t;
    const PureState recombined = oracle::hadamard_control(oracle::evolve(p, t));

    double total = 0.0;
    for (int j = 0; j < 2; ++j) {
      const ControlOutcome outcome(j);
      total += postselection_probability(outcome, p);

      std::optional<Postselected> closed;
      std::optional<oracle::Measurement> brute;
      try {
        closed = general_postselect(outcome, p, omega_t);
      } catch (const ImpossiblePostselection&) {
      }
      try {
        brute = oracle::measure_control(recombined, j);
      } catch (const ImpossiblePostselection&) {
      }
      if (!closed || !brute) {
        ++report.outcomes_impossible;
        // Both paths must agree that the outcome cannot happen.
        const double p_closed = closed ? closed->probability : 0.0;
        const double p_brute = brute ? brute->probability : 0.0;
        report.max_probability_deviation =
            std::max(report.max_probability_deviation, std::abs(p_closed - p_brute));
        continue;
      }
      ++report.outcomes_compared;

      // Remove the global phase exp(-i omega t (n + m + 1/2)) that the closed
      // form drops.
      const Complex global = std::exp(Complex(0.0, omega_t * (p.n + p.m + 0.5)));
      const PureState brute_state =
          oracle::schrodinger_phase(brute->state, p.omega, t).scaled(global);
      report.max_state_deviation = std::max(
          report.max_state_deviation, max_abs_difference(closed->state, brute_state));
      report.max_probability_deviation =
          std::max(report.max_probability_deviation,
                   std::abs(closed->probability - brute->probability));
    }
    report.max_normalization_deviation =
        std::max(report.max_normalization_deviation, std::abs(total - 1.0));
    if (!std::isfinite(total)) consistent = false;
  }

  report.passed = consistent && report.max_state_deviation < kVerifyTolerance &&
                  report.max_probability_deviation < kVerifyTolerance &&
                  report.max_normalization_deviation < 1e-12;
  return report;
}

std::string VerifyReport::to_text() const {
  std::ostringstream out;
  out.precision(3);
  out << std::scientific;
  out << "seed                      " << seed << '\n'
      << "draws                     " << draws << '\n'
      << "outcomes compared         " << outcomes_compared << '\n'
      << "outcomes impossible       " << outcomes_impossible << '\n'
      << "max state deviation       " << max_state_deviation << '\n'
      << "max probability deviation " << max_probability_deviation << '\n'
      << "max |P(0) + P(1) - 1|     " << max_normalization_deviation << '\n'
      << "tolerance                 " << kVerifyTolerance << '\n'
      << "result                    " << (passed ? "PASS" : "FAIL") << '\n';
  return out.str();
}

}  // namespace icocqed
