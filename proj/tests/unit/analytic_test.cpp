#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "icocqed/analytic.hpp"
#include "icocqed/errors.hpp"
#include "icocqed/observables.hpp"
#include "icocqed/verify.hpp"
#include "test_support.hpp"

namespace icocqed {
namespace {

using std::numbers::pi;
using testing::excited;
constexpr auto e = AtomLevel::excited;
constexpr auto g = AtomLevel::ground;
constexpr Complex kI{0.0, 1.0};
constexpr double kHalfSqrt2 = 1.0 / std::numbers::sqrt2;

SystemParams random_atom_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> photons(0, 5);
  SystemParams p;
  p.T = 10.0 * unit(rng);
  p.xi = pi / 2 * unit(rng);
  p.chi = 2 * pi * unit(rng);
  p.n = photons(rng);
  p.m = photons(rng);
  return p;
}

TEST(Gamma, Examples) {
  EXPECT_EQ(gamma(0, 1.0), 1.0);
  EXPECT_EQ(gamma(-1, 5.0), 0.0);
  EXPECT_EQ(gamma(3, 1.0), 2.0);
  EXPECT_THROW(gamma(-2, 1.0), DomainError);
}

TEST(CoeffsC, OnlyC8AtFirstResonance) {
  const auto p = excited(0, 0, pi / 2);
  const CoeffSet c = coeffs_c(p, p.T);
  for (int j = 1; j <= 7; ++j) EXPECT_LT(std::abs(c(j)), 1e-15) << "c" << j;
  EXPECT_LT(std::abs(c(8) - (-kI)), 1e-15);
}

TEST(CoeffsC, NoInteraction) {
  const CoeffSet c = coeffs_c(excited(2, 3, 0.0), 0.0);
  EXPECT_EQ(c(1), Complex(1.0, 0.0));
  for (int j = 2; j <= 8; ++j) EXPECT_EQ(c(j), Complex(0.0, 0.0)) << "c" << j;
}

TEST(CoeffsC, GroundAtomEmptyFirstCavity) {
  SystemParams p = excited(0, 2, 1.3);
  p.xi = pi / 2;
  const CoeffSet c = coeffs_c(p, 0.7);
  EXPECT_EQ(c(2), Complex(0.0, 0.0));
  EXPECT_EQ(c(4), Complex(0.0, 0.0));
  for (int j : {1, 3, 6, 8}) EXPECT_LT(std::abs(c(j)), 1e-16) << "c" << j;
}

TEST(CoeffsC, TauOutOfRange) {
  const auto p = excited(1, 1, 1.0);
  EXPECT_THROW(coeffs_c(p, 1.5), DomainError);
  EXPECT_THROW(coeffs_c(p, -0.1), DomainError);
  EXPECT_THROW(coeffs_s(p, 1.0001), DomainError);
}

TEST(CoeffsS, OnlyS8AtFirstResonance) {
  const auto p = excited(0, 0, pi / 2);
  const CoeffSet s = coeffs_s(p, p.T);
  for (int j = 1; j <= 7; ++j) EXPECT_LT(std::abs(s(j)), 1e-15) << "s" << j;
  EXPECT_LT(std::abs(s(8) - (-kI)), 1e-15);
}

TEST(CoeffsS, NoInteraction) {
  const CoeffSet s = coeffs_s(excited(4, 1, 0.0), 0.0);
  EXPECT_EQ(s(1), Complex(1.0, 0.0));
  for (int j = 2; j <= 8; ++j) EXPECT_EQ(s(j), Complex(0.0, 0.0));
}

TEST(CoeffsS, EqualsCWhenCavitiesHoldEqualPhotons) {
  auto rng = testing::seeded(21);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    SystemParams p = random_atom_params(rng);
    p.m = p.n;
    const double tau = p.T * unit(rng);
    const CoeffSet c = coeffs_c(p, tau);
    const CoeffSet s = coeffs_s(p, tau);
    for (int j = 1; j <= 8; ++j) EXPECT_EQ(c(j), s(j));
  }
}

TEST(Coefficients, UnitSum) {
  auto rng = testing::seeded(22);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const SystemParams p = random_atom_params(rng);
    const double tau = p.T * unit(rng);
    EXPECT_NEAR(coeffs_c(p, tau).norm_squared(), 1.0, 1e-12);
    EXPECT_NEAR(coeffs_s(p, tau).norm_squared(), 1.0, 1e-12);
  }
}

TEST(Coefficients, ExcitedAtomKillsSinXiTerms) {
  auto rng = testing::seeded(23);
  for (int i = 0; i < 50; ++i) {
    SystemParams p = random_atom_params(rng);
    p.xi = 0.0;
    const CoeffSet c = coeffs_c(p, p.T);
    const CoeffSet s = coeffs_s(p, p.T);
    for (int j : {2, 4, 5, 7}) {
      EXPECT_EQ(c(j), Complex(0.0, 0.0));
      EXPECT_EQ(s(j), Complex(0.0, 0.0));
    }
  }
}

TEST(Coefficients, NegativeOccupationAmplitudesVanishExactly) {
  auto rng = testing::seeded(24);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    SystemParams p = random_atom_params(rng);
    const double tau = p.T * unit(rng);
    p.n = 0;
    CoeffSet c = coeffs_c(p, tau);
    CoeffSet s = coeffs_s(p, tau);
    // kets with n - 1
    for (int j : {2, 4}) EXPECT_EQ(c(j), Complex(0.0, 0.0));
    for (int j : {5, 6}) EXPECT_EQ(s(j), Complex(0.0, 0.0));
    p.n = i % 4;
    p.m = 0;
    c = coeffs_c(p, tau);
    s = coeffs_s(p, tau);
    // kets with m - 1
    for (int j : {5, 6}) EXPECT_EQ(c(j), Complex(0.0, 0.0));
    for (int j : {2, 4}) EXPECT_EQ(s(j), Complex(0.0, 0.0));
  }
}

TEST(StateAfterBoth, EmissionInFirstCavity) {
  const auto p = excited(0, 0, pi / 2);
  const PureState s = state_after_both(CavityOrder::c0_then_c1, p, p.T);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_LT(std::abs(s.amplitude(Ket::atom_field(g, 1, 0)) - (-kI)), 1e-15);
}

TEST(StateAfterBoth, FullRevival) {
  const auto p = excited(0, 0, pi);
  for (auto order : {CavityOrder::c0_then_c1, CavityOrder::c1_then_c0}) {
    const PureState s = state_after_both(order, p, p.T);
    EXPECT_NEAR(std::norm(s.amplitude(Ket::atom_field(e, 0, 0))), 1.0, 1e-15);
  }
}

TEST(StateAfterBoth, IdentityWithoutInteraction) {
  auto rng = testing::seeded(31);
  for (int i = 0; i < 20; ++i) {
    SystemParams p = random_atom_params(rng);
    p.T = 0.0;
    const PureState expected(
        KetFlavor::atom_field,
        {{Ket::atom_field(e, p.n, p.m), std::cos(p.xi)},
         {Ket::atom_field(g, p.n, p.m), std::exp(kI * p.chi) * std::sin(p.xi)}});
    for (auto order : {CavityOrder::c0_then_c1, CavityOrder::c1_then_c0}) {
      EXPECT_EQ(max_abs_difference(state_after_both(order, p, 0.0), expected), 0.0);
    }
  }
}

TEST(StateAfterBoth, Normalized) {
  auto rng = testing::seeded(32);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const SystemParams p = random_atom_params(rng);
    const double tau = p.T * unit(rng);
    for (auto order : {CavityOrder::c0_then_c1, CavityOrder::c1_then_c0}) {
      EXPECT_NEAR(norm(state_after_both(order, p, tau)), 1.0, 1e-12);
    }
  }
}

TEST(StateAfterBoth, ExcitationSectorConserved) {
  auto rng = testing::seeded(33);
  for (int i = 0; i < 100; ++i) {
    SystemParams p = random_atom_params(rng);
    for (double xi : {0.0, pi / 2}) {
      p.xi = xi;
      const int sector = p.n + p.m + (xi == 0.0 ? 1 : 0);
      for (auto order : {CavityOrder::c0_then_c1, CavityOrder::c1_then_c0}) {
        for (const auto& [ket, value] : state_after_both(order, p, p.T)) {
          EXPECT_EQ(ket.excitations(), sector) << ket.to_string();
        }
      }
      if (xi == 0.0) {
        for (const auto& [ket, value] : ico_postselected_state(ControlOutcome(0), p, 1.7)) {
          EXPECT_EQ(ket.excitations(), sector);
        }
      }
    }
  }
}

TEST(StateAfterBoth, SwapSymmetry) {
  auto rng = testing::seeded(34);
  for (int i = 0; i < 100; ++i) {
    const SystemParams p = random_atom_params(rng);
    SystemParams swapped = p;
    std::swap(swapped.n, swapped.m);
    const PureState a = state_after_both(CavityOrder::c0_then_c1, p, p.T);
    const PureState b = state_after_both(CavityOrder::c1_then_c0, swapped, p.T);
    ASSERT_EQ(a.size(), b.size());
    for (const auto& [ket, value] : a) {
      EXPECT_EQ(b.amplitude(Ket::atom_field(ket.atom(), ket.m(), ket.n())), value);
    }
  }
}

TEST(OverlapOrders, Examples) {
  EXPECT_EQ(overlap_orders(excited(3, 1, 0.0)), Complex(1.0, 0.0));
  EXPECT_LT(std::abs(overlap_orders(excited(0, 0, pi / 2))), 1e-15);
}

TEST(OverlapOrders, MatchesInnerProductAndIsBounded) {
  auto rng = testing::seeded(41);
  for (int i = 0; i < 300; ++i) {
    const SystemParams p = random_atom_params(rng);
    const Complex direct =
        inner_product(state_after_both(CavityOrder::c0_then_c1, p, p.T),
                      state_after_both(CavityOrder::c1_then_c0, p, p.T));
    const Complex closed = overlap_orders(p);
    EXPECT_LT(std::abs(closed - direct), 1e-12);
    EXPECT_LE(std::abs(closed), 1.0 + 1e-12);
  }
}

TEST(ControlProbability, Examples) {
  const ControlOutcome zero(0), one(1);
  EXPECT_EQ(control_probability(zero, excited(2, 2, 0.0)), 1.0);
  EXPECT_EQ(control_probability(one, excited(2, 2, 0.0)), 0.0);
  EXPECT_NEAR(control_probability(zero, excited(0, 0, pi / 2)), 0.5, 1e-15);
  EXPECT_NEAR(control_probability(one, excited(0, 0, pi / 2)), 0.5, 1e-15);
}

TEST(ControlProbability, SumsToOne) {
  auto rng = testing::seeded(42);
  for (int i = 0; i < 300; ++i) {
    const SystemParams p = random_atom_params(rng);
    EXPECT_NEAR(control_probability(ControlOutcome(0), p) +
                    control_probability(ControlOutcome(1), p),
                1.0, 2.3e-16);
  }
}

TEST(ControlProbability, RequiresBalancedControl) {
  SystemParams p = excited(0, 0, 1.0);
  p.theta = 0.3;
  EXPECT_THROW(control_probability(ControlOutcome(0), p), DomainError);
  EXPECT_THROW(ControlOutcome(2), DomainError);
}

TEST(IcoPostselectedState, BellAtFirstResonance) {
  const PureState s = ico_postselected_state(ControlOutcome(0), excited(0, 0, pi / 2), 0.0);
  const Complex expected = -kI * kHalfSqrt2;
  ASSERT_EQ(s.size(), 2u);
  EXPECT_LT(std::abs(s.amplitude(Ket::atom_field(g, 0, 1)) - expected), 1e-15);
  EXPECT_LT(std::abs(s.amplitude(Ket::atom_field(g, 1, 0)) - expected), 1e-15);
}

TEST(IcoPostselectedState, NoInteraction) {
  const PureState s = ico_postselected_state(ControlOutcome(0), excited(2, 1, 0.0), 0.4);
  EXPECT_EQ(max_abs_difference(s, PureState::basis(Ket::atom_field(e, 2, 1))), 0.0);
  EXPECT_THROW(ico_postselected_state(ControlOutcome(1), excited(2, 1, 0.0), 0.4),
               ImpossiblePostselection);
}

TEST(IcoPostselectedState, NormalizedAndMatchesGeneralConstruction) {
  auto rng = testing::seeded(51);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int compared = 0;
  for (int i = 0; i < 300; ++i) {
    const SystemParams p = random_atom_params(rng);
    const double omega_t = 10.0 * unit(rng);
    for (int j = 0; j < 2; ++j) {
      const ControlOutcome outcome(j);
      const double probability = control_probability(outcome, p);
      if (probability < 1e-8) continue;
      // Cancellation in N_j costs about eps / P of relative accuracy.
      const double tol = std::max(1e-12, 1e-15 / probability);
      const PureState fast = ico_postselected_state(outcome, p, omega_t);
      const Postselected general = general_postselect(outcome, p, omega_t);
      EXPECT_NEAR(norm(fast), 1.0, tol);
      EXPECT_LT(max_abs_difference(fast, general.state), tol);
      EXPECT_NEAR(general.probability, control_probability(outcome, p), 1e-12);
      ++compared;
    }
  }
  EXPECT_GT(compared, 500);
}

TEST(GeneralPostselect, DefiniteOrderSplitsEvenly) {
  auto rng = testing::seeded(52);
  for (int i = 0; i < 50; ++i) {
    SystemParams p = random_atom_params(rng);
    p.theta = 0.0;
    const Postselected out = general_postselect(ControlOutcome(0), p, 0.0);
    EXPECT_NEAR(out.probability, 0.5, 1e-15);
    EXPECT_LT(max_abs_difference(out.state,
                                 state_after_both(CavityOrder::c0_then_c1, p, p.T)),
              1e-15);
  }
}

TEST(GeneralPostselect, SecondOrderOnlyWithoutInteraction) {
  SystemParams p = excited(1, 2, 0.0);
  p.theta = pi / 2;
  const Postselected out = general_postselect(ControlOutcome(1), p, 2.0);
  EXPECT_NEAR(out.probability, 0.5, 1e-15);
  EXPECT_LT(max_abs_difference(out.state,
                               PureState::basis(Ket::atom_field(e, 1, 2)).scaled(-1.0)),
            1e-15);
}

TEST(GeneralPostselect, ImpossibleOutcome) {
  EXPECT_THROW(general_postselect(ControlOutcome(1), excited(0, 0, 0.0), 0.0),
               ImpossiblePostselection);
  EXPECT_EQ(postselection_probability(ControlOutcome(1), excited(0, 0, 0.0)), 0.0);
}

TEST(BellState, GroundVacuum) {
  const PureState s = bell_state(g, 0, 1);
  const Complex expected = -kI * kHalfSqrt2;
  ASSERT_EQ(s.size(), 2u);
  EXPECT_LT(std::abs(s.amplitude(Ket::fields(0, 1)) - expected), 1e-15);
  EXPECT_LT(std::abs(s.amplitude(Ket::fields(1, 0)) - expected), 1e-15);
  const auto report = entropy_report(
      PureState(KetFlavor::atom_field,
                {{Ket::atom_field(g, 0, 1), expected}, {Ket::atom_field(g, 1, 0), expected}}),
      g, Arrangement::ico);
  EXPECT_NEAR(report.value, 0.5, 1e-15);
}

TEST(BellState, ExcitedBranch) {
  EXPECT_THROW(bell_state(e, 0, 1), DegenerateBranch);
  const PureState s = bell_state(e, 1, 1);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_NEAR(std::abs(s.amplitude(Ket::fields(2, 0))), kHalfSqrt2, 1e-15);
  EXPECT_NEAR(std::abs(s.amplitude(Ket::fields(0, 2))), kHalfSqrt2, 1e-15);
  EXPECT_EQ(s.amplitude(Ket::fields(2, 0)), s.amplitude(Ket::fields(0, 2)));
  EXPECT_THROW(bell_state(e, 1, 0), DomainError);
}

TEST(BellState, MatchesConditionedIcoState) {
  for (int n = 0; n <= 5; ++n) {
    for (int N = 1; N <= 4; ++N) {
      const auto p = excited(n, n, bell_transit_time(n, N));
      const PureState ico = ico_postselected_state(ControlOutcome(0), p, 0.0);
      for (AtomLevel level : {e, g}) {
        if (level == e && n == 0) continue;
        const ConditionedState slice = condition_on_atom(ico, level);
        EXPECT_LT(max_abs_difference(slice.fields, bell_state(level, n, N)), 1e-12)
            << "n=" << n << " N=" << N << " atom=" << atom_symbol(level);
      }
    }
  }
}

}  // namespace
}  // namespace icocqed
