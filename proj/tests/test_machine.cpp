#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "relmachine/machine.hpp"
#include "relmachine/numerics.hpp"

using namespace relmachine;
using namespace relmachine::machine;
using Catch::Approx;

namespace {
// omega_A = 1, omega_B = 0.5, beta_eff_A = 0.5, beta_eff_B = 2  ->  a = 0.5, b = 1
const EffectivePoint kWorked{1.0, 0.5, 0.5, 2.0};
}

TEST_CASE("worked point against the high-precision oracle", "[machine]") {
    CHECK(mean_work(kWorked) == Approx(-0.054299623714075157306).epsilon(1e-14));
    CHECK(mean_heat_hot(kWorked) == Approx(0.10859924742815031461).epsilon(1e-14));
    CHECK(mean_heat_cold(kWorked) == Approx(-0.054299623714075157306).epsilon(1e-14));
    CHECK(variance_work(kWorked) == Approx(0.1079039113607690854).epsilon(1e-14));
    CHECK(variance_heat_hot(kWorked) == Approx(0.43161564544307634161).epsilon(1e-14));
    CHECK(entropy_production(kWorked) == Approx(0.054299623714075157306).epsilon(1e-14));
    CHECK(snr(kWorked) == Approx(36.596836642674871689).epsilon(1e-13));

    const auto t = tur_report(kWorked);
    CHECK(t.classical_rhs == Approx(36.832667764538751439).epsilon(1e-13));
    CHECK(t.shifted_rhs == Approx(35.832667764538751439).epsilon(1e-13));
    CHECK(t.generalized_rhs == Approx(36.168426916902086442).epsilon(1e-12));
    CHECK(t.ratio_R == Approx(1.9871944588227231268).epsilon(1e-13));
    // classical bound violated, the two corrected bounds hold
    CHECK(t.snr < t.classical_rhs);
    CHECK(t.snr >= t.shifted_rhs);
    CHECK(t.snr >= t.generalized_rhs);

    CHECK(classify_regime(kWorked) == OperatingRegime::Engine);
    CHECK(otto_efficiency(kWorked) == 0.5);
    CHECK(carnot_efficiency_eff(kWorked) == 0.75);
    CHECK(efficiency_power_tradeoff_rhs(kWorked) == Approx(0.50341066605842198425).epsilon(1e-13));
}

TEST_CASE("first law and sign conventions", "[machine][property]") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.01, 5.0);
    for (int i = 0; i < 2000; ++i) {
        const EffectivePoint p{u(rng), u(rng), u(rng), u(rng)};
        const double scale = std::fabs(mean_work(p)) + std::fabs(mean_heat_hot(p)) + std::fabs(mean_heat_cold(p));
        CHECK(std::fabs(mean_work(p) + mean_heat_hot(p) + mean_heat_cold(p)) <= 4.0 * 2.2204460492503131e-16 * scale);
        CHECK(entropy_production(p) >= 0.0);
        CHECK(variance_work(p) >= 0.0);
        CHECK(variance_heat_hot(p) >= 0.0);
        CHECK(variance_heat_cold(p) == Approx(variance_work(p) * std::pow(p.omega_B() / (p.omega_A() - p.omega_B()), 2)).epsilon(1e-9).margin(1e-300));
    }
}

TEST_CASE("SNR equality and identity", "[machine][property]") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.05, 20.0);
    for (int i = 0; i < 2000; ++i) {
        const double wA = 1.0;
        const double wB = std::uniform_real_distribution<double>(0.01, 2.0)(rng);
        const EffectivePoint p{wA, wB, u(rng) / wA, u(rng) / wB};
        if (std::fabs(p.a() - p.b()) < 1e-6) continue;
        const double s = snr(p);
        CHECK(variance_work(p) / (mean_work(p) * mean_work(p)) == Approx(s).epsilon(1e-11));
        CHECK(s + 1.0 == Approx(numerics::x_coth_half_x(p.a() - p.b()) / entropy_production(p)).epsilon(1e-11));
        const auto t = tur_report(p);
        CHECK(t.ratio_R == Approx(ratio_R_identity(p)).epsilon(1e-10));
        CHECK(t.snr >= t.shifted_rhs * (1.0 - 1e-12));
        CHECK(t.snr >= t.generalized_rhs * (1.0 - 1e-12));
    }
}

TEST_CASE("near-degenerate points stay accurate", "[machine]") {
    // a - b = 1e-9: every current is O(1e-9) and computed without cancellation
    const EffectivePoint p{1.0, 0.5, 1.0, 2.0 * (1.0 - 1e-9)};
    const double x = p.a() - p.b();
    CHECK(x == Approx(1e-9).epsilon(1e-6));
    CHECK(mean_heat_hot(p) < 0.0);  // a > b
    CHECK(ratio_R_identity(p) == Approx(2.0).epsilon(1e-8));
    CHECK(tur_report(p).ratio_R == Approx(2.0).epsilon(1e-6));
    CHECK(entropy_production(p) == Approx(0.5 * x * (std::tanh(0.5) - std::tanh(0.5 - x / 2))).epsilon(1e-5));
}

TEST_CASE("degenerate and regime errors", "[machine][errors]") {
    const EffectivePoint idle{1.0, 0.5, 1.0, 2.0};  // a = b
    CHECK(classify_regime(idle) == OperatingRegime::Idle);
    CHECK(mean_work(idle) == 0.0);
    CHECK(entropy_production(idle) == 0.0);
    CHECK_THROWS_AS(snr(idle), DegenerateError);
    CHECK_THROWS_AS(tur_report(idle), DegenerateError);
    CHECK(std::isnan(cycle_statistics(idle).snr));
    CHECK(ratio_R_identity(idle) == 2.0);

    CHECK_THROWS_AS(otto_efficiency(EffectivePoint{1.0, 0.1, 0.5, 2.0}), RegimeError);
    CHECK_THROWS_AS(cop(kWorked), RegimeError);
    CHECK_THROWS_AS(cop_carnot_eff(EffectivePoint{1.0, 0.5, 1.0, 1.0}), DegenerateError);
    CHECK_THROWS_AS(EffectivePoint(0.0, 1.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(EffectivePoint(1.0, 1.0, std::nan(""), 1.0), DomainError);

    MachineConfig bad;
    bad.bath_A = detector::BathSpec{0.5};
    CHECK_THROWS_AS(make_point(bad), DomainError);
    bad = MachineConfig{};
    bad.speed_B = 1.0;
    CHECK_THROWS_AS(make_point(bad), DomainError);
}

TEST_CASE("regime classification", "[machine]") {
    CHECK(classify_regime(EffectivePoint{1.0, 0.1, 0.5, 2.0}) == OperatingRegime::Refrigerator);
    CHECK(classify_regime(EffectivePoint{1.0, 0.5, 0.5, 2.0}) == OperatingRegime::Engine);
    CHECK(classify_regime(EffectivePoint{1.0, 1.5, 0.5, 2.0}) == OperatingRegime::Accelerator);
    CHECK(classify_regime(EffectivePoint{1.0, 1.0, 0.5, 2.0}) == OperatingRegime::Idle);
    CHECK(classify_regime(EffectivePoint{1.0, 0.25, 0.5, 2.0}) == OperatingRegime::Idle);
    CHECK(to_string(OperatingRegime::Refrigerator) == "Refrigerator");

    // work sign follows the regime
    CHECK(mean_work(EffectivePoint{1.0, 0.1, 0.5, 2.0}) > 0.0);
    CHECK(mean_work(EffectivePoint{1.0, 1.5, 0.5, 2.0}) > 0.0);
    CHECK(mean_heat_hot(EffectivePoint{1.0, 0.1, 0.5, 2.0}) < 0.0);
    CHECK(mean_heat_cold(EffectivePoint{1.0, 0.1, 0.5, 2.0}) > 0.0);
}

TEST_CASE("refrigerator bounds and optimum", "[machine]") {
    const double bA = 1.0, bB = 2.0;
    const double r_star = optimal_frequency_ratio_chi(bA, bB);
    CHECK(r_star == Approx(0.35961179679779243127).epsilon(1e-14));
    const EffectivePoint p{1.0, r_star, bA, bB};
    CHECK(cop(p) == Approx(0.56155281280883027491).epsilon(1e-13));
    CHECK(cop(p) == Approx(cop_at_max_chi(cop_carnot_eff(p))).epsilon(1e-13));
    CHECK(cop_carnot_eff(p) == 1.0);
    CHECK(cop(p) <= cop_carnot_eff(p));
    CHECK(cop(p) <= cop_tradeoff_rhs(p));

    const auto best = numerics::maximize_scalar(
        [&](double r) { return figure_of_merit_high_temperature({1.0, r, bA, bB}); }, 1e-9, 0.5 - 1e-9,
        numerics::Tolerance{1e-13, 1e-13, 400});
    CHECK(best.argmax == Approx(r_star).epsilon(1e-7));

    const auto exact = numerics::maximize_scalar([&](double r) { return figure_of_merit({1.0, r, bA, bB}); }, 1e-9,
                                                 0.5 - 1e-9, numerics::Tolerance{1e-13, 1e-13, 400});
    CHECK(exact.argmax == Approx(0.35334058516774352002).epsilon(1e-7));
    CHECK(exact.max == Approx(0.011852702271844698574).epsilon(1e-12));

    CHECK(figure_of_merit(EffectivePoint{1.0, 0.5, 1.0, 2.0}) == 0.0);
    CHECK_THROWS_AS(optimal_frequency_ratio_chi(2.0, 1.0), DomainError);
    CHECK_THROWS_AS(cop_at_max_chi(-1.0), DomainError);
    CHECK(cop_at_max_chi(0.0) == 0.0);
}

TEST_CASE("make_point composes detector and machine", "[machine]") {
    MachineConfig cfg;
    const auto p = make_point(cfg);
    CHECK(p.beta_eff_A() == 0.5);
    CHECK(p.beta_eff_B() == 1.0);
    cfg.speed_A = 0.8;
    const auto moving = make_point(cfg);
    CHECK(moving.beta_eff_A() != 0.5);
    CHECK(moving.beta_eff_B() == 1.0);
}

TEST_CASE("inverted effective temperatures are classified from the hotter side", "[machine]") {
    // qubit A effectively colder: beta_eff_A = 2 > beta_eff_B = 0.5
    const EffectivePoint p{0.5, 1.0, 2.0, 0.5};
    const auto h = hot_first(p);
    CHECK(h.omega_A() == 1.0);
    CHECK(h.beta_eff_A() == 0.5);
    CHECK(hot_first(kWorked).omega_A() == kWorked.omega_A());

    // relabeling keeps work and swaps the heats
    CHECK(mean_work(h) == Approx(mean_work(p)).epsilon(1e-15));
    CHECK(mean_heat_hot(h) == Approx(mean_heat_cold(p)).epsilon(1e-15));
    CHECK(entropy_production(h) == Approx(entropy_production(p)).epsilon(1e-15));

    CHECK(classify_regime(p) == classify_regime(h));
    CHECK(classify_regime(p) == OperatingRegime::Engine);
    CHECK(mean_work(p) < 0.0);
    CHECK(otto_efficiency(h) == 0.5);
    CHECK_THROWS_AS(otto_efficiency(p), RegimeError);

    // work-driven flow from the hotter B into A: not a refrigerator
    const EffectivePoint q{1.0, 0.5, 2.0, 1.0};
    CHECK(classify_regime(q) == OperatingRegime::Accelerator);
    CHECK(mean_work(q) > 0.0);
    CHECK(mean_heat_cold(q) > 0.0);  // drawn from the hotter bath
}
