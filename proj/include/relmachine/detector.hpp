#pragma once

// Inertial Unruh-DeWitt qubit detector in a thermal scalar-field bath.
//
// A detector with gap w moving at speed v through a bath at inverse
// temperature beta has transition rate
//
//   G(w) = lambda^2 / (4 pi beta gamma v)
//          * ln[(1 - exp(-beta gamma (1+v) w)) / (1 - exp(-beta gamma (1-v) w))]
//
// and relaxes to a Gibbs state at the detailed-balance temperature
// 1/beta_eff = w / ln(G(-w)/G(w)). All work is done in the log domain so the
// ratio of two underflowing rates stays finite.

#include <cmath>
#include <numbers>
#include <string>

#include "relmachine/errors.hpp"
#include "relmachine/numerics.hpp"

namespace relmachine::detector {

struct BathSpec {
    double temperature = 1.0;

    [[nodiscard]] static BathSpec from_inverse_temperature(double beta) {
        if (!(beta > 0.0) || !std::isfinite(beta)) {
            throw DomainError("BathSpec: inverse temperature must be positive and finite");
        }
        return BathSpec{1.0 / beta};
    }
    [[nodiscard]] double inverse_temperature() const { return 1.0 / temperature; }

    void validate() const {
        if (!(temperature > 0.0) || !std::isfinite(temperature)) {
            throw DomainError("BathSpec: temperature must be positive and finite");
        }
    }
};

struct DetectorSpec {
    double gap = 1.0;
    double speed = 0.0;
    double coupling = 1.0;

    [[nodiscard]] double lorentz_factor() const { return 1.0 / std::sqrt((1.0 - speed) * (1.0 + speed)); }

    void validate() const {
        if (!(gap > 0.0) || !std::isfinite(gap)) {
            throw DomainError("DetectorSpec: gap must be positive and finite");
        }
        validate_speed(speed);
        if (coupling == 0.0 || !std::isfinite(coupling)) {
            throw DomainError("DetectorSpec: coupling must be nonzero and finite");
        }
    }

    static void validate_speed(double v) {
        if (!(v >= 0.0 && v < 1.0)) {
            throw DomainError("DetectorSpec: speed must lie in [0, 1), got " + std::to_string(v));
        }
    }
};

// Speeds below this use the small-v expansion of the rate.
inline constexpr double kStaticSpeedThreshold = numerics::kSeriesThreshold;

// Above this value of beta gamma (1-v) w the rate is a pure Boltzmann tail.
inline constexpr double kBoltzmannTailThreshold = 40.0;

namespace detail {

// ln[(1 - e^{-x(1+v)}) / (1 - e^{-x(1-v)})] for v >= threshold; x = beta gamma w.
[[nodiscard]] inline double log_rate_bracket(double x, double v) {
    const double lo = x * (1.0 - v);
    const double hi = x * (1.0 + v);
    if (lo > kBoltzmannTailThreshold) {
        // bracket = e^{-lo}(1 - e^{-2xv}) up to relative O(e^{-lo})
        return -lo + numerics::log1mexp(hi - lo);
    }
    return std::log(numerics::log_ratio_one_minus_exp(hi, lo));
}

// ln G for v below the static threshold, x = beta gamma w:
//   G = lambda^2 w / (2 pi) * h'(x) * [1 + v^2 x^2 h'''(x) / (6 h'(x))]
// with h(y) = ln|1 - e^{-y}|, h'(y) = 1/(e^y - 1).
[[nodiscard]] inline double log_rate_small_speed(double beta, double gamma, double v,
                                                 double omega, double coupling) {
    const double x = beta * gamma * omega;
    // ln(w h'(x)) with w h'(x) > 0 for both signs of w
    const double log_w_hprime = std::log(std::fabs(omega)) - numerics::log_abs_expm1(x);
    double h3_over_h1;
    if (x > 0.0) {
        const double q = std::exp(-x);
        const double one_minus_q = -std::expm1(-x);
        h3_over_h1 = (1.0 + q) / (one_minus_q * one_minus_q);
    } else {
        const double u = std::exp(x);
        const double one_minus_u = -std::expm1(x);
        h3_over_h1 = u * (1.0 + u) / (one_minus_u * one_minus_u);
    }
    const double correction = v * v * x * x * h3_over_h1 / 6.0;
    return std::log(coupling * coupling / (2.0 * std::numbers::pi)) + log_w_hprime +
           std::log1p(correction);
}

}  // namespace detail

/// Natural log of the transition rate G(omega); omega may be negative.
[[nodiscard]] inline double log_transition_rate(const DetectorSpec& d, const BathSpec& b, double omega) {
    if (omega == 0.0 || !std::isfinite(omega)) {
        throw DomainError("transition_rate: omega must be nonzero and finite");
    }
    DetectorSpec::validate_speed(d.speed);
    b.validate();
    const double beta = b.inverse_temperature();
    const double v = d.speed;
    const double gamma = d.lorentz_factor();
    if (v < kStaticSpeedThreshold) {
        return detail::log_rate_small_speed(beta, gamma, v, omega, d.coupling);
    }
    const double prefactor = d.coupling * d.coupling / (4.0 * std::numbers::pi * beta * gamma * v);
    return std::log(prefactor) + detail::log_rate_bracket(beta * gamma * omega, v);
}

[[nodiscard]] inline double transition_rate(const DetectorSpec& d, const BathSpec& b, double omega) {
    return std::exp(log_transition_rate(d, b, omega));
}

/// Detailed-balance inverse temperature seen by the detector at its own gap.
[[nodiscard]] inline double effective_inverse_temperature(const DetectorSpec& d, const BathSpec& b) {
    d.validate();
    b.validate();
    if (d.speed == 0.0) {
        return b.inverse_temperature();
    }
    return (log_transition_rate(d, b, -d.gap) - log_transition_rate(d, b, d.gap)) / d.gap;
}

[[nodiscard]] inline double effective_temperature(const DetectorSpec& d, const BathSpec& b) {
    return 1.0 / effective_inverse_temperature(d, b);
}

/// Leading high-temperature (beta w -> 0) effective temperature,
/// T / (2 gamma v) * ln((1+v)/(1-v)).
[[nodiscard]] inline double effective_temperature_high_T(const BathSpec& b, double speed) {
    b.validate();
    if (!(speed > 0.0 && speed < 1.0)) {
        throw DomainError("effective_temperature_high_T: speed must lie in (0, 1)");
    }
    const double gamma = 1.0 / std::sqrt((1.0 - speed) * (1.0 + speed));
    // ln((1+v)/(1-v)) = 2 atanh(v)
    return b.temperature * std::atanh(speed) / (gamma * speed);
}

/// Excited-state population 1/(1 + e^{beta_eff omega}) of the steady state.
[[nodiscard]] inline double excitation_probability(double beta_eff, double omega) {
    if (!(omega > 0.0)) {
        throw DomainError("excitation_probability: omega must be > 0");
    }
    const double x = beta_eff * omega;
    // overflow-free for either sign of x
    return x >= 0.0 ? std::exp(-x) / (1.0 + std::exp(-x)) : 1.0 / (1.0 + std::exp(x));
}

struct SteadyState {
    double effective_inverse_temperature;
    double excitation_probability;
};

[[nodiscard]] inline SteadyState steady_state(const DetectorSpec& d, const BathSpec& b) {
    const double beta_eff = effective_inverse_temperature(d, b);
    return {beta_eff, excitation_probability(beta_eff, d.gap)};
}

}  // namespace relmachine::detector
