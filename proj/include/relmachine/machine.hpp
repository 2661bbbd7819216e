#pragma once

// Closed-form cycle statistics, bounds and regime logic for the two-qubit
// SWAP machine. Qubit A is thermalized by the hot bath, qubit B by the cold
// one; a = beta_eff_A * omega_A and b = beta_eff_B * omega_B fix all
// populations.

#include <cmath>
#include <limits>
#include <string>
#include <string_view>

#include "relmachine/detector.hpp"
#include "relmachine/errors.hpp"
#include "relmachine/numerics.hpp"

namespace relmachine::machine {

struct MachineConfig {
    double omega_A = 1.0;
    double omega_B = 0.5;
    detector::BathSpec bath_A{2.0};
    detector::BathSpec bath_B{1.0};
    double speed_A = 0.0;
    double speed_B = 0.0;

    void validate() const {
        if (!(omega_A > 0.0) || !(omega_B > 0.0) || !std::isfinite(omega_A) || !std::isfinite(omega_B)) {
            throw DomainError("MachineConfig: omega_A and omega_B must be positive and finite");
        }
        bath_A.validate();
        bath_B.validate();
        detector::DetectorSpec::validate_speed(speed_A);
        detector::DetectorSpec::validate_speed(speed_B);
        if (bath_A.temperature < bath_B.temperature) {
            throw DomainError("MachineConfig: bath A must be the hot bath (T_A >= T_B)");
        }
    }
};

class EffectivePoint {
public:
    EffectivePoint(double omega_A, double omega_B, double beta_eff_A, double beta_eff_B)
        : omega_A_(omega_A), omega_B_(omega_B), beta_eff_A_(beta_eff_A), beta_eff_B_(beta_eff_B) {
        for (double x : {omega_A, omega_B, beta_eff_A, beta_eff_B}) {
            if (!(x > 0.0) || !std::isfinite(x)) {
                throw DomainError("EffectivePoint: frequencies and inverse temperatures must be positive and finite");
            }
        }
    }

    [[nodiscard]] double omega_A() const { return omega_A_; }
    [[nodiscard]] double omega_B() const { return omega_B_; }
    [[nodiscard]] double beta_eff_A() const { return beta_eff_A_; }
    [[nodiscard]] double beta_eff_B() const { return beta_eff_B_; }
    [[nodiscard]] double a() const { return beta_eff_A_ * omega_A_; }
    [[nodiscard]] double b() const { return beta_eff_B_ * omega_B_; }
    [[nodiscard]] double frequency_ratio() const { return omega_B_ / omega_A_; }

private:
    double omega_A_;
    double omega_B_;
    double beta_eff_A_;
    double beta_eff_B_;
};

[[nodiscard]] inline EffectivePoint make_point(const MachineConfig& cfg) {
    cfg.validate();
    const double beta_A = detector::effective_inverse_temperature(
        detector::DetectorSpec{cfg.omega_A, cfg.speed_A, 1.0}, cfg.bath_A);
    const double beta_B = detector::effective_inverse_temperature(
        detector::DetectorSpec{cfg.omega_B, cfg.speed_B, 1.0}, cfg.bath_B);
    return EffectivePoint(cfg.omega_A, cfg.omega_B, beta_A, beta_B);
}

namespace detail {

// tanh(y/2) - tanh(x/2) without cancellation when x is close to y.
[[nodiscard]] inline double tanh_half_difference(double y, double x) {
    if (std::fmax(std::fabs(x), std::fabs(y)) > 40.0) {
        return std::tanh(0.5 * y) - std::tanh(0.5 * x);
    }
    return 2.0 * std::sinh(0.5 * (y - x)) / (std::cosh(0.5 * (x + y)) + std::cosh(0.5 * (x - y)));
}

[[nodiscard]] inline double sech2_half(double x) {
    const double c = std::cosh(0.5 * x);
    return 1.0 / (c * c);
}

// Var[n_b - n_a] = p_a(1-p_a) + p_b(1-p_b)
[[nodiscard]] inline double occupation_difference_variance(const EffectivePoint& p) {
    return 0.25 * (sech2_half(p.a()) + sech2_half(p.b()));
}

}  // namespace detail

[[nodiscard]] inline double mean_work(const EffectivePoint& p) {
    return 0.5 * (p.omega_B() - p.omega_A()) * detail::tanh_half_difference(p.b(), p.a());
}

[[nodiscard]] inline double mean_heat_hot(const EffectivePoint& p) {
    return 0.5 * p.omega_A() * detail::tanh_half_difference(p.b(), p.a());
}

[[nodiscard]] inline double mean_heat_cold(const EffectivePoint& p) {
    return 0.5 * p.omega_B() * detail::tanh_half_difference(p.a(), p.b());
}

[[nodiscard]] inline double variance_work(const EffectivePoint& p) {
    const double dw = p.omega_A() - p.omega_B();
    return dw * dw * detail::occupation_difference_variance(p);
}

[[nodiscard]] inline double variance_heat_hot(const EffectivePoint& p) {
    return p.omega_A() * p.omega_A() * detail::occupation_difference_variance(p);
}

[[nodiscard]] inline double variance_heat_cold(const EffectivePoint& p) {
    return p.omega_B() * p.omega_B() * detail::occupation_difference_variance(p);
}

/// Mean entropy production per cycle, (a - b)/2 (tanh(a/2) - tanh(b/2)) >= 0.
[[nodiscard]] inline double entropy_production(const EffectivePoint& p) {
    return 0.5 * (p.a() - p.b()) * detail::tanh_half_difference(p.a(), p.b());
}

/// Noise-to-signal ratio Var[Q_H]/<Q_H>^2, shared by work and hot heat.
[[nodiscard]] inline double snr(const EffectivePoint& p) {
    const double q = mean_heat_hot(p);
    if (q == 0.0) {
        throw DegenerateError("snr: currents vanish at a = b");
    }
    return variance_heat_hot(p) / (q * q);
}

enum class OperatingRegime { Refrigerator, Engine, Accelerator, Idle };

[[nodiscard]] constexpr std::string_view to_string(OperatingRegime r) {
    switch (r) {
        case OperatingRegime::Refrigerator: return "Refrigerator";
        case OperatingRegime::Engine: return "Engine";
        case OperatingRegime::Accelerator: return "Accelerator";
        case OperatingRegime::Idle: return "Idle";
    }
    return "Idle";
}

inline constexpr double kRegimeBoundaryRelTol = 1e-12;

/// The same machine with the effectively hotter qubit in slot A. Motion can
/// make qubit A effectively colder than B even when T_A >= T_B; relabeling
/// A <-> B leaves every trajectory's work unchanged and swaps the heats.
[[nodiscard]] inline EffectivePoint hot_first(const EffectivePoint& p) {
    if (p.beta_eff_A() <= p.beta_eff_B()) return p;
    return EffectivePoint(p.omega_B(), p.omega_A(), p.beta_eff_B(), p.beta_eff_A());
}

/// Regime relative to the effectively hotter bath.
[[nodiscard]] inline OperatingRegime classify_regime(const EffectivePoint& point) {
    const EffectivePoint p = hot_first(point);
    const double ratio = p.frequency_ratio();
    const double threshold = p.beta_eff_A() / p.beta_eff_B();
    auto near = [](double x, double y) { return std::fabs(x - y) <= kRegimeBoundaryRelTol * std::fmax(x, y); };
    if (near(ratio, threshold) || near(ratio, 1.0)) {
        return OperatingRegime::Idle;
    }
    if (ratio > 1.0) {
        return OperatingRegime::Accelerator;
    }
    if (ratio < threshold) {
        return OperatingRegime::Refrigerator;
    }
    return OperatingRegime::Engine;
}

struct TurReport {
    double snr;
    double classical_rhs;
    double shifted_rhs;
    double generalized_rhs;
    double ratio_R;
};

[[nodiscard]] inline TurReport tur_report(const EffectivePoint& p) {
    const double sigma = entropy_production(p);
    if (!(sigma > 0.0)) {
        throw DegenerateError("tur_report: entropy production vanishes");
    }
    const double s = snr(p);
    return TurReport{
        .snr = s,
        .classical_rhs = 2.0 / sigma,
        .shifted_rhs = 2.0 / sigma - 1.0,
        .generalized_rhs = numerics::generalized_tur_rhs(sigma),
        .ratio_R = sigma * s,
    };
}

/// Sigma * SNR via (x coth(x/2) - Sigma), x = a - b; tends to 2 at a = b.
[[nodiscard]] inline double ratio_R_identity(const EffectivePoint& p) {
    return numerics::x_coth_half_x(p.a() - p.b()) - entropy_production(p);
}

namespace detail {
// The efficiency and COP closed forms take qubit A as the hot side.
inline void require(const EffectivePoint& p, OperatingRegime want, std::string_view op) {
    if (classify_regime(p) != want) {
        throw RegimeError(std::string(op) + ": requires the " + std::string(to_string(want)) + " regime");
    }
    if (p.beta_eff_A() > p.beta_eff_B()) {
        throw RegimeError(std::string(op) + ": qubit A is effectively colder; evaluate on hot_first(p)");
    }
}
}  // namespace detail

[[nodiscard]] inline double otto_efficiency(const EffectivePoint& p) {
    detail::require(p, OperatingRegime::Engine, "otto_efficiency");
    return 1.0 - p.frequency_ratio();
}

/// 1 - T_B^eff / T_A^eff.
[[nodiscard]] inline double carnot_efficiency_eff(const EffectivePoint& p) {
    return 1.0 - p.beta_eff_A() / p.beta_eff_B();
}

/// eta_C^eff / (1 + 2 <P> T_B^eff / <P^2>), with <P^2> the second moment of W.
[[nodiscard]] inline double efficiency_power_tradeoff_rhs(const EffectivePoint& p) {
    detail::require(p, OperatingRegime::Engine, "efficiency_power_tradeoff_rhs");
    const double w = mean_work(p);
    const double power = -w;
    const double second_moment = variance_work(p) + w * w;
    return carnot_efficiency_eff(p) / (1.0 + 2.0 * power / (p.beta_eff_B() * second_moment));
}

[[nodiscard]] inline double cop(const EffectivePoint& p) {
    detail::require(p, OperatingRegime::Refrigerator, "cop");
    return p.omega_B() / (p.omega_A() - p.omega_B());
}

/// 1 / (T_A^eff / T_B^eff - 1).
[[nodiscard]] inline double cop_carnot_eff(const EffectivePoint& p) {
    const double denom = p.beta_eff_B() - p.beta_eff_A();
    if (denom == 0.0) {
        throw DegenerateError("cop_carnot_eff: equal effective temperatures");
    }
    return p.beta_eff_A() / denom;
}

/// eps_C^eff / (1 + 2 T_A^eff eps_C^eff <Q_C> / <Q_C^2>).
[[nodiscard]] inline double cop_tradeoff_rhs(const EffectivePoint& p) {
    detail::require(p, OperatingRegime::Refrigerator, "cop_tradeoff_rhs");
    const double qc = mean_heat_cold(p);
    const double second_moment = variance_heat_cold(p) + qc * qc;
    const double eps_c = cop_carnot_eff(p);
    return eps_c / (1.0 + 2.0 * eps_c * qc / (p.beta_eff_A() * second_moment));
}

namespace detail {
// The refrigerator/engine boundary (a = b) has zero cooling power.
[[nodiscard]] inline bool on_refrigerator_boundary(const EffectivePoint& p) {
    const double ratio = p.frequency_ratio();
    const double threshold = p.beta_eff_A() / p.beta_eff_B();
    return ratio < 1.0 && std::fabs(ratio - threshold) <= kRegimeBoundaryRelTol * std::fmax(ratio, threshold);
}
}  // namespace detail

/// chi = cop * <Q_C>.
[[nodiscard]] inline double figure_of_merit(const EffectivePoint& p) {
    if (detail::on_refrigerator_boundary(p)) {
        return 0.0;
    }
    return cop(p) * mean_heat_cold(p);
}

/// chi with tanh(x/2) linearized, the form whose optimum is
/// optimal_frequency_ratio_chi. Defined on the whole Refrigerator regime.
[[nodiscard]] inline double figure_of_merit_high_temperature(const EffectivePoint& p) {
    if (detail::on_refrigerator_boundary(p)) {
        return 0.0;
    }
    return cop(p) * 0.25 * p.omega_B() * (p.a() - p.b());
}

/// Frequency ratio omega_B/omega_A maximizing the high-temperature figure of merit.
[[nodiscard]] inline double optimal_frequency_ratio_chi(double beta_eff_A, double beta_eff_B) {
    if (!(beta_eff_A > 0.0) || !(beta_eff_B > 0.0)) {
        throw DomainError("optimal_frequency_ratio_chi: inverse temperatures must be positive");
    }
    if (beta_eff_A > beta_eff_B) {
        throw DomainError("optimal_frequency_ratio_chi: no refrigerator regime for beta_eff_A > beta_eff_B");
    }
    const double disc = beta_eff_A * beta_eff_A - 10.0 * beta_eff_A * beta_eff_B + 9.0 * beta_eff_B * beta_eff_B;
    if (disc < 0.0) {
        throw DomainError("optimal_frequency_ratio_chi: negative discriminant");
    }
    return (beta_eff_A + 3.0 * beta_eff_B - std::sqrt(disc)) / (4.0 * beta_eff_B);
}

/// COP at maximum figure of merit, (sqrt(8 eps_C + 9) - 3)/2.
[[nodiscard]] inline double cop_at_max_chi(double eps_carnot_eff) {
    if (!(eps_carnot_eff >= 0.0)) {
        throw DomainError("cop_at_max_chi: Carnot COP must be >= 0");
    }
    return 0.5 * (std::sqrt(8.0 * eps_carnot_eff + 9.0) - 3.0);
}

struct CycleStatistics {
    double mean_work;
    double mean_heat_hot;
    double mean_heat_cold;
    double var_work;
    double var_heat_hot;
    double entropy_production;
    double snr;  // NaN when the currents vanish
    OperatingRegime regime;
};

[[nodiscard]] inline CycleStatistics cycle_statistics(const EffectivePoint& p) {
    const double sigma = entropy_production(p);
    return CycleStatistics{
        .mean_work = mean_work(p),
        .mean_heat_hot = mean_heat_hot(p),
        .mean_heat_cold = mean_heat_cold(p),
        .var_work = variance_work(p),
        .var_heat_hot = variance_heat_hot(p),
        .entropy_production = sigma,
        .snr = mean_heat_hot(p) != 0.0 ? snr(p) : std::numeric_limits<double>::quiet_NaN(),
        .regime = classify_regime(p),
    };
}

}  // namespace relmachine::machine
