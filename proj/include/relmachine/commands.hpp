#pragma once

// Report builders behind the CLI subcommands. Each takes a RunConfig, checks
// the keys it understands, and returns a RunReport whose data rows depend
// only on the configuration.

#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "relmachine/config.hpp"
#include "relmachine/detector.hpp"
#include "relmachine/machine.hpp"
#include "relmachine/numerics.hpp"
#include "relmachine/parallel.hpp"
#include "relmachine/report.hpp"
#include "relmachine/stochastic.hpp"

namespace relmachine::cli {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

namespace detail {

inline std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline std::string hex64(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline RunReport start_report(const std::string& command, const RunConfig& cfg) {
    RunReport r;
    r.metadata = {
        {"command", command},
        {"config_hash", hex64(fnv1a64(command + "\n" + cfg.canonical()))},
        {"tool_version", kToolVersion},
        {"timestamp", utc_timestamp()},
    };
    return r;
}

// Evaluates f, mapping domain failures to NaN for table cells that are
// undefined at a given point (e.g. COP outside the refrigerator regime).
template <class F>
double or_nan(F&& f) {
    try {
        return f();
    } catch (const DomainError&) {
        return kNaN;
    }
}

inline std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> xs(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return xs;
}

struct Range {
    double lo;
    double hi;
    int count;
};

inline Range read_range(const RunConfig& cfg, double lo, double hi, int count) {
    Range r{cfg.number_or("lo", lo), cfg.number_or("hi", hi), require_count(cfg, "count", count)};
    if (!(r.lo < r.hi)) {
        throw ConfigError("lo must be < hi");
    }
    return r;
}

inline double beta_eff(double beta, double speed, double omega) {
    return detector::effective_inverse_temperature(detector::DetectorSpec{omega, speed, 1.0},
                                                   detector::BathSpec::from_inverse_temperature(beta));
}

inline double high_T_beta_eff(double beta, double speed) {
    if (speed == 0.0) return beta;
    return 1.0 / detector::effective_temperature_high_T(detector::BathSpec::from_inverse_temperature(beta), speed);
}

struct Temperatures {
    double T_A;
    double T_B;
};

inline Temperatures read_temperatures(const RunConfig& cfg, double T_A, double T_B) {
    auto read = [&](const std::string& t_key, const std::string& beta_key, double fallback) {
        if (cfg.has(t_key) && cfg.has(beta_key)) {
            throw ConfigError("set at most one of " + t_key + " and " + beta_key);
        }
        if (cfg.has(beta_key)) return 1.0 / require_positive(cfg, beta_key, 1.0);
        return require_positive(cfg, t_key, fallback);
    };
    Temperatures t{read("T_A", "beta_A", T_A), read("T_B", "beta_B", T_B)};
    if (t.T_A < t.T_B) {
        throw ConfigError("T_A must be >= T_B (qubit A couples to the hot bath)");
    }
    return t;
}

}  // namespace detail

/// Which side of the configuration produced the operating point.
enum class PointMode { Analytic, Pipeline };

inline const std::set<std::string> kPointKeys = {"mode",    "omega_A", "omega_B", "T_A",        "T_B",       "beta_A",
                                                 "beta_B",  "speed_A", "speed_B", "beta_eff_A", "beta_eff_B"};

inline PointMode point_mode(const RunConfig& cfg) {
    const std::string mode = cfg.string_or("mode", "auto");
    if (mode == "analytic") return PointMode::Analytic;
    if (mode == "pipeline") return PointMode::Pipeline;
    if (mode != "auto") {
        throw ConfigError("mode must be auto, analytic or pipeline, got '" + mode + "'");
    }
    const bool has_beta_eff = cfg.has("beta_eff_A") || cfg.has("beta_eff_B");
    const bool has_pipeline = cfg.has("T_A") || cfg.has("T_B") || cfg.has("beta_A") || cfg.has("beta_B") ||
                              cfg.has("speed_A") || cfg.has("speed_B");
    if (has_beta_eff && has_pipeline) {
        throw ConfigError("give either beta_eff_A/beta_eff_B or bath temperatures and speeds, not both");
    }
    return has_pipeline ? PointMode::Pipeline : PointMode::Analytic;
}

/// Operating point from a point-style configuration. Analytic defaults are
/// the reference point (omega_A, omega_B, beta_eff_A, beta_eff_B) = (1, 0.5, 0.5, 2).
inline machine::EffectivePoint resolve_point(const RunConfig& cfg) {
    const double omega_A = require_positive(cfg, "omega_A", 1.0);
    const double omega_B = require_positive(cfg, "omega_B", 0.5);
    if (point_mode(cfg) == PointMode::Analytic) {
        return machine::EffectivePoint(omega_A, omega_B, require_positive(cfg, "beta_eff_A", 0.5),
                                       require_positive(cfg, "beta_eff_B", 2.0));
    }
    const auto t = detail::read_temperatures(cfg, 2.0, 1.0);
    machine::MachineConfig mc{
        .omega_A = omega_A,
        .omega_B = omega_B,
        .bath_A = detector::BathSpec{t.T_A},
        .bath_B = detector::BathSpec{t.T_B},
        .speed_A = require_speed(cfg, "speed_A", 0.0),
        .speed_B = require_speed(cfg, "speed_B", 0.0),
    };
    return machine::make_point(mc);
}

inline const std::vector<std::string> kPointColumns = {
    "omega_A", "omega_B", "beta_eff_A", "beta_eff_B", "a", "b", "frequency_ratio", "regime",
    "mean_work", "mean_heat_hot", "mean_heat_cold", "var_work", "var_heat_hot", "entropy_production",
    "snr", "classical_rhs", "shifted_rhs", "generalized_rhs", "ratio_R",
    "efficiency", "carnot_efficiency_eff", "efficiency_tradeoff_rhs", "efficiency_tradeoff_rhs_variance",
    "cop", "cop_carnot_eff", "cop_tradeoff_rhs", "cop_tradeoff_rhs_variance", "figure_of_merit",
    "ift_residual", "exchange_ft_max_deviation", "oracle_max_delta"};

/// Full statistics row for one point: moments, TUR sides, regime-specific
/// bounds (NaN where undefined), fluctuation-theorem residuals and the
/// largest closed-form vs enumeration discrepancy.
inline std::vector<Cell> point_row(const machine::EffectivePoint& p) {
    using namespace machine;
    const auto stats = cycle_statistics(p);
    const auto dist = stochastic::enumerate_distribution(p);
    const double sigma = stats.entropy_production;
    std::optional<TurReport> tur;
    if (sigma > 0.0 && stats.mean_heat_hot != 0.0) tur = tur_report(p);

    const double enum_deltas[] = {
        stochastic::moments(dist, 1, 0) - stats.mean_work,
        stochastic::moments(dist, 0, 1) - stats.mean_heat_hot,
        stochastic::variance_work(dist) - stats.var_work,
        stochastic::variance_heat_hot(dist) - stats.var_heat_hot,
        stochastic::mean_entropy(dist) - sigma,
    };
    double oracle = 0.0;
    for (double d : enum_deltas) oracle = std::fmax(oracle, std::fabs(d));

    // Tradeoff bounds with the variance in place of the second moment.
    const double eta_rhs_var = detail::or_nan([&] {
        const double eta_c = carnot_efficiency_eff(p);
        (void)otto_efficiency(p);
        return eta_c / (1.0 + 2.0 * -stats.mean_work / (p.beta_eff_B() * stats.var_work));
    });
    const double cop_rhs_var = detail::or_nan([&] {
        (void)cop(p);
        const double eps_c = cop_carnot_eff(p);
        return eps_c / (1.0 + 2.0 * eps_c * stats.mean_heat_cold / (p.beta_eff_A() * variance_heat_cold(p)));
    });

    return {
        p.omega_A(), p.omega_B(), p.beta_eff_A(), p.beta_eff_B(), p.a(), p.b(), p.frequency_ratio(),
        std::string(to_string(stats.regime)),
        stats.mean_work, stats.mean_heat_hot, stats.mean_heat_cold, stats.var_work, stats.var_heat_hot, sigma,
        stats.snr,
        tur ? tur->classical_rhs : kNaN, tur ? tur->shifted_rhs : kNaN, tur ? tur->generalized_rhs : kNaN,
        tur ? tur->ratio_R : ratio_R_identity(p),
        detail::or_nan([&] { return otto_efficiency(p); }),
        carnot_efficiency_eff(p),
        detail::or_nan([&] { return efficiency_power_tradeoff_rhs(p); }),
        eta_rhs_var,
        detail::or_nan([&] { return cop(p); }),
        detail::or_nan([&] { return cop_carnot_eff(p); }),
        detail::or_nan([&] { return cop_tradeoff_rhs(p); }),
        cop_rhs_var,
        detail::or_nan([&] { return figure_of_merit(p); }),
        std::fabs(stochastic::check_integral_ft(dist) - 1.0),
        stochastic::exchange_ft_max_deviation(dist),
        oracle,
    };
}

inline RunReport cmd_point(const RunConfig& cfg) {
    cfg.require_known(kPointKeys, "point");
    auto report = detail::start_report("point", cfg);
    report.tables.push_back(Table{"point", kPointColumns, {point_row(resolve_point(cfg))}});
    return report;
}

namespace detail {
struct SpeedPair {
    double speed_A;
    double speed_B;
};

// Explicit speed_A/speed_B keys select a single pair; otherwise `defaults`.
inline std::vector<SpeedPair> read_speed_pairs(const RunConfig& cfg, std::vector<SpeedPair> defaults) {
    if (cfg.has("speed_A") || cfg.has("speed_B")) {
        return {{require_speed(cfg, "speed_A", 0.0), require_speed(cfg, "speed_B", 0.0)}};
    }
    return defaults;
}
}  // namespace detail

inline const std::set<std::string> kFig1Keys = {"T_A", "T_B", "beta_A", "beta_B", "omega_A", "speed",
                                                "speed_A", "speed_B", "lo", "hi", "count"};

/// Noise-to-signal ratio of the hot heat against the three TUR right-hand
/// sides along omega_B/omega_A, for qubit B moving (panel a) and qubit A
/// moving (panel b) at beta_A/beta_B = 1/2.
inline RunReport cmd_sweep_fig1(const RunConfig& cfg) {
    cfg.require_known(kFig1Keys, "fig1");
    const auto t = detail::read_temperatures(cfg, 2.0, 1.0);
    const double omega_A = require_positive(cfg, "omega_A", 4.0);
    const double v = require_speed(cfg, "speed", 0.8);
    const auto range = detail::read_range(cfg, 0.0025, 1.2, 400);
    if (!(range.lo > 0.0)) throw ConfigError("lo must be > 0 for a frequency-ratio sweep");
    const auto pairs = detail::read_speed_pairs(cfg, {{0.0, v}, {v, 0.0}});
    const auto ratios = detail::linspace(range.lo, range.hi, range.count);

    auto report = detail::start_report("fig1", cfg);
    Table table{"fig1",
                {"panel", "speed_A", "speed_B", "frequency_ratio", "beta_eff_A", "beta_eff_B", "regime",
                 "regime_change", "mean_heat_hot", "var_heat_hot", "entropy_production", "snr", "classical_rhs",
                 "shifted_rhs", "generalized_rhs"},
                {}};
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto [vA, vB] = pairs[k];
        const std::string panel = pairs.size() == 1 ? "custom" : (k == 0 ? "a" : "b");
        const double bA = detail::beta_eff(1.0 / t.T_A, vA, omega_A);
        auto rows = ordered_parallel_map(ratios.size(), [&](std::size_t i) {
            const double omega_B = ratios[i] * omega_A;
            const machine::EffectivePoint p(omega_A, omega_B, bA, detail::beta_eff(1.0 / t.T_B, vB, omega_B));
            const auto s = machine::cycle_statistics(p);
            std::optional<machine::TurReport> tur;
            if (s.entropy_production > 0.0 && s.mean_heat_hot != 0.0) tur = machine::tur_report(p);
            return std::vector<Cell>{panel, vA, vB, ratios[i], p.beta_eff_A(), p.beta_eff_B(),
                                     std::string(machine::to_string(s.regime)), 0.0, s.mean_heat_hot,
                                     s.var_heat_hot, s.entropy_production, s.snr,
                                     tur ? tur->classical_rhs : kNaN, tur ? tur->shifted_rhs : kNaN,
                                     tur ? tur->generalized_rhs : kNaN};
        });
        for (std::size_t i = 1; i < rows.size(); ++i) {
            if (std::get<std::string>(rows[i][6]) != std::get<std::string>(rows[i - 1][6])) {
                rows[i][7] = 1.0;
            }
        }
        for (auto& r : rows) table.rows.push_back(std::move(r));
    }
    report.tables.push_back(std::move(table));
    return report;
}

inline const std::set<std::string> kFig2Keys = {"beta_ratio", "fixed_product", "speed", "speed_A", "speed_B",
                                                "lo", "hi", "count"};

/// R = Sigma * SNR along b = omega_B beta_B at omega_A beta_A fixed (table
/// "vary_b") and along omega_A beta_A at omega_B beta_B fixed ("vary_a"),
/// for the static pair and the moving pairs.
inline RunReport cmd_sweep_fig2(const RunConfig& cfg) {
    cfg.require_known(kFig2Keys, "fig2");
    const double beta_ratio = require_positive(cfg, "beta_ratio", 0.5);
    if (!(beta_ratio <= 1.0)) throw ConfigError("beta_ratio (beta_A/beta_B) must be <= 1");
    const double fixed = require_positive(cfg, "fixed_product", 0.5);
    const double v = require_speed(cfg, "speed", 0.8);
    const auto range = detail::read_range(cfg, 0.05, 5.0, 400);
    if (!(range.lo > 0.0)) throw ConfigError("lo must be > 0 for a product sweep");
    std::vector<detail::SpeedPair> pairs{{0.0, 0.0}};
    for (const auto& p : detail::read_speed_pairs(cfg, {{v, 0.0}, {0.0, v}})) pairs.push_back(p);
    const auto xs = detail::linspace(range.lo, range.hi, range.count);

    // beta_B = 1, beta_A = beta_ratio; products fix the gaps.
    const double beta_A = beta_ratio;
    const double beta_B = 1.0;

    auto report = detail::start_report("fig2", cfg);
    for (const bool vary_b : {true, false}) {
        Table table{vary_b ? "vary_b" : "vary_a",
                    {"curve", "speed_A", "speed_B", "a_product", "b_product", "a", "b", "regime", "entropy_production",
                     "snr", "ratio_R", "ratio_R_enumerated"},
                    {}};
        for (const auto& [vA, vB] : pairs) {
            const std::string curve = (vA == 0.0 && vB == 0.0) ? "static" : "moving";
            auto rows = ordered_parallel_map(xs.size(), [&](std::size_t i) {
                const double a_prod = vary_b ? fixed : xs[i];
                const double b_prod = vary_b ? xs[i] : fixed;
                const double omega_A = a_prod / beta_A;
                const double omega_B = b_prod / beta_B;
                const machine::EffectivePoint p(omega_A, omega_B, detail::beta_eff(beta_A, vA, omega_A),
                                                detail::beta_eff(beta_B, vB, omega_B));
                const double sigma = machine::entropy_production(p);
                const bool live = sigma > 0.0 && machine::mean_heat_hot(p) != 0.0;
                const double snr = live ? machine::snr(p) : kNaN;
                const double r = live ? machine::tur_report(p).ratio_R : machine::ratio_R_identity(p);
                double r_enum = kNaN;
                if (live) {
                    const auto d = stochastic::enumerate_distribution(p);
                    const double q = stochastic::moments(d, 0, 1);
                    r_enum = stochastic::mean_entropy(d) * stochastic::variance_heat_hot(d) / (q * q);
                }
                return std::vector<Cell>{curve, vA, vB, a_prod, b_prod, p.a(), p.b(),
                                         std::string(machine::to_string(machine::classify_regime(p))), sigma, snr, r,
                                         r_enum};
            });
            for (auto& r : rows) table.rows.push_back(std::move(r));
        }
        report.tables.push_back(std::move(table));
    }
    return report;
}

inline const std::set<std::string> kFig3Keys = {"T_A", "T_B", "beta_A", "beta_B", "omega_A", "speed", "lo", "hi",
                                                "count", "cop_beta_ratio", "speed_lo", "speed_hi", "speed_count"};

/// Cooling power along omega_B/omega_A for the four speed sets (table
/// "cooling") and the COP at maximum figure of merit against qubit A's speed
/// in the high-temperature limit (table "cop").
inline RunReport cmd_refrigerator(const RunConfig& cfg) {
    cfg.require_known(kFig3Keys, "fig3");
    const auto t = detail::read_temperatures(cfg, 2.0, 1.0);
    const double omega_A = require_positive(cfg, "omega_A", 1.0);
    const double v = require_speed(cfg, "speed", 0.8);
    const auto range = detail::read_range(cfg, 0.0025, 1.2, 400);
    if (!(range.lo > 0.0)) throw ConfigError("lo must be > 0 for a frequency-ratio sweep");
    const double cop_ratio = require_positive(cfg, "cop_beta_ratio", 0.65);
    if (!(cop_ratio < 1.0)) throw ConfigError("cop_beta_ratio (beta_A/beta_B) must be < 1");
    const double speed_lo = require_speed(cfg, "speed_lo", 0.0);
    const double speed_hi = require_speed(cfg, "speed_hi", 0.95);
    if (!(speed_lo < speed_hi)) throw ConfigError("speed_lo must be < speed_hi");
    const int speed_count = require_count(cfg, "speed_count", 400);

    auto report = detail::start_report("fig3", cfg);

    const double beta_A = 1.0 / t.T_A;
    const double beta_B = 1.0 / t.T_B;
    const std::vector<detail::SpeedPair> sets{{0.0, 0.0}, {v, 0.0}, {0.0, v}, {v, v}};
    const auto ratios = detail::linspace(range.lo, range.hi, range.count);
    Table cooling{"cooling",
                  {"speed_A", "speed_B", "frequency_ratio", "beta_eff_A", "beta_eff_B", "regime", "mean_heat_cold",
                   "cop", "figure_of_merit", "cop_carnot", "cop_carnot_eff", "cop_carnot_eff_high_T"},
                  {}};
    for (const auto& [vA, vB] : sets) {
        const double bA = detail::beta_eff(beta_A, vA, omega_A);
        const double hA = detail::high_T_beta_eff(beta_A, vA);
        const double hB = detail::high_T_beta_eff(beta_B, vB);
        const double high_t = hA < hB ? hA / (hB - hA) : kNaN;
        auto rows = ordered_parallel_map(ratios.size(), [&](std::size_t i) {
            const double omega_B = ratios[i] * omega_A;
            const machine::EffectivePoint p(omega_A, omega_B, bA, detail::beta_eff(beta_B, vB, omega_B));
            return std::vector<Cell>{vA, vB, ratios[i], p.beta_eff_A(), p.beta_eff_B(),
                                     std::string(machine::to_string(machine::classify_regime(p))),
                                     machine::mean_heat_cold(p),
                                     detail::or_nan([&] { return machine::cop(p); }),
                                     detail::or_nan([&] { return machine::figure_of_merit(p); }),
                                     beta_A / (beta_B - beta_A),
                                     detail::or_nan([&] { return machine::cop_carnot_eff(p); }), high_t};
        });
        for (auto& r : rows) cooling.rows.push_back(std::move(r));
    }
    report.tables.push_back(std::move(cooling));

    // beta_B = 1, beta_A = cop_ratio; qubit B static.
    const double eps_static = cop_ratio / (1.0 - cop_ratio);
    const double eps_star_static = machine::cop_at_max_chi(eps_static);
    const auto speeds = detail::linspace(speed_lo, speed_hi, speed_count);
    Table cop{"cop",
              {"speed_A", "beta_eff_A", "cop_carnot", "cop_carnot_eff", "cop_at_max_chi", "cop_at_max_chi_static",
               "exceeds_static_carnot"},
              {}};
    // Past the speed where T_A^eff drops to T_B there is no refrigerator.
    cop.rows = ordered_parallel_map(speeds.size(), [&](std::size_t i) {
        const double bA = detail::high_T_beta_eff(cop_ratio, speeds[i]);
        const double eps_eff = bA < 1.0 ? bA / (1.0 - bA) : kNaN;
        const double eps_star = bA < 1.0 ? machine::cop_at_max_chi(eps_eff) : kNaN;
        return std::vector<Cell>{speeds[i], bA, eps_static, eps_eff, eps_star, eps_star_static,
                                 eps_star > eps_static ? 1.0 : 0.0};
    });
    report.tables.push_back(std::move(cop));
    return report;
}

inline const std::set<std::string> kOptimizeKeys = {"mode", "T_A", "T_B", "beta_A", "beta_B", "speed_A", "speed_B",
                                                    "beta_eff_A", "beta_eff_B", "omega_A"};

/// Refrigerator optimum: closed-form frequency ratio, golden-section checks
/// on the high-temperature and exact figures of merit, and the COP chain.
/// Pipeline mode derives the effective temperatures from the
/// high-temperature series, where they do not depend on the gaps.
inline RunReport cmd_optimize(const RunConfig& cfg) {
    cfg.require_known(kOptimizeKeys, "optimize");
    double bA = 1.0;
    double bB = 2.0;
    if (point_mode(cfg) == PointMode::Analytic) {
        bA = require_positive(cfg, "beta_eff_A", 1.0);
        bB = require_positive(cfg, "beta_eff_B", 2.0);
    } else {
        const auto t = detail::read_temperatures(cfg, 2.0, 1.0);
        bA = detail::high_T_beta_eff(1.0 / t.T_A, require_speed(cfg, "speed_A", 0.0));
        bB = detail::high_T_beta_eff(1.0 / t.T_B, require_speed(cfg, "speed_B", 0.0));
    }
    if (!(bA < bB)) {
        throw DomainError("optimize: refrigerator needs beta_eff_A < beta_eff_B");
    }
    const double omega_A = require_positive(cfg, "omega_A", 1.0);
    const double threshold = bA / bB;
    const numerics::Tolerance tol{1e-13, 1e-13, 400};
    const double lo = threshold * 1e-9;
    const double hi = threshold * (1.0 - 1e-9);

    const double closed = machine::optimal_frequency_ratio_chi(bA, bB);
    const auto golden_high_t = numerics::maximize_scalar(
        [&](double r) { return machine::figure_of_merit_high_temperature({1.0, r, bA, bB}); }, lo, hi, tol);
    const auto golden_exact = numerics::maximize_scalar(
        [&](double r) { return machine::figure_of_merit({omega_A, r * omega_A, bA, bB}); }, lo, hi, tol);
    const double eps_c = bA / (bB - bA);

    auto report = detail::start_report("optimize", cfg);
    report.tables.push_back(Table{
        "optimize",
        {"beta_eff_A", "beta_eff_B", "omega_A", "ratio_closed_form", "ratio_golden_high_T", "ratio_golden_exact",
         "chi_max_high_T", "chi_max_exact", "cop_at_closed_form_ratio", "cop_carnot_eff", "cop_at_max_chi"},
        {{bA, bB, omega_A, closed, golden_high_t.argmax, golden_exact.argmax, golden_high_t.max, golden_exact.max,
          closed / (1.0 - closed), eps_c, machine::cop_at_max_chi(eps_c)}}});
    return report;
}

}  // namespace relmachine::cli
