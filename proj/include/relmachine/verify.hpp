#pragma once

// Invariant suite behind `relmachine verify`. Each family sweeps a seeded
// random grid and records its worst residual against a fixed tolerance.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "relmachine/detector.hpp"
#include "relmachine/machine.hpp"
#include "relmachine/numerics.hpp"
#include "relmachine/stochastic.hpp"

namespace relmachine::verify {

struct Options {
    int grid = 1000;
    std::uint64_t seed = 20251016;
    // Test hook: flips the sign of the closed-form mean work wherever the
    // suite consumes it, which the harness must report as a failure.
    bool inject_fault = false;
};

struct FamilyResult {
    std::string name;
    std::size_t checks = 0;
    double worst = 0.0;
    double tolerance = 0.0;
    bool passed = true;

    void record(double residual, bool ok) {
        ++checks;
        if (!(residual <= worst)) worst = residual;  // NaN sticks
        if (!ok) passed = false;
    }
    void record(double residual) { record(residual, residual <= tolerance); }
};

struct Result {
    std::vector<FamilyResult> families;
    double seconds = 0.0;

    [[nodiscard]] bool passed() const {
        for (const auto& f : families) {
            if (!f.passed) return false;
        }
        return true;
    }
    [[nodiscard]] const FamilyResult& family(const std::string& name) const {
        for (const auto& f : families) {
            if (f.name == name) return f;
        }
        throw std::out_of_range("no family " + name);
    }
};

namespace detail {

inline double rel(double x, double ref) {
    return std::fabs(x - ref) / std::fabs(ref);
}

// Random point with a, b in (0, 20], omega_B/omega_A in (0, 2].
class PointSampler {
public:
    explicit PointSampler(std::uint64_t seed) : rng_(seed) {}

    machine::EffectivePoint next() {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const double a = 20.0 * (1.0 - unit(rng_));
        const double b = 20.0 * (1.0 - unit(rng_));
        const double ratio = 2.0 * (1.0 - unit(rng_));
        const double omega_A = 0.05 + 1.95 * unit(rng_);
        const double omega_B = ratio * omega_A;
        return machine::EffectivePoint(omega_A, omega_B, a / omega_A, b / omega_B);
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace detail

[[nodiscard]] inline Result run(const Options& opt) {
    using namespace machine;
    const auto start = std::chrono::steady_clock::now();
    const double eps = std::numeric_limits<double>::epsilon();
    auto work = [&](const EffectivePoint& p) { return opt.inject_fault ? -mean_work(p) : mean_work(p); };

    FamilyResult oracle{"oracle_equivalence", 0, 0.0, 1e-12};
    FamilyResult first_law{"first_law", 0, 0.0, 1e-14};
    FamilyResult second_law{"second_law", 0, 0.0, 0.0};
    FamilyResult integral_ft{"integral_ft", 0, 0.0, 1e-13};
    FamilyResult exchange_ft{"exchange_ft", 0, 0.0, 1e-13};
    FamilyResult snr_equality{"snr_equality", 0, 0.0, 1e-11};
    FamilyResult snr_identity{"snr_identity", 0, 0.0, 1e-11};
    FamilyResult tur_order{"tur_ordering", 0, 0.0, 0.0};
    FamilyResult engine{"engine_bounds", 0, 0.0, 0.0};
    FamilyResult fridge{"refrigerator_bounds", 0, 0.0, 0.0};

    detail::PointSampler sampler(opt.seed);
    for (int i = 0; i < opt.grid; ++i) {
        const auto p = sampler.next();
        const auto d = stochastic::enumerate_distribution(p);
        const double w = work(p);
        const double qh = mean_heat_hot(p);
        const double qc = mean_heat_cold(p);
        const double sigma = entropy_production(p);

        oracle.record(std::fabs(stochastic::moments(d, 1, 0) - w));
        oracle.record(std::fabs(stochastic::moments(d, 0, 1) - qh));
        oracle.record(std::fabs(stochastic::variance_work(d) - variance_work(p)));
        oracle.record(std::fabs(stochastic::variance_heat_hot(d) - variance_heat_hot(p)));
        oracle.record(std::fabs(stochastic::mean_entropy(d) - sigma));

        first_law.record(std::fabs(w + qh + qc));
        second_law.record(-sigma, sigma >= 0.0);

        integral_ft.record(std::fabs(stochastic::check_integral_ft(d) - 1.0));
        exchange_ft.record(stochastic::exchange_ft_max_deviation(d));

        if (qh == 0.0 || sigma == 0.0) continue;
        const double s = snr(p);
        if (p.omega_A() != p.omega_B()) {
            snr_equality.record(detail::rel(variance_work(p) / (w * w), s));
        }
        // The identity's Sigma is the linear combination of the mean currents;
        // its agreement with the product form is checked to the rounding
        // expected from that combination.
        const double sigma_linear = (p.beta_eff_B() - p.beta_eff_A()) * qh + p.beta_eff_B() * w;
        const double combo_scale = std::fabs(p.beta_eff_B() - p.beta_eff_A()) * std::fabs(qh) +
                                   p.beta_eff_B() * std::fabs(w);
        const double linear_err = std::fabs(sigma_linear - sigma);
        snr_identity.record(linear_err / sigma, linear_err <= 1e-11 * sigma + 16.0 * eps * combo_scale);
        snr_identity.record(detail::rel(s + 1.0, numerics::x_coth_half_x(p.a() - p.b()) / sigma));

        const auto tur = tur_report(p);
        tur_order.record(tur.shifted_rhs - tur.snr, tur.snr >= tur.shifted_rhs * (1.0 - 1e-12));
        tur_order.record(tur.generalized_rhs - tur.snr, tur.snr >= tur.generalized_rhs * (1.0 - 1e-12));

        // bounds are stated with qubit A on the hotter side
        const auto h = hot_first(p);
        switch (classify_regime(h)) {
            case OperatingRegime::Engine: {
                const double eta = otto_efficiency(h);
                engine.record(eta - carnot_efficiency_eff(h), eta <= carnot_efficiency_eff(h) * (1.0 + 1e-12));
                engine.record(eta - efficiency_power_tradeoff_rhs(h),
                              eta <= efficiency_power_tradeoff_rhs(h) * (1.0 + 1e-12));
                break;
            }
            case OperatingRegime::Refrigerator: {
                const double eps_r = cop(h);
                fridge.record(eps_r - cop_carnot_eff(h), eps_r <= cop_carnot_eff(h) * (1.0 + 1e-12));
                fridge.record(eps_r - cop_tradeoff_rhs(h), eps_r <= cop_tradeoff_rhs(h) * (1.0 + 1e-12));
                break;
            }
            default:
                break;
        }
    }

    // Closed-form chi optimum against golden-section search.
    FamilyResult optimum{"optimization_consistency", 0, 0.0, 1e-6};
    {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const numerics::Tolerance tol{1e-13, 1e-13, 400};
        for (int i = 0; i < 100; ++i) {
            const double bA = 0.05 + 5.0 * unit(sampler.engine());
            const double bB = bA * (1.05 + 4.0 * unit(sampler.engine()));
            const double t = bA / bB;
            const auto best = numerics::maximize_scalar(
                [&](double r) { return figure_of_merit_high_temperature({1.0, r, bA, bB}); }, t * 1e-9,
                t * (1.0 - 1e-9), tol);
            optimum.record(std::fabs(best.argmax - optimal_frequency_ratio_chi(bA, bB)));
        }
    }

    // Cumulant generating function: two routes and the fluctuation symmetries.
    FamilyResult cgf{"cgf_identities", 0, 0.0, 1e-10};
    {
        using C = std::complex<double>;
        const C i{0.0, 1.0};
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int k = 0; k < 20; ++k) {
            const auto p = sampler.next();
            const auto d = stochastic::enumerate_distribution(p);
            // 20 x 20 grid of counting fields, |chi| <= 5
            for (int m = 0; m < 20; ++m) {
                for (int n = 0; n < 20; ++n) {
                    const C cw{-3.5 + 7.0 * m / 19.0, 0.5 * (2.0 * unit(sampler.engine()) - 1.0)};
                    const C ch{-3.5 + 7.0 * n / 19.0, 0.5 * (2.0 * unit(sampler.engine()) - 1.0)};
                    cgf.record(std::abs(stochastic::cgf_numeric(d, cw, ch) - stochastic::cgf_analytic(p, cw, ch)));
                }
            }
            const double scale = 1.0;
            const C fw = i * p.beta_eff_B();
            const C fh = i * (p.beta_eff_B() - p.beta_eff_A());
            cgf.record(std::abs(stochastic::cgf_analytic(p, fw, fh)), std::abs(stochastic::cgf_analytic(p, fw, fh)) <= 1e-12);
            const C cw{scale * unit(sampler.engine()), scale * unit(sampler.engine())};
            const C ch{scale * unit(sampler.engine()), -scale * unit(sampler.engine())};
            cgf.record(std::abs(stochastic::cgf_analytic(p, fw - cw, fh - ch) - stochastic::cgf_analytic(p, cw, ch)));
        }
    }

    // Detector: detailed balance from independently evaluated rates, static
    // limit, and the hot/cold crossover of the effective temperature.
    FamilyResult detector_family{"detector", 0, 0.0, 1e-10};
    for (double v : {0.0, 1e-6, 0.2, 0.5, 0.8, 0.95}) {
        for (double bw : {1e-3, 0.1, 1.0, 5.0, 20.0}) {
            const detector::DetectorSpec det{bw, v, 1.0};
            const detector::BathSpec bath{1.0};
            const double beta_eff = detector::effective_inverse_temperature(det, bath);
            const double ratio = detector::transition_rate(det, bath, -bw) / detector::transition_rate(det, bath, bw);
            detector_family.record(detail::rel(ratio, std::exp(bw * beta_eff)));
            if (v == 0.0) detector_family.record(std::fabs(beta_eff - 1.0), beta_eff == 1.0);
        }
    }
    for (double v : {0.2, 0.5, 0.8}) {
        const detector::BathSpec bath{1.0};
        const double cold = detector::effective_temperature({0.1, v, 1.0}, bath);
        const double hot = detector::effective_temperature({10.0, v, 1.0}, bath);
        detector_family.record(0.0, cold < 1.0 && hot > 1.0);
    }

    Result out;
    out.families = {oracle,      first_law,   second_law, integral_ft, exchange_ft,    snr_equality,
                    snr_identity, tur_order,  engine,     fridge,      optimum,        cgf,
                    detector_family};
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

inline void print(std::ostream& os, const Result& r) {
    for (const auto& f : r.families) {
        char line[200];
        std::snprintf(line, sizeof line, "%-26s %s  checks=%-7zu worst=%.3e tol=%.1e", f.name.c_str(),
                      f.passed ? "PASS" : "FAIL", f.checks, f.worst, f.tolerance);
        os << line << '\n';
    }
    char tail[80];
    std::snprintf(tail, sizeof tail, "verify: %s in %.3f s", r.passed() ? "all families passed" : "FAILED", r.seconds);
    os << tail << '\n';
}

}  // namespace relmachine::verify
