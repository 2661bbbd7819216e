#pragma once

// Exact two-point-measurement statistics of one SWAP cycle.
//
// Qubits start in independent Gibbs states with occupations n_a, n_b. The
// SWAP exchanges them, so each of the four initial configurations is a
// trajectory with Delta n = n_b - n_a and
//
//   W   = (omega_A - omega_B) Delta n
//   Q_H = -omega_A Delta n
//   sigma = (a - b) Delta n
//
// Enumerating the four outcomes gives every moment, the characteristic
// function and both fluctuation theorems without approximation.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "relmachine/detector.hpp"
#include "relmachine/errors.hpp"
#include "relmachine/machine.hpp"

namespace relmachine::stochastic {

using machine::EffectivePoint;
using Complex = std::complex<double>;

struct Trajectory {
    int n_a;
    int n_b;
    double probability;
    double work;
    double heat_hot;
    double entropy;

    [[nodiscard]] int delta_n() const { return n_b - n_a; }
};

struct JointDistribution {
    std::array<Trajectory, 4> trajectories;
    EffectivePoint point;
};

[[nodiscard]] inline JointDistribution enumerate_distribution(const EffectivePoint& p) {
    const double pa = detector::excitation_probability(p.beta_eff_A(), p.omega_A());
    const double pb = detector::excitation_probability(p.beta_eff_B(), p.omega_B());
    // ground-state weights computed directly rather than as 1 - p
    const double qa = detector::excitation_probability(-p.beta_eff_A(), p.omega_A());
    const double qb = detector::excitation_probability(-p.beta_eff_B(), p.omega_B());
    const double dw = p.omega_A() - p.omega_B();
    const double dab = p.a() - p.b();

    std::array<Trajectory, 4> out{};
    std::size_t k = 0;
    for (int na : {0, 1}) {
        for (int nb : {0, 1}) {
            const int dn = nb - na;
            out[k++] = Trajectory{
                .n_a = na,
                .n_b = nb,
                .probability = (na ? pa : qa) * (nb ? pb : qb),
                .work = dw * dn,
                .heat_hot = -p.omega_A() * dn,
                .entropy = dab * dn,
            };
        }
    }
    return JointDistribution{out, p};
}

inline constexpr int kMaxMomentOrder = 4;

/// <W^m Q_H^n> as an exact probability-weighted sum.
[[nodiscard]] inline double moments(const JointDistribution& d, int m, int n) {
    if (m < 0 || n < 0 || m + n > kMaxMomentOrder) {
        throw DomainError("moments: supported orders are m, n >= 0 with m + n <= 4");
    }
    double sum = 0.0;
    for (const auto& t : d.trajectories) {
        sum += t.probability * std::pow(t.work, m) * std::pow(t.heat_hot, n);
    }
    return sum;
}

[[nodiscard]] inline double mean_entropy(const JointDistribution& d) {
    double sum = 0.0;
    for (const auto& t : d.trajectories) {
        sum += t.probability * t.entropy;
    }
    return sum;
}

[[nodiscard]] inline double variance_work(const JointDistribution& d) {
    const double m1 = moments(d, 1, 0);
    return moments(d, 2, 0) - m1 * m1;
}

[[nodiscard]] inline double variance_heat_hot(const JointDistribution& d) {
    const double m1 = moments(d, 0, 1);
    return moments(d, 0, 2) - m1 * m1;
}

/// ln <exp(i chi_w W + i chi_h Q_H)>, principal branch.
[[nodiscard]] inline Complex cgf_numeric(const JointDistribution& d, Complex chi_w, Complex chi_h) {
    const Complex i{0.0, 1.0};
    Complex sum{0.0, 0.0};
    for (const auto& t : d.trajectories) {
        sum += t.probability * std::exp(i * (chi_w * t.work + chi_h * t.heat_hot));
    }
    if (sum == Complex{0.0, 0.0}) {
        throw DomainError("cgf_numeric: characteristic function vanishes");
    }
    return std::log(sum);
}

/// Closed-form cumulant generating function,
///   ln[cosh((a + i phi)/2) cosh((b - i phi)/2) / (cosh(a/2) cosh(b/2))]
/// with phi = omega_A (chi_w - chi_h) - omega_B chi_w.
[[nodiscard]] inline Complex cgf_analytic(const EffectivePoint& p, Complex chi_w, Complex chi_h) {
    const Complex i{0.0, 1.0};
    const Complex phi = p.omega_A() * (chi_w - chi_h) - p.omega_B() * chi_w;
    const Complex num = std::cosh(0.5 * (p.a() + i * phi)) * std::cosh(0.5 * (p.b() - i * phi));
    const double den = std::cosh(0.5 * p.a()) * std::cosh(0.5 * p.b());
    if (std::abs(num) <= 4.0 * std::numeric_limits<double>::epsilon() * den) {
        throw DomainError("cgf_analytic: logarithm singular at a cosh zero");
    }
    return std::log(num / den);
}

/// <exp(-sigma)>; equals 1 by the integral fluctuation theorem.
[[nodiscard]] inline double check_integral_ft(const JointDistribution& d) {
    double sum = 0.0;
    for (const auto& t : d.trajectories) {
        sum += t.probability * std::exp(-t.entropy);
    }
    return sum;
}

struct ExchangePair {
    double forward_prob;
    double reverse_prob;
    double entropy;
};

/// For each trajectory, its probability, that of the Delta n-reversed
/// trajectory, and its entropy; forward/reverse = exp(entropy).
[[nodiscard]] inline std::vector<ExchangePair> check_exchange_ft(const JointDistribution& d) {
    std::vector<ExchangePair> out;
    out.reserve(d.trajectories.size());
    for (const auto& t : d.trajectories) {
        for (const auto& r : d.trajectories) {
            if (r.n_a == t.n_b && r.n_b == t.n_a) {
                out.push_back({t.probability, r.probability, t.entropy});
                break;
            }
        }
    }
    return out;
}

/// Largest |forward/(reverse e^sigma) - 1| over the outcome space.
[[nodiscard]] inline double exchange_ft_max_deviation(const JointDistribution& d) {
    double worst = 0.0;
    for (const auto& e : check_exchange_ft(d)) {
        worst = std::fmax(worst, std::fabs(e.forward_prob / (e.reverse_prob * std::exp(e.entropy)) - 1.0));
    }
    return worst;
}

}  // namespace relmachine::stochastic
