#pragma once

// Scalar special functions, a bracketing root finder and a golden-section
// maximizer. Everything here is pure and reentrant.

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "relmachine/errors.hpp"

namespace relmachine::numerics {

struct Tolerance {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_iter = 200;

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_iter < 1) {
            throw DomainError("Tolerance: abs_tol, rel_tol must be > 0 and max_iter >= 1");
        }
    }
};

// Below this magnitude the removable singularities switch to series.
inline constexpr double kSeriesThreshold = 1e-4;

/// ln(1 - e^{-x}) for x > 0, following Maechler's log1mexp switch at ln 2.
[[nodiscard]] inline double log1mexp(double x) {
    if (!(x > 0.0)) {
        throw DomainError("log1mexp: argument must be positive");
    }
    if (x <= std::numbers::ln2) {
        return std::log(-std::expm1(-x));
    }
    return std::log1p(-std::exp(-x));
}

/// ln|1 - e^{-x}| for any nonzero x.
[[nodiscard]] inline double log_abs_one_minus_exp(double x) {
    if (x > 0.0) {
        return log1mexp(x);
    }
    // 1 - e^{-x} = -e^{-x}(1 - e^{x}) for x < 0
    return -x + log1mexp(-x);
}

/// ln|e^{y} - 1| for any nonzero y.
[[nodiscard]] inline double log_abs_expm1(double y) {
    if (y > 0.0) {
        return y + log1mexp(y);
    }
    return log1mexp(-y);
}

/// ln((1 - e^{-a}) / (1 - e^{-b})) for a, b nonzero and of equal sign.
[[nodiscard]] inline double log_ratio_one_minus_exp(double a, double b) {
    if (a == 0.0 || b == 0.0 || std::isnan(a) || std::isnan(b) || (a > 0.0) != (b > 0.0)) {
        throw DomainError("log_ratio_one_minus_exp: arguments must be nonzero and share a sign");
    }
    if (a == b) {
        return 0.0;
    }
    return log_abs_one_minus_exp(a) - log_abs_one_minus_exp(b);
}

/// x coth(x/2), even, equal to 2 at the origin.
[[nodiscard]] inline double x_coth_half_x(double x) {
    const double ax = std::fabs(x);
    if (ax < kSeriesThreshold) {
        // 2 + x^2/6 - x^4/360
        const double x2 = ax * ax;
        return 2.0 + x2 / 6.0 - x2 * x2 / 360.0;
    }
    return ax / std::tanh(0.5 * ax);
}

/// Root of f on [lo, hi] with f(lo), f(hi) of opposite sign.
///
/// Illinois-modified regula falsi: secant steps on the bracket, with the
/// stale endpoint's value halved whenever the same side is retained twice.
/// A plain bisection step is taken if the secant point leaves the bracket.
template <class F>
[[nodiscard]] double find_root(F&& f, double lo, double hi, const Tolerance& tol = {}) {
    tol.validate();
    if (!(lo < hi)) {
        throw DomainError("find_root: requires lo < hi");
    }
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        throw DomainError("find_root: root is not bracketed");
    }
    int side = 0;
    double x = lo;
    // unweighted endpoint values for the final interpolation
    double flo_true = flo;
    double fhi_true = fhi;
    for (int it = 0; it < tol.max_iter; ++it) {
        double next = (lo * fhi - hi * flo) / (fhi - flo);
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        const double step = std::fabs(next - x);
        x = next;
        const double fx = f(x);
        if (fx == 0.0) {
            return x;
        }
        if ((fx > 0.0) == (flo > 0.0)) {
            lo = x;
            flo = flo_true = fx;
            if (side == -1) fhi *= 0.5;
            side = -1;
        } else {
            hi = x;
            fhi = fhi_true = fx;
            if (side == +1) flo *= 0.5;
            side = +1;
        }
        const double scale = tol.abs_tol + tol.rel_tol * std::fabs(x);
        if (hi - lo <= scale || (it > 0 && step <= 1e-3 * scale)) {
            const double refined = (lo * fhi_true - hi * flo_true) / (fhi_true - flo_true);
            return (refined >= lo && refined <= hi) ? refined : x;
        }
    }
    throw ConvergenceError("find_root: max_iter exceeded");
}

/// Unique x >= 0 with x tanh(x) = y.
[[nodiscard]] inline double inverse_x_tanh_x(double y, const Tolerance& tol = {}) {
    if (!(y >= 0.0)) {
        throw DomainError("inverse_x_tanh_x: y must be >= 0");
    }
    if (y == 0.0) {
        return 0.0;
    }
    if (y < 1e-6) {
        // x^2 = y + y^2/3 + 4y^3/45 + O(y^4)
        return std::sqrt(y + y * y / 3.0 + 4.0 * y * y * y / 45.0);
    }
    const double hi = std::fmax(std::sqrt(y), y) + 1.0;
    return find_root([y](double x) { return x * std::tanh(x) - y; }, 0.0, hi, tol);
}

/// csch^2(g(sigma/2)) with g the inverse of x tanh x. Lower bound on the
/// noise-to-signal ratio of any current given mean entropy production sigma.
[[nodiscard]] inline double generalized_tur_rhs(double sigma) {
    if (!(sigma > 0.0)) {
        throw DomainError("generalized_tur_rhs: sigma must be > 0");
    }
    const double s = std::sinh(inverse_x_tanh_x(0.5 * sigma));
    return 1.0 / (s * s);
}

struct ScalarMax {
    double argmax;
    double max;
};

/// Golden-section search for the maximum of f on [lo, hi]. Exact for unimodal
/// f; otherwise returns some local maximum.
template <class F>
[[nodiscard]] ScalarMax maximize_scalar(F&& f, double lo, double hi, const Tolerance& tol = {}) {
    tol.validate();
    if (!(lo < hi)) {
        throw DomainError("maximize_scalar: requires lo < hi");
    }
    constexpr double kInvPhi = 0.6180339887498948482;  // 1/phi
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < tol.max_iter; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= tol.abs_tol + tol.rel_tol * std::fabs(mid)) {
            break;
        }
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = f(x1);
        }
    }
    return f1 >= f2 ? ScalarMax{x1, f1} : ScalarMax{x2, f2};
}

}  // namespace relmachine::numerics
