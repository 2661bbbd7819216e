// Expected values come from tests/oracle/reference_values.py (mpmath, 50 digits).

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "relmachine/numerics.hpp"

using namespace relmachine;
using namespace relmachine::numerics;
using Catch::Approx;

TEST_CASE("log_ratio_one_minus_exp reference values", "[numerics]") {
    CHECK(log_ratio_one_minus_exp(1.0, 1.0) == 0.0);
    CHECK(log_ratio_one_minus_exp(2.0, 1.0) == Approx(0.31326168751822283405).epsilon(1e-14));
    // both sides negative: ln((1-e)/(1-e^2)) = -ln(1+e)
    CHECK(log_ratio_one_minus_exp(-1.0, -2.0) == Approx(-1.313261687518222834).epsilon(1e-14));
}

TEST_CASE("log_ratio_one_minus_exp rejects mixed signs and zero", "[numerics][errors]") {
    CHECK_THROWS_AS(log_ratio_one_minus_exp(1.0, -1.0), DomainError);
    CHECK_THROWS_AS(log_ratio_one_minus_exp(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(log_ratio_one_minus_exp(1.0, 0.0), DomainError);
}

TEST_CASE("log_ratio_one_minus_exp matches naive evaluation where that is safe", "[numerics][property]") {
    for (double a = 0.1; a <= 30.0; a *= 1.37) {
        for (double b = 0.1; b <= 30.0; b *= 1.41) {
            for (double sign : {1.0, -1.0}) {
                const double x = sign * a;
                const double y = sign * b;
                const double naive = std::log((1.0 - std::exp(-x)) / (1.0 - std::exp(-y)));
                const double got = log_ratio_one_minus_exp(x, y);
                // Naive form itself loses relative accuracy once the result is tiny.
                if (std::fabs(naive) > 1e-3) {
                    CHECK(std::fabs(got - naive) <= 1e-12 * std::fabs(naive));
                } else {
                    CHECK(std::fabs(got - naive) <= 1e-15);
                }
            }
        }
    }
}

TEST_CASE("log_ratio_one_minus_exp is finite across the extended range", "[numerics][property]") {
    for (double a = 1e-12; a <= 700.0; a *= 3.1) {
        for (double b = 1e-12; b <= 700.0; b *= 2.7) {
            CHECK(std::isfinite(log_ratio_one_minus_exp(a, b)));
            CHECK(std::isfinite(log_ratio_one_minus_exp(-a, -b)));
        }
    }
    // ln(a/b) limit for tiny arguments
    CHECK(log_ratio_one_minus_exp(2e-12, 1e-12) == Approx(std::log(2.0)).epsilon(1e-10));
}

TEST_CASE("x_coth_half_x", "[numerics]") {
    CHECK(x_coth_half_x(0.0) == 2.0);
    CHECK(x_coth_half_x(0.5) == Approx(2.0414940825367982841).epsilon(1e-14));
    CHECK(x_coth_half_x(-0.5) == x_coth_half_x(0.5));

    SECTION("series and direct branches agree at the switchover") {
        const double below = std::nextafter(kSeriesThreshold, 0.0);
        CHECK(x_coth_half_x(below) == Approx(x_coth_half_x(kSeriesThreshold)).epsilon(1e-14));
        CHECK(x_coth_half_x(1e-3) == Approx(2.0 + 1e-6 / 6.0).epsilon(1e-13));
    }

    SECTION("bounded below by 2 with equality only at 0") {
        // below ~5e-8 the x^2/6 term is under one ulp of 2
        for (double x = 1e-8; x <= 50.0; x *= 1.25) {
            CHECK(x_coth_half_x(x) >= 2.0);
            CHECK(x_coth_half_x(-x) == x_coth_half_x(x));
            if (x > 1e-7) CHECK(x_coth_half_x(x) > 2.0);
        }
    }
}

TEST_CASE("inverse_x_tanh_x", "[numerics]") {
    CHECK(inverse_x_tanh_x(0.0) == 0.0);
    CHECK(inverse_x_tanh_x(std::tanh(1.0)) == Approx(1.0).epsilon(1e-14));
    CHECK(inverse_x_tanh_x(0.027150) == Approx(0.1655218886982724264).epsilon(1e-13));
    CHECK_THROWS_AS(inverse_x_tanh_x(-1e-3), DomainError);

    SECTION("round trip") {
        for (double x : {0.01, 0.1, 1.0, 5.0, 20.0}) {
            CHECK(std::fabs(inverse_x_tanh_x(x * std::tanh(x)) / x - 1.0) <= 1e-10);
        }
    }
    SECTION("series branch meets the root finder") {
        const double y = 1e-6;
        const double x = inverse_x_tanh_x(y);
        CHECK(x * std::tanh(x) == Approx(y).epsilon(1e-13));
        const double y2 = std::nextafter(1e-6, 0.0);
        const double x2 = inverse_x_tanh_x(y2);
        CHECK(x2 * std::tanh(x2) == Approx(y2).epsilon(1e-13));
    }
}

TEST_CASE("generalized_tur_rhs", "[numerics]") {
    CHECK(generalized_tur_rhs(0.054300) == Approx(36.168171692280842328).epsilon(1e-12));
    CHECK(generalized_tur_rhs(2.0) == Approx(0.43922883989064515078).epsilon(1e-12));
    CHECK(generalized_tur_rhs(2.0) < 1.0);
    CHECK_THROWS_AS(generalized_tur_rhs(0.0), DomainError);
    CHECK_THROWS_AS(generalized_tur_rhs(-1.0), DomainError);

    SECTION("classical limit sigma * rhs -> 2") {
        for (double s : {1e-3, 1e-4, 1e-6, 1e-9}) {
            CHECK(std::fabs(generalized_tur_rhs(s) * s / 2.0 - 1.0) < 0.01);
        }
        CHECK(generalized_tur_rhs(1e-3) * 1e-3 == Approx(1.9993333777820107231).epsilon(1e-10));
    }

    SECTION("strictly decreasing") {
        double prev = generalized_tur_rhs(1e-6);
        for (double s = 2e-6; s < 100.0; s *= 1.5) {
            const double cur = generalized_tur_rhs(s);
            CHECK(cur < prev);
            prev = cur;
        }
    }
}

TEST_CASE("find_root", "[numerics]") {
    const double r = find_root([](double x) { return x * x - 2.0; }, 0.0, 2.0);
    CHECK(r == Approx(std::numbers::sqrt2).epsilon(1e-14));
    CHECK_THROWS_AS(find_root([](double x) { return x * x + 1.0; }, -1.0, 1.0), DomainError);
    CHECK_THROWS_AS(find_root([](double x) { return x; }, 1.0, -1.0), DomainError);
    CHECK_THROWS_AS(find_root([](double x) { return std::cbrt(x - 0.3); }, -1.0, 1.0, Tolerance{1e-300, 1e-300, 3}),
                    ConvergenceError);
    CHECK_THROWS_AS(Tolerance({0.0, 1e-12, 10}).validate(), DomainError);
}

TEST_CASE("maximize_scalar", "[numerics]") {
    const auto quad = maximize_scalar([](double x) { return -(x - 1.0) * (x - 1.0); }, 0.0, 2.0);
    CHECK(quad.argmax == Approx(1.0).margin(1e-7));
    CHECK(quad.max == Approx(0.0).margin(1e-13));

    const auto sine = maximize_scalar([](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
    CHECK(sine.argmax == Approx(std::numbers::pi / 2).margin(1e-7));
    CHECK(sine.max == Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(maximize_scalar([](double x) { return x; }, 1.0, 1.0), DomainError);
}
