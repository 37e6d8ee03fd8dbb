#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracle_helpers.hpp"
#include "satshare/config_io.hpp"
#include "satshare/laplace.hpp"
#include "satshare/quadrature.hpp"

using namespace satshare;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("finite integrals of simple kernels") {
    auto r = integrate_finite([](double x) { return x; }, 0.0, 1.0);
    CHECK_THAT(r.value, WithinAbs(0.5, 1e-12));

    CHECK(integrate_finite([](double) { return 1.0; }, 2.0, 2.0).value == 0.0);
    CHECK_THROWS_AS(integrate_finite([](double) { return 1.0; }, 1.0, 0.0),
                    std::invalid_argument);
}

TEST_CASE("logarithmic antiderivative oracle") {
    for (double a : {0.0, 0.5, 2.0, 10.0}) {
        const double b = a + 7.5;
        const auto got = integrate_finite([](double u) { return 1.0 / (1.0 + u); }, a, b);
        const double want = std::log((1.0 + b) / (1.0 + a));
        CHECK_THAT(got.value, WithinRel(want, 1e-10));
        CHECK(got.error_estimate <= 1e-8 * std::fabs(want) + 1e-10);
    }
}

TEST_CASE("semi-infinite integrals") {
    const auto expo = integrate_semi_infinite([](double x) { return std::exp(-x); }, 0.0);
    CHECK_THAT(expo.value, WithinRel(1.0, 1e-8));

    QuadratureSettings qs;
    qs.semi_infinite_map = QuadratureSettings::Map::Exponential;
    CHECK_THAT(integrate_semi_infinite([](double x) { return std::exp(-x); }, 0.0, qs).value,
               WithinRel(1.0, 1e-8));

    // Rayleigh nearest-neighbour density normalizes to one.
    const double lam = 1.0;
    const auto ray = integrate_semi_infinite(
        [&](double l) { return 2.0 * pi * lam * l * std::exp(-pi * lam * l * l); }, 0.0);
    CHECK_THAT(ray.value, WithinRel(1.0, 1e-8));
}

TEST_CASE("planar interference tail matches the arctan closed form") {
    const double alpha = 4.0;
    for (double c : {0.3, 2.5, 40.0, 1e4}) {
        const double rp = 1.3;
        auto kernel = [&](double x) {
            return (1.0 - 1.0 / (1.0 + c * std::pow(x, -alpha))) * x;
        };
        const double want =
            0.5 * std::sqrt(c) * (pi / 2.0 - std::atan(rp * rp / std::sqrt(c)));
        CHECK_THAT(integrate_semi_infinite(kernel, rp).value, WithinRel(want, 1e-8));
    }
}

TEST_CASE("spectral-efficiency style integral against a fine trapezoid") {
    auto f = [](double t) { return std::exp(-(std::exp2(t) - 1.0)); };
    const double brute = oracle::trapezoid(f, 0.0, 40.0, 400000);
    const auto got = integrate_semi_infinite(f, 0.0);
    CHECK_THAT(got.value, WithinRel(brute, 1e-7));
    CHECK_THAT(got.value, WithinRel(0.86034738227088595, 1e-8));
}

TEST_CASE("linearity and splitting invariance") {
    auto f = [](double x) { return std::sin(x) + 0.3 * x * x; };
    auto g = [](double x) { return std::exp(-0.5 * x); };
    const double a = 0.2, b = 6.0, alpha = 1.7, beta = -2.4;
    const auto fi = integrate_finite(f, a, b);
    const auto gi = integrate_finite(g, a, b);
    const auto combo = integrate_finite(
        [&](double x) { return alpha * f(x) + beta * g(x); }, a, b);
    CHECK_THAT(combo.value, WithinRel(alpha * fi.value + beta * gi.value, 1e-8));

    for (double c : {0.5, 2.9, 5.5}) {
        const auto left = integrate_finite(f, a, c);
        const auto right = integrate_finite(f, c, b);
        CHECK_THAT(left.value + right.value, WithinRel(fi.value, 2e-8));
    }
}

TEST_CASE("subdivision budget exhaustion carries the best estimate") {
    QuadratureSettings qs;
    qs.max_subdivisions = 4;
    qs.rel_tol = 1e-14;
    qs.abs_tol = 1e-300;
    auto nasty = [](double x) { return std::sqrt(std::fabs(x - 0.321)); };
    try {
        integrate_finite(nasty, 0.0, 1.0, qs);
        FAIL("expected QuadratureError");
    } catch (const QuadratureError& e) {
        CHECK(std::isfinite(e.best_estimate));
        CHECK(e.best_estimate > 0.0);
        CHECK(e.achieved_error > 0.0);
    }
}

TEST_CASE("non-decaying integrand is rejected by the tail probe") {
    CHECK_THROWS_AS(integrate_semi_infinite([](double x) { return x; }, 1.0),
                    QuadratureError);
}

TEST_CASE("exp-form derivatives") {
    ExpFormTransform decay;
    decay.exponent = [](double s) { return -s; };
    decay.exponent_derivatives = {[](double) { return -1.0; },
                                  [](double) { return 0.0; }};
    CHECK_THAT(nth_derivative_exp(decay, 0.0, 1), WithinRel(-1.0, 1e-12));
    CHECK_THAT(nth_derivative_exp(decay, 0.7, 0), WithinRel(std::exp(-0.7), 1e-12));

    ExpFormTransform gauss;
    gauss.exponent = [](double s) { return -s * s; };
    gauss.exponent_derivatives = {[](double s) { return -2.0 * s; },
                                  [](double) { return -2.0; }};
    CHECK_THAT(nth_derivative_exp(gauss, 1.0, 2), WithinRel(2.0 * std::exp(-1.0), 1e-12));
    CHECK_THROWS_AS(nth_derivative_exp(gauss, 1.0, 3), std::invalid_argument);
}

TEST_CASE("finite differences with Richardson extrapolation") {
    CHECK_THAT(finite_diff_derivative([](double x) { return std::exp(x); }, 0.0, 1),
               WithinAbs(1.0, 1e-6));
    CHECK_THAT(finite_diff_derivative([](double x) { return x * x; }, 3.0, 2),
               WithinAbs(2.0, 1e-6));
    CHECK_THAT(finite_diff_derivative([](double x) { return x * x * x; }, 1.0, 3),
               WithinAbs(6.0, 1e-5));
    CHECK_THROWS_AS(finite_diff_derivative([](double x) { return x; }, 1.0, 4),
                    std::invalid_argument);
}

TEST_CASE("analytic exponent derivatives agree with finite differences") {
    ScenarioConfig cfg = default_scenario();
    cfg.ntn.nakagami_m = 2;
    const double lam = 5e-12;
    const double r0 = 6e5;
    QuadratureSettings tight;
    tight.rel_tol = 1e-12;
    tight.abs_tol = 1e-16;

    ExpFormTransform tf;
    tf.exponent = [&](double s) {
        return ntn_interference_exponent(s, lam, r0, cfg.geometry, cfg.ntn, 0, tight)[0];
    };
    for (int j = 1; j <= 3; ++j) {
        tf.exponent_derivatives.push_back([&, j](double s) {
            return ntn_interference_exponent(s, lam, r0, cfg.geometry, cfg.ntn, j, tight)
                [static_cast<std::size_t>(j)];
        });
    }

    auto value = [&](double s) { return tf.value(s); };
    CHECK(value(0.0) == 1.0);
    double prev = 1.0;
    // s on the scale set by the desired-link SINR inversion for this geometry
    for (double s : {1e6, 3e7, 3e8}) {
        const double now = value(s);
        CHECK(now > 0.0);
        CHECK(now < prev); // transform strictly decreasing
        prev = now;
        for (int k = 1; k <= 2; ++k) {
            const double analytic = nth_derivative_exp(tf, s, k);
            const double numeric = finite_diff_derivative(value, s, k, s * 0.25);
            CHECK_THAT(analytic, WithinRel(numeric, 1e-5));
        }
    }
}
