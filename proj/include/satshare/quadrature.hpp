#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace satshare {

struct QuadratureSettings {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
    enum class Map { Algebraic, Exponential };
    Map semi_infinite_map = Map::Algebraic;
};

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double best, double achieved)
        : std::runtime_error(what + " (best estimate " + std::to_string(best) +
                             ", error estimate " + std::to_string(achieved) + ")"),
          best_estimate(best), achieved_error(achieved) {}
    double best_estimate;
    double achieved_error;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes/weights on [-1,1]; column 0 abscissa,
// column 1 Gauss-7 weight (0 for Kronrod-only nodes), column 2 Kronrod-15 weight.
inline constexpr double gk15[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0,               0.204432940075298},
    {0.586087235467691, 0.0,               0.169004726639267},
    {0.864864423359769, 0.0,               0.104790010322250},
    {0.991455371120813, 0.0,               0.022935322010529},
};

template <class F>
IntegralResult gk15_panel(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f0 = f(mid);
    double g7 = gk15[0][1] * f0;
    double k15 = gk15[0][2] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * gk15[i][0];
        const double fsum = f(mid + dx) + f(mid - dx);
        g7 += gk15[i][1] * fsum;
        k15 += gk15[i][2] * fsum;
    }
    g7 *= half;
    k15 *= half;
    // Standard QUADPACK-style error model for the embedded pair.
    const double diff = std::fabs(k15 - g7);
    const double err = diff * std::sqrt(std::min(1.0, 200.0 * diff));
    return {k15, err};
}

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

} // namespace detail

// Adaptive Gauss-Kronrod on [a,b]. Splits the worst panel until the summed
// error estimate meets max(abs_tol, rel_tol*|value|) or the budget runs out.
template <class F>
IntegralResult integrate_finite(F&& f, double a, double b,
                                const QuadratureSettings& s = {}) {
    if (!(a <= b)) throw std::invalid_argument("integrate_finite: requires a <= b");
    if (a == b) return {0.0, 0.0};

    std::priority_queue<detail::Panel> panels;
    auto first = detail::gk15_panel(f, a, b);
    panels.push({a, b, first.value, first.error_estimate});
    double total = first.value;
    double total_err = first.error_estimate;

    for (int used = 1; used < s.max_subdivisions; ++used) {
        if (total_err <= std::max(s.abs_tol, s.rel_tol * std::fabs(total)))
            return {total, total_err};
        detail::Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval no longer splittable in floating point; keep its estimate.
            total_err -= worst.error;
            continue;
        }
        auto left = detail::gk15_panel(f, worst.a, mid);
        auto right = detail::gk15_panel(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error_estimate + right.error_estimate - worst.error;
        panels.push({worst.a, mid, left.value, left.error_estimate});
        panels.push({mid, worst.b, right.value, right.error_estimate});
    }
    if (total_err <= std::max(s.abs_tol, s.rel_tol * std::fabs(total)))
        return {total, total_err};
    throw QuadratureError("integrate_finite: subdivision budget exhausted", total, total_err);
}

// Integral over [a, inf). The integrand must decay to zero; a tail probe
// rejects obviously non-decaying inputs before any work is done.
template <class F>
IntegralResult integrate_semi_infinite(F&& f, double a,
                                       const QuadratureSettings& s = {}) {
    const double scale = std::max(1.0, std::fabs(a));

    auto mapped = [&](double t) -> double {
        double x, jac;
        if (s.semi_infinite_map == QuadratureSettings::Map::Algebraic) {
            const double one_minus = 1.0 - t;
            x = a + scale * t / one_minus;
            jac = scale / (one_minus * one_minus);
        } else {
            const double one_minus = 1.0 - t;
            x = a - scale * std::log(one_minus);
            jac = scale / one_minus;
        }
        if (!std::isfinite(x) || !std::isfinite(jac)) return 0.0;
        const double v = f(x) * jac;
        return std::isfinite(v) ? v : 0.0;
    };

    double probe_near = std::fabs(mapped(1.0 - 1e-3));
    double probe_far = std::fabs(mapped(1.0 - 1e-7));
    if (probe_far > probe_near && probe_far > s.abs_tol)
        throw QuadratureError("integrate_semi_infinite: integrand does not decay", 0.0,
                              probe_far);

    return integrate_finite(mapped, 0.0, 1.0, s);
}

// Laplace-transform-style object: L(s) = exp(g(s)) with caller-supplied
// analytic derivatives of the exponent.
struct ExpFormTransform {
    std::function<double(double)> exponent;
    std::vector<std::function<double(double)>> exponent_derivatives; // g', g'', ...

    double value(double s) const { return std::exp(exponent(s)); }
};

// Given g(s), g'(s), ..., g^(k)(s) in `g`, writes d^j/ds^j exp(g(s)) for
// j = 0..k into `out` via the Leibniz recurrence L^(n) = sum C(n-1,j) g^(n-j) L^(j).
inline void exp_derivatives_from_exponent(std::span<const double> g, std::span<double> out) {
    const std::size_t n = g.size();
    if (out.size() < n) throw std::invalid_argument("exp_derivatives: output too small");
    out[0] = std::exp(g[0]);
    for (std::size_t k = 1; k < n; ++k) {
        double binom = 1.0; // C(k-1, j) built incrementally
        double acc = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            acc += binom * g[k - j] * out[j];
            binom = binom * static_cast<double>(k - 1 - j) / static_cast<double>(j + 1);
        }
        out[k] = acc;
    }
}

// k-th derivative of exp(g(s)) at s, using the supplied exponent derivatives.
inline double nth_derivative_exp(const ExpFormTransform& tf, double s, int k) {
    if (k < 0) throw std::invalid_argument("nth_derivative_exp: k must be >= 0");
    if (static_cast<std::size_t>(k) > tf.exponent_derivatives.size())
        throw std::invalid_argument(
            "nth_derivative_exp: derivative order exceeds supplied exponent derivatives");
    std::vector<double> g(static_cast<std::size_t>(k) + 1);
    g[0] = tf.exponent(s);
    for (int j = 1; j <= k; ++j) g[static_cast<std::size_t>(j)] =
        tf.exponent_derivatives[static_cast<std::size_t>(j) - 1](s);
    std::vector<double> out(g.size());
    exp_derivatives_from_exponent(g, out);
    return out.back();
}

// Central finite differences with Richardson extrapolation, k in {1,2,3}.
// Test-side cross-check for the analytic derivative path.
template <class F>
double finite_diff_derivative(F&& f, double s, int k, double initial_step = 0.0) {
    if (k < 1 || k > 3)
        throw std::invalid_argument("finite_diff_derivative: k must be in {1,2,3}");
    double h = initial_step > 0.0 ? initial_step
                                  : std::max(std::fabs(s), 1.0) * 1e-2;

    auto stencil = [&](double step) -> double {
        switch (k) {
        case 1: return (f(s + step) - f(s - step)) / (2.0 * step);
        case 2: return (f(s + step) - 2.0 * f(s) + f(s - step)) / (step * step);
        default:
            return (f(s + 2.0 * step) - 2.0 * f(s + step) + 2.0 * f(s - step) -
                    f(s - 2.0 * step)) /
                   (2.0 * step * step * step);
        }
    };

    // Ridders-style: walk the whole step ladder and keep the entry with the
    // smallest extrapolation discrepancy; roundoff-dominated rows simply lose.
    constexpr int rows = 14;
    double table[rows][rows];
    double best = stencil(h);
    table[0][0] = best;
    double best_err = std::numeric_limits<double>::infinity();
    for (int i = 1; i < rows; ++i) {
        h *= 0.5;
        if (s + h == s || h == 0.0) {
            if (i > 1) break;
            throw std::underflow_error("finite_diff_derivative: step underflow");
        }
        table[i][0] = stencil(h);
        double pow4 = 1.0;
        for (int j = 1; j <= i; ++j) {
            pow4 *= 4.0;
            table[i][j] = (pow4 * table[i][j - 1] - table[i - 1][j - 1]) / (pow4 - 1.0);
            const double err = std::fabs(table[i][j] - table[i][j - 1]) +
                               std::fabs(table[i][j] - table[i - 1][j - 1]);
            if (err <= best_err) {
                best_err = err;
                best = table[i][j];
            }
        }
    }
    return best;
}

} // namespace satshare
