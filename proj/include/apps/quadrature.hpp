#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "apps/errors.hpp"

namespace apps {

struct QuadratureOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_depth = 60;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;  // accumulated per-panel error estimate
    bool converged = true;
    std::int64_t evaluations = 0;
};

namespace detail {

// Gauss-Kronrod 7-15 pair on [-1, 1]. Kronrod abscissae/weights; the embedded
// 7-point Gauss rule reuses the odd-index nodes.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502, 0.1406532597155259,
    0.1690047266392679, 0.1903505780647854, 0.2044329400752989, 0.2094821410847278};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189, 0.4179591836734694};

template <class F>
void gauss_kronrod_panel(F& f, double a, double b, double& kronrod, double& gauss,
                         std::int64_t& evals) {
    const double center = 0.5 * (a + b);
    const double halflen = 0.5 * (b - a);
    double fk = 0.0;
    double fg = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double off = halflen * kKronrodNodes[i];
        double fsum;
        if (i == 7) {
            fsum = f(center);
            evals += 1;
        } else {
            fsum = f(center - off) + f(center + off);
            evals += 2;
        }
        fk += kKronrodWeights[i] * fsum;
        if (i % 2 == 1) fg += kGaussWeights[i / 2] * fsum;
    }
    kronrod = fk * halflen;
    gauss = fg * halflen;
}

template <class F>
void adaptive_step(F& f, double a, double b, int depth, const QuadratureOptions& opt,
                   QuadratureResult& out) {
    double k15 = 0.0, g7 = 0.0;
    gauss_kronrod_panel(f, a, b, k15, g7, out.evaluations);
    const double err = std::fabs(k15 - g7);
    const double tol = std::max(opt.abs_tol, opt.rel_tol * std::fabs(k15));
    if (err <= tol || depth >= opt.max_depth) {
        if (err > tol) out.converged = false;
        out.value += k15;
        out.error += err;
        return;
    }
    const double mid = 0.5 * (a + b);
    adaptive_step(f, a, mid, depth + 1, opt, out);
    adaptive_step(f, mid, b, depth + 1, opt, out);
}

}  // namespace detail

// Adaptive Gauss-Kronrod integration of f over [a, b] (a <= b or reversed,
// with the usual sign flip).
template <class F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
    QuadratureResult out;
    if (a == b) return out;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    if (!std::isfinite(a) || !std::isfinite(b))
        throw Error::domain("quadrature endpoints must be finite");
    detail::adaptive_step(f, a, b, 0, opt, out);
    out.value *= sign;
    return out;
}

}  // namespace apps
