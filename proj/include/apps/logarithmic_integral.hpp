#pragma once

#include <cmath>
#include <limits>

#include "apps/errors.hpp"
#include "apps/quadrature.hpp"

namespace apps {

struct LiEvaluation {
    double x = 0.0;
    double value = 0.0;
    double abs_error_bound = 0.0;
};

namespace detail {

// Integrand of the symmetric principal-value excision around t = 1: the two
// sides of the pole are paired through u = |t - 1|, giving
//   1/log(1+u) + 1/log(1-u)  =  log(1-u^2] / (log(1+u) * log(1-u))
// which is smooth (-> 1 as u -> 0) and free of cancellation when evaluated
// through log1p.
inline double pv_pair(double u) {
    const double lp = std::log1p(u);
    const double lm = std::log1p(-u);
    return std::log1p(-u * u) / (lp * lm);
}

// integral of dt/log t over [a, b] with 1 < a <= b, via t = e^s (compact,
// fast-converging form for the long tail).
inline QuadratureResult li_tail(double a, double b, const QuadratureOptions& opt) {
    return integrate([](double s) { return std::exp(s) / s; }, std::log(a), std::log(b), opt);
}

}  // namespace detail

// Cauchy principal value of the logarithmic integral from 0. The pole at
// t = 1 is excised symmetrically and the paired limit is integrated in closed
// form, so no extrapolation in the excision width is needed.
inline LiEvaluation li(double x, const QuadratureOptions& opt = {}) {
    if (!(x >= 0)) throw Error::domain("li(x) requires x >= 0");
    if (x == 1.0) throw Error::domain("li(1) diverges (singularity of the integrand)");

    LiEvaluation out;
    out.x = x;
    if (x == 0.0) return out;

    if (x < 1.0) {
        const auto r = integrate([](double t) { return 1.0 / std::log(t); }, 0.0, x, opt);
        out.value = r.value;
        out.abs_error_bound = r.error;
        return out;
    }

    // x > 1: split [0, 1-d], the paired window [1-d, 1+d], and (1+d, x].
    const double d = std::min(0.5, 0.5 * (x - 1.0));
    const auto left = integrate([](double t) { return 1.0 / std::log(t); }, 0.0, 1.0 - d, opt);
    const auto pair = integrate(detail::pv_pair, 0.0, d, opt);
    out.value = left.value + pair.value;
    out.abs_error_bound = left.error + pair.error;
    if (1.0 + d < x) {
        const auto tail = detail::li_tail(1.0 + d, x, opt);
        out.value += tail.value;
        out.abs_error_bound += tail.error;
    }
    return out;
}

inline double li_value(double x, const QuadratureOptions& opt = {}) { return li(x, opt).value; }

// li(x) - li(2) = integral of dt/log t from 2 to x, the main-term normalizer
// used by the progression counting estimates. Valid for x > 1.
inline double li_from_2(double x, const QuadratureOptions& opt = {}) {
    if (!(x > 1.0)) throw Error::domain("li_from_2 requires x > 1");
    if (x == 2.0) return 0.0;
    if (x > 2.0) return detail::li_tail(2.0, x, opt).value;
    return -detail::li_tail(x, 2.0, opt).value;
}

// Inverse of li on the increasing branch x >= 2. Newton iteration with a
// maintained bracket; falls back to bisection whenever a Newton step leaves it.
inline double li_inverse(double y, const QuadratureOptions& opt = {}) {
    static const double li2 = li(2.0).value;
    if (!(y >= li2 - 1e-9))
        throw Error::domain("li_inverse is restricted to the branch x >= 2 (y >= li(2))");

    const auto eval = [&](double x) { return li2 + li_from_2(x, opt); };
    double lo = 2.0;
    double hi = 4.0;
    while (eval(hi) < y) {
        lo = hi;
        hi *= 4.0;
        if (hi > 1e300) throw Error::domain("li_inverse argument out of range");
    }
    double x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double fx = eval(x) - y;
        if (fx > 0)
            hi = x;
        else
            lo = x;
        const double step = fx * std::log(x);  // Newton: f' = 1/log x
        double next = x - step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::fabs(next - x) <= 1e-12 * x) return next;
        x = next;
    }
    return x;
}

}  // namespace apps
