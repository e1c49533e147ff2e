#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "apps/errors.hpp"
#include "apps/kahan.hpp"
#include "apps/quadrature.hpp"
#include "apps/residue.hpp"
#include "apps/sieve.hpp"

namespace apps {

// Residual of Abel's summation identity
//   sum_{x < n <= y} a(n) f(n) = A(y)f(y) - A(x)f(x) - int_x^y A(t) f'(t) dt
// with A the partial-sum step function of a. Both sides are computed
// independently: the left as a direct sum, the right with the integral done
// by adaptive quadrature piece by piece between the integer jumps of A (so
// the quadrature never straddles a discontinuity).
//
// a_values[i] is a(i + 1) for n = 1..N; N must cover floor(y).
template <class F, class DF>
double abel_summation_check(std::span<const double> a_values, F&& f, DF&& f_prime, double x,
                            double y, const QuadratureOptions& opt = {}) {
    if (!(x < y)) throw Error::validation("abel check requires x < y");
    if (x < 0) throw Error::validation("abel check requires x >= 0");
    const auto upper = static_cast<std::uint64_t>(std::floor(y));
    if (a_values.size() < upper)
        throw Error::validation("abel check: a_values must cover 1..floor(y)");

    // Prefix sums A(n) = a(1) + ... + a(n); A(t) = A(floor(t)).
    std::vector<double> prefix(upper + 1, 0.0);
    CompensatedSum<double> run;
    for (std::uint64_t n = 1; n <= upper; ++n) {
        run.add(a_values[n - 1]);
        prefix[n] = run.value();
    }
    const auto A = [&](double t) -> double {
        if (t < 1.0) return 0.0;
        const auto n = static_cast<std::uint64_t>(std::floor(t));
        return prefix[std::min<std::uint64_t>(n, upper)];
    };

    CompensatedSum<double> lhs;
    const auto first = static_cast<std::uint64_t>(std::floor(x)) + 1;
    for (std::uint64_t n = std::max<std::uint64_t>(first, 1); n <= upper; ++n) {
        if (static_cast<double>(n) <= x) continue;  // x integral: n starts past it
        lhs.add(a_values[n - 1] * f(static_cast<double>(n)));
    }

    CompensatedSum<double> integral;
    double piece_error = 0.0;
    double t0 = x;
    while (t0 < y) {
        const double next_jump = std::floor(t0) + 1.0;
        const double t1 = std::min(next_jump, y);
        const double weight = A(t0);
        if (weight != 0.0 && t1 > t0) {
            const auto r = integrate(f_prime, t0, t1, opt);
            if (!r.converged)
                throw Error::numerical("abel check: quadrature failed to converge on [" +
                                       std::to_string(t0) + ", " + std::to_string(t1) + "]");
            integral.add(weight * r.value);
            piece_error += std::fabs(weight) * r.error;
        }
        t0 = t1;
    }

    const double rhs = A(y) * f(y) - A(x) * f(x) - integral.value();
    return std::fabs(lhs.value() - rhs);
}

// sum f(p) over class primes p <= x: the computational form of the
// Riemann-Stieltjes reduction  sum f(p) = int f d pi(t; m, n).
template <class F>
double stieltjes_prime_sum(F&& f, std::uint64_t x, const ResidueClass& cls,
                           const PrimeProvider& primes) {
    CompensatedSum<double> acc;
    if (x >= 2) {
        primes.enumerate(x, [&](std::uint64_t p) {
            if (cls.contains(p)) acc.add(f(static_cast<double>(p)));
        });
    }
    return acc.value();
}

template <class F>
double stieltjes_prime_sum(F&& f, std::uint64_t x, const ResidueClass& cls,
                           const SieveOptions& opt = {}) {
    return stieltjes_prime_sum(std::forward<F>(f), x, cls, PrimeProvider(opt.config_for(x)));
}

}  // namespace apps
