#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "apps/errors.hpp"
#include "apps/mertens.hpp"
#include "apps/prime_statistics.hpp"
#include "apps/rational.hpp"
#include "apps/residue.hpp"
#include "apps/sieve.hpp"
#include "apps/threshold.hpp"

#include "json.hpp"

namespace apps {

// Empirical check of the convergent-integral identity
//   int_1^inf (pi_k(t; m,n) - pi(t^(k+1); m,n)) / t^(k+2) dt
//     = -log(k+1) / ((k+1) phi(m)).
struct IntegralIdentityReport {
    RationalExponent k;
    ResidueClass cls = ResidueClass::all_primes();
    std::uint64_t X = 0;            // partial-integral upper limit
    std::uint64_t inner_bound = 0;  // floor(X^(k+1)), the deep prime range
    double partial_integral = 0.0;
    double target = 0.0;
    double gap = 0.0;

    nlohmann::json to_json() const {
        return nlohmann::json{{"schema", 1},
                              {"k", k.str()},
                              {"m", cls.modulus()},
                              {"n", cls.residue()},
                              {"X", X},
                              {"inner_bound", inner_bound},
                              {"partial_integral", partial_integral},
                              {"target", target},
                              {"gap", gap}};
    }
};

inline double theorem2_target(const RationalExponent& k, const ResidueClass& cls) {
    const double kv = k.value();
    return -std::log1p(kv) / ((1.0 + kv) * static_cast<double>(cls.phi()));
}

// The partial integral over [1, X], evaluated through the exact finite
// decomposition (integration by parts against the two step functions, then
// the substitution u = t^(k+1)):
//   int_1^X = (S(X) - S(floor(X^(k+1)))) / (k+1)
//           + (pi(X^(k+1)) - pi_k(X)) / ((k+1) X^(k+1))
// where S is the class reciprocal-prime sum. No quadrature is involved; for
// finite X this is an identity, so the only error is floating arithmetic.
inline IntegralIdentityReport theorem2_partial_integral(const RationalExponent& k,
                                                        const ResidueClass& cls, std::uint64_t X,
                                                        const PrimeProvider& primes) {
    if (X < 2) throw Error::validation("theorem2 partial integral requires X >= 2");

    const std::uint64_t inner = power_floor(X, k);
    IntegralIdentityReport report;
    report.k = k;
    report.cls = cls;
    report.X = X;
    report.inner_bound = inner;
    report.target = theorem2_target(k, cls);

    const std::uint64_t hi = std::max(X, inner);
    if (hi > primes.limit())
        throw Error::bound("theorem2 partial integral needs primes up to " + std::to_string(hi) +
                           ", provider covers " + std::to_string(primes.limit()));

    CompensatedSum<double> recip_X;      // sum 1/p, p <= X
    CompensatedSum<double> recip_inner;  // sum 1/p, p <= inner
    PowerSumAccumulator pk(k);           // pi_k(X)
    std::uint64_t pi_inner = 0;
    primes.enumerate(hi, [&](std::uint64_t p) {
        if (!cls.contains(p)) return;
        const double r = 1.0 / static_cast<double>(p);
        if (p <= X) {
            recip_X.add(r);
            pk.add_prime(p);
        }
        if (p <= inner) {
            recip_inner.add(r);
            ++pi_inner;
        }
    });

    const double kp1 = 1.0 + k.value();
    const double x_pow = std::pow(static_cast<double>(X), kp1);
    report.partial_integral = (recip_X.value() - recip_inner.value()) / kp1 +
                              (static_cast<double>(pi_inner) - pk.value()) / (kp1 * x_pow);
    report.gap = std::fabs(report.partial_integral - report.target);
    return report;
}

inline IntegralIdentityReport theorem2_partial_integral(const RationalExponent& k,
                                                        const ResidueClass& cls, std::uint64_t X,
                                                        const SieveOptions& opt = {},
                                                        std::uint64_t max_inner = std::uint64_t{1}
                                                                                  << 34) {
    const std::uint64_t inner = power_floor(X, k);
    if (inner > max_inner)
        throw Error::bound("theorem2 partial integral at X = " + std::to_string(X) + ", k = " +
                           k.str() + " requires sieving to " + std::to_string(inner) +
                           " (above the configured bound " + std::to_string(max_inner) + ")");
    const std::uint64_t hi = std::max(X, inner);
    return theorem2_partial_integral(k, cls, X, PrimeProvider(opt.config_for(hi)));
}

}  // namespace apps
