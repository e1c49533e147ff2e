#pragma once

#include <cstdint>
#include <string>

#include "apps/errors.hpp"
#include "apps/residue.hpp"
#include "apps/sieve.hpp"

#include "json.hpp"

namespace apps {

// Chebyshev-race tally between two residue classes mod m: at sampled integer
// points x = 2, 2 + stride, ... <= X, record who leads the count race.
// lead_fraction is the fraction of samples with pi(x; m, n1) > pi(x; m, n2);
// leader_changes counts transitions of the lead between the two contenders
// (passing through ties does not count until the other contender takes over).
struct RaceTally {
    std::uint32_t modulus = 0;
    std::uint32_t n1 = 0;
    std::uint32_t n2 = 0;
    std::uint64_t X = 0;
    std::uint32_t stride = 1;
    std::uint64_t samples = 0;
    std::uint64_t leader_changes = 0;
    double lead_fraction = 0.0;
    double tie_fraction = 0.0;

    nlohmann::json to_json() const {
        return nlohmann::json{{"schema", 1},   {"m", modulus},
                              {"n1", n1},      {"n2", n2},
                              {"X", X},        {"stride", stride},
                              {"samples", samples}, {"leader_changes", leader_changes},
                              {"lead_fraction", lead_fraction}, {"tie_fraction", tie_fraction}};
    }
};

// Default sampling strides: every integer up to 10^6, a coprime stride above.
inline std::uint32_t default_race_stride(std::uint64_t X) { return X <= 1000000 ? 1u : 97u; }

inline RaceTally race_tally(std::uint32_t m, std::uint32_t n1, std::uint32_t n2, std::uint64_t X,
                            std::uint32_t stride, const PrimeProvider& primes) {
    const ResidueClass c1(m, n1);
    const ResidueClass c2(m, n2);
    if (n1 == n2) throw Error::validation("race contenders must be distinct residues");
    if (m == 1) throw Error::validation("race requires a modulus m >= 2");
    if (stride == 0) throw Error::validation("race stride must be positive");
    if (X < 2) throw Error::validation("race range must reach at least 2");

    RaceTally tally;
    tally.modulus = m;
    tally.n1 = n1;
    tally.n2 = n2;
    tally.X = X;
    tally.stride = stride;

    std::uint64_t leads = 0, ties = 0, total = 0;
    std::int64_t diff = 0;       // pi(.; m, n1) - pi(.; m, n2)
    int last_nonzero_sign = 0;
    std::uint64_t next_sample = 2;

    // Counts only move at primes of either class; between events the sampled
    // sign is constant, so samples are tallied in bulk per gap.
    const auto drain_samples_below = [&](std::uint64_t bound) {
        if (next_sample > bound) return;
        const std::uint64_t count = (bound - next_sample) / stride + 1;
        const int sign = diff > 0 ? 1 : (diff < 0 ? -1 : 0);
        total += count;
        if (sign > 0) leads += count;
        if (sign == 0) ties += count;
        if (sign != 0) {
            if (last_nonzero_sign != 0 && sign != last_nonzero_sign) ++tally.leader_changes;
            last_nonzero_sign = sign;
        }
        next_sample += count * stride;
    };

    primes.enumerate(X, [&](std::uint64_t p) {
        const bool in1 = c1.contains(p);
        const bool in2 = c2.contains(p);
        if (!in1 && !in2) return;
        drain_samples_below(p - 1);
        if (in1) ++diff;
        if (in2) --diff;
    });
    drain_samples_below(X);

    tally.samples = total;
    tally.lead_fraction = total ? static_cast<double>(leads) / static_cast<double>(total) : 0.0;
    tally.tie_fraction = total ? static_cast<double>(ties) / static_cast<double>(total) : 0.0;
    return tally;
}

inline RaceTally race_tally(std::uint32_t m, std::uint32_t n1, std::uint32_t n2, std::uint64_t X,
                            std::uint32_t stride = 0, const SieveOptions& opt = {}) {
    if (stride == 0) stride = default_race_stride(X);
    return race_tally(m, n1, n2, X, stride, PrimeProvider(opt.config_for(X)));
}

}  // namespace apps
