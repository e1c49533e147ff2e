#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "apps/errors.hpp"
#include "apps/power_sum.hpp"
#include "apps/rational.hpp"
#include "apps/residue.hpp"
#include "apps/sieve.hpp"
#include "apps/threshold.hpp"

namespace apps {

namespace detail {

inline void require_ascending(std::span<const std::uint64_t> stops, const char* what) {
    for (std::size_t i = 1; i < stops.size(); ++i)
        if (stops[i] <= stops[i - 1])
            throw Error::validation(std::string(what) + " must be strictly ascending");
}

// Counts class primes, snapshotting at each stop. Feed primes in ascending
// order; feed order alone determines the outputs, so results are identical
// for any worker count upstream.
class CountTracker {
public:
    CountTracker(ResidueClass cls, std::vector<std::uint64_t> stops)
        : cls_(cls), stops_(std::move(stops)) {
        require_ascending(stops_, "checkpoints");
        at_.reserve(stops_.size());
    }

    std::uint64_t last_stop() const { return stops_.empty() ? 0 : stops_.back(); }
    const ResidueClass& cls() const { return cls_; }

    void feed(std::uint64_t p) {
        while (next_ < stops_.size() && p > stops_[next_]) {
            at_.push_back(count_);
            ++next_;
        }
        if (next_ < stops_.size() && cls_.contains(p)) ++count_;
    }

    void finish() {
        while (next_ < stops_.size()) {
            at_.push_back(count_);
            ++next_;
        }
    }

    // at(i) = number of class primes <= stops[i]
    const std::vector<std::uint64_t>& results() const { return at_; }

private:
    ResidueClass cls_;
    std::vector<std::uint64_t> stops_;
    std::size_t next_ = 0;
    std::uint64_t count_ = 0;
    std::vector<std::uint64_t> at_;
};

// Accumulates p^k over class primes, snapshotting at each stop.
class SumTracker {
public:
    SumTracker(ResidueClass cls, RationalExponent k, std::vector<std::uint64_t> stops)
        : cls_(cls), stops_(std::move(stops)), acc_(k) {
        require_ascending(stops_, "checkpoints");
        at_.reserve(stops_.size());
    }

    std::uint64_t last_stop() const { return stops_.empty() ? 0 : stops_.back(); }

    void feed(std::uint64_t p) {
        while (next_ < stops_.size() && p > stops_[next_]) {
            at_.push_back(PowerSumResult::from(acc_));
            ++next_;
        }
        if (next_ < stops_.size() && cls_.contains(p)) acc_.add_prime(p);
    }

    void finish() {
        while (next_ < stops_.size()) {
            at_.push_back(PowerSumResult::from(acc_));
            ++next_;
        }
    }

    const PowerSumAccumulator& accumulator() const { return acc_; }
    const std::vector<PowerSumResult>& results() const { return at_; }

private:
    ResidueClass cls_;
    std::vector<std::uint64_t> stops_;
    std::size_t next_ = 0;
    PowerSumAccumulator acc_;
    std::vector<PowerSumResult> at_;
};

// One shared ascending pass feeding every tracker.
inline void run_checkpoint_pass(const PrimeProvider& primes,
                                std::span<CountTracker*> counts,
                                std::span<SumTracker*> sums) {
    std::uint64_t bound = 0;
    for (auto* t : counts) bound = std::max(bound, t->last_stop());
    for (auto* t : sums) bound = std::max(bound, t->last_stop());
    if (bound >= 2) {
        primes.enumerate(bound, [&](std::uint64_t p) {
            for (auto* t : counts) t->feed(p);
            for (auto* t : sums) t->feed(p);
        });
    }
    for (auto* t : counts) t->finish();
    for (auto* t : sums) t->finish();
}

}  // namespace detail

// pi(x; m, n): exact count of primes p <= x with p = n (mod m).
inline std::uint64_t count_primes(std::uint64_t x, const ResidueClass& cls,
                                  const PrimeProvider& primes) {
    if (x < 2) return 0;
    std::uint64_t count = 0;
    primes.enumerate(x, [&](std::uint64_t p) {
        if (cls.contains(p)) ++count;
    });
    return count;
}

inline std::uint64_t count_primes(std::uint64_t x, const ResidueClass& cls,
                                  const SieveOptions& opt = {}) {
    return count_primes(x, cls, PrimeProvider(opt.config_for(x)));
}

// pi_k(x; m, n): sum of p^k over class primes p <= x. The exact integer
// companion rides along whenever k is a nonnegative integer.
inline PowerSumResult power_sum(std::uint64_t x, const RationalExponent& k,
                                const ResidueClass& cls, const PrimeProvider& primes) {
    PowerSumAccumulator acc(k);
    if (x >= 2) {
        primes.enumerate(x, [&](std::uint64_t p) {
            if (cls.contains(p)) acc.add_prime(p);
        });
    }
    return PowerSumResult::from(acc);
}

inline PowerSumResult power_sum(std::uint64_t x, const RationalExponent& k,
                                const ResidueClass& cls, const SieveOptions& opt = {}) {
    return power_sum(x, k, cls, PrimeProvider(opt.config_for(x)));
}

// pi_k(x^(1/(k+1)); m, n): the power sum whose membership boundary
// p^(k+1) <= x is decided in exact integer arithmetic.
inline PowerSumResult power_sum_at_threshold(std::uint64_t x, const RationalExponent& k,
                                             const ResidueClass& cls,
                                             const PrimeProvider& primes) {
    return power_sum(power_sum_threshold(x, k), k, cls, primes);
}

inline PowerSumResult power_sum_at_threshold(std::uint64_t x, const RationalExponent& k,
                                             const ResidueClass& cls,
                                             const SieveOptions& opt = {}) {
    const std::uint64_t bound = power_sum_threshold(x, k);
    return power_sum(bound, k, cls, PrimeProvider(opt.config_for(bound)));
}

// Checkpoint series: pi and the requested power sums of one class at each x,
// computed in a single ascending pass.
inline std::vector<CheckpointedCounts> checkpoint_series(
    std::span<const std::uint64_t> xs, const ResidueClass& cls,
    std::span<const RationalExponent> ks, const PrimeProvider& primes) {
    detail::require_ascending(xs, "checkpoints");
    std::vector<std::uint64_t> stops(xs.begin(), xs.end());
    detail::CountTracker count(cls, stops);
    std::vector<detail::SumTracker> sums;
    sums.reserve(ks.size());
    for (const auto& k : ks) sums.emplace_back(cls, k, stops);

    std::vector<detail::CountTracker*> cptrs{&count};
    std::vector<detail::SumTracker*> sptrs;
    for (auto& s : sums) sptrs.push_back(&s);
    detail::run_checkpoint_pass(primes, cptrs, sptrs);

    std::vector<CheckpointedCounts> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out[i].x = xs[i];
        out[i].cls = cls;
        out[i].pi = count.results()[i];
        for (std::size_t j = 0; j < sums.size(); ++j) {
            const auto& r = sums[j].results()[i];
            CheckpointedCounts::Sum s;
            s.value = r.value;
            s.compensation = r.compensation;
            s.terms = r.terms;
            if (r.exact) s.exact = r.exact->get_str();
            out[i].power_sums.emplace(ks[j], std::move(s));
        }
    }
    return out;
}

inline CheckpointedCounts checkpointed_counts(std::uint64_t x, const ResidueClass& cls,
                                              std::span<const RationalExponent> ks,
                                              const PrimeProvider& primes) {
    const std::uint64_t stops[1] = {x};
    return checkpoint_series(stops, cls, ks, primes).front();
}

}  // namespace apps
