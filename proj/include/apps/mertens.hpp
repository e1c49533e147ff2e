#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "apps/errors.hpp"
#include "apps/kahan.hpp"
#include "apps/prime_statistics.hpp"
#include "apps/residue.hpp"
#include "apps/sieve.hpp"

#include "json.hpp"

namespace apps {

namespace detail {

// Compensated reciprocal-prime sums of one class, snapshotted at each stop.
class ReciprocalTracker {
public:
    ReciprocalTracker(ResidueClass cls, std::vector<std::uint64_t> stops)
        : cls_(cls), stops_(std::move(stops)) {
        require_ascending(stops_, "checkpoints");
        at_.reserve(stops_.size());
    }

    std::uint64_t last_stop() const { return stops_.empty() ? 0 : stops_.back(); }

    void feed(std::uint64_t p) {
        while (next_ < stops_.size() && p > stops_[next_]) {
            at_.push_back(acc_.value());
            ++next_;
        }
        if (next_ < stops_.size() && cls_.contains(p)) acc_.add(1.0 / static_cast<double>(p));
    }

    void finish() {
        while (next_ < stops_.size()) {
            at_.push_back(acc_.value());
            ++next_;
        }
    }

    const std::vector<double>& results() const { return at_; }

private:
    ResidueClass cls_;
    std::vector<std::uint64_t> stops_;
    std::size_t next_ = 0;
    CompensatedSum<double> acc_;
    std::vector<double> at_;
};

}  // namespace detail

// Sum of 1/p over class primes p <= x (compensated summation).
inline double mertens_ap_sum(std::uint64_t x, const ResidueClass& cls,
                             const PrimeProvider& primes) {
    if (x < 2) throw Error::validation("mertens_ap_sum requires x >= 2");
    CompensatedSum<double> acc;
    primes.enumerate(x, [&](std::uint64_t p) {
        if (cls.contains(p)) acc.add(1.0 / static_cast<double>(p));
    });
    return acc.value();
}

inline double mertens_ap_sum(std::uint64_t x, const ResidueClass& cls,
                             const SieveOptions& opt = {}) {
    return mertens_ap_sum(x, cls, PrimeProvider(opt.config_for(x)));
}

// Partial sums on a grid plus the constant-term estimate for
//   sum 1/p = loglog(x)/phi(m) + B + O(1/log x).
// B is the mean residual over the grid; residual_bound is the largest
// deviation from that mean, reported rather than asserted.
struct MertensFit {
    ResidueClass cls = ResidueClass::all_primes();
    std::vector<std::pair<std::uint64_t, double>> samples;
    double B_estimate = 0.0;
    double residual_bound = 0.0;

    nlohmann::json to_json() const {
        nlohmann::json pts = nlohmann::json::array();
        for (const auto& [x, s] : samples) pts.push_back({{"x", x}, {"partial_sum", s}});
        return nlohmann::json{{"schema", 1},
                              {"m", cls.modulus()},
                              {"n", cls.residue()},
                              {"samples", std::move(pts)},
                              {"B_estimate", B_estimate},
                              {"residual_bound", residual_bound}};
    }
};

inline MertensFit estimate_mertens_B(const ResidueClass& cls,
                                     std::span<const std::uint64_t> x_grid,
                                     const PrimeProvider& primes) {
    if (x_grid.size() < 4)
        throw Error::validation("B estimation needs at least 4 grid points");
    detail::require_ascending(x_grid, "x_grid");
    if (x_grid.front() < 1000)
        throw Error::validation("B estimation grid must start at 10^3 or above");

    detail::ReciprocalTracker tracker(cls, {x_grid.begin(), x_grid.end()});
    std::uint64_t bound = x_grid.back();
    primes.enumerate(bound, [&](std::uint64_t p) { tracker.feed(p); });
    tracker.finish();

    MertensFit fit;
    fit.cls = cls;
    const double phi = static_cast<double>(cls.phi());
    std::vector<double> residuals;
    residuals.reserve(x_grid.size());
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        const double s = tracker.results()[i];
        fit.samples.emplace_back(x_grid[i], s);
        residuals.push_back(s - std::log(std::log(static_cast<double>(x_grid[i]))) / phi);
    }
    CompensatedSum<double> mean;
    for (double r : residuals) mean.add(r);
    fit.B_estimate = mean.value() / static_cast<double>(residuals.size());
    for (double r : residuals)
        fit.residual_bound = std::max(fit.residual_bound, std::fabs(r - fit.B_estimate));
    return fit;
}

inline MertensFit estimate_mertens_B(const ResidueClass& cls,
                                     std::span<const std::uint64_t> x_grid,
                                     const SieveOptions& opt = {}) {
    const std::uint64_t bound = x_grid.empty() ? 2 : x_grid.back();
    return estimate_mertens_B(cls, x_grid, PrimeProvider(opt.config_for(bound)));
}

// max - min of the grid residuals partial_sum(x) - loglog(x)/phi(m).
inline double mertens_residual_spread(const MertensFit& fit) {
    if (fit.samples.empty()) return 0.0;
    const double phi = static_cast<double>(fit.cls.phi());
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& [x, s] : fit.samples) {
        const double r = s - std::log(std::log(static_cast<double>(x))) / phi;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    return hi - lo;
}

}  // namespace apps
