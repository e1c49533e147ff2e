#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "apps/errors.hpp"
#include "apps/format.hpp"
#include "apps/prime_statistics.hpp"
#include "apps/rational.hpp"
#include "apps/residue.hpp"
#include "apps/sieve.hpp"
#include "apps/threshold.hpp"

namespace apps {

// One row of an error table: exact count, threshold-exact power sum, and the
// relative discrepancy error_pct = 100 * (pi - approx) / pi.
struct TableRow {
    std::uint64_t x = 0;
    std::uint64_t pi = 0;
    double approx = 0.0;
    double error_pct = 0.0;
};

struct TableSpec {
    RationalExponent k;
    ResidueClass cls;
};

// The nine-point grid 10^4 .. 10^8 used by every error table.
inline std::vector<std::uint64_t> default_table_grid() {
    return {10000,   50000,   100000,   500000,   1000000,
            5000000, 10000000, 50000000, 100000000};
}

inline double table_error_pct(std::uint64_t pi, double approx) {
    if (pi == 0) throw Error::domain("error percentage undefined: pi(x; m, n) = 0");
    return 100.0 * (static_cast<double>(pi) - approx) / static_cast<double>(pi);
}

// Whole table batch in one ascending sieve pass: one count tracker per
// distinct class, one sum tracker per (k, class), checkpointed at the grid
// values and at the exact integer thresholds respectively. Accumulation per
// tracker is sequential in prime order, so each approx value is bit-for-bit
// the power_sum_at_threshold result.
inline std::vector<std::vector<TableRow>> generate_tables(std::span<const TableSpec> specs,
                                                          std::span<const std::uint64_t> xs,
                                                          const PrimeProvider& primes) {
    if (specs.empty()) throw Error::validation("no table specs given");
    if (xs.empty()) throw Error::validation("table grid must be nonempty");
    detail::require_ascending(xs, "table grid");

    std::vector<std::uint64_t> grid(xs.begin(), xs.end());

    std::vector<ResidueClass> classes;
    std::vector<std::size_t> class_of_spec;
    for (const auto& spec : specs) {
        std::size_t idx = classes.size();
        for (std::size_t i = 0; i < classes.size(); ++i)
            if (classes[i] == spec.cls) idx = i;
        if (idx == classes.size()) classes.push_back(spec.cls);
        class_of_spec.push_back(idx);
    }

    std::vector<detail::CountTracker> counts;
    counts.reserve(classes.size());
    for (const auto& cls : classes) counts.emplace_back(cls, grid);

    // Thresholds are nondecreasing with x; deduplicate for the tracker and
    // remember which checkpoint each row reads.
    std::vector<detail::SumTracker> sums;
    std::vector<std::vector<std::size_t>> sum_index(specs.size());
    sums.reserve(specs.size());
    for (std::size_t s = 0; s < specs.size(); ++s) {
        std::vector<std::uint64_t> stops;
        for (std::uint64_t x : grid) {
            const std::uint64_t t = power_sum_threshold(x, specs[s].k);
            if (stops.empty() || t > stops.back()) {
                stops.push_back(t);
            } else if (t < stops.back()) {
                throw Error::validation("thresholds not monotone over the grid");
            }
            sum_index[s].push_back(stops.size() - 1);
        }
        sums.emplace_back(specs[s].cls, specs[s].k, std::move(stops));
    }

    std::vector<detail::CountTracker*> cptrs;
    for (auto& c : counts) cptrs.push_back(&c);
    std::vector<detail::SumTracker*> sptrs;
    for (auto& s : sums) sptrs.push_back(&s);
    detail::run_checkpoint_pass(primes, cptrs, sptrs);

    std::vector<std::vector<TableRow>> tables(specs.size());
    for (std::size_t s = 0; s < specs.size(); ++s) {
        tables[s].reserve(grid.size());
        const auto& pi_at = counts[class_of_spec[s]].results();
        const auto& sum_at = sums[s].results();
        for (std::size_t i = 0; i < grid.size(); ++i) {
            TableRow row;
            row.x = grid[i];
            row.pi = pi_at[i];
            row.approx = sum_at[sum_index[s][i]].value;
            row.error_pct = table_error_pct(row.pi, row.approx);
            tables[s].push_back(row);
        }
    }
    return tables;
}

inline std::vector<TableRow> generate_table(const RationalExponent& k, const ResidueClass& cls,
                                            std::span<const std::uint64_t> xs,
                                            const PrimeProvider& primes) {
    const TableSpec spec[1] = {TableSpec{k, cls}};
    return generate_tables(spec, xs, primes).front();
}

inline std::vector<TableRow> generate_table(const RationalExponent& k, const ResidueClass& cls,
                                            std::span<const std::uint64_t> xs,
                                            const SieveOptions& opt = {}) {
    if (xs.empty()) throw Error::validation("table grid must be nonempty");
    detail::require_ascending(xs, "table grid");
    std::uint64_t bound = xs.back();
    bound = std::max(bound, power_sum_threshold(xs.back(), k));
    return generate_table(k, cls, xs, PrimeProvider(opt.config_for(bound)));
}

// Single row; same code paths as the batch (count + threshold power sum).
inline TableRow error_at(std::uint64_t x, const RationalExponent& k, const ResidueClass& cls,
                         const PrimeProvider& primes) {
    if (x < 2) throw Error::validation("error_at requires x >= 2");
    TableRow row;
    row.x = x;
    row.pi = count_primes(x, cls, primes);
    row.approx = power_sum_at_threshold(x, k, cls, primes).value;
    row.error_pct = table_error_pct(row.pi, row.approx);
    return row;
}

inline TableRow error_at(std::uint64_t x, const RationalExponent& k, const ResidueClass& cls,
                         const SieveOptions& opt = {}) {
    if (x < 2) throw Error::validation("error_at requires x >= 2");
    const std::uint64_t bound = std::max(x, power_sum_threshold(x, k));
    return error_at(x, k, cls, PrimeProvider(opt.config_for(bound)));
}

// Pooled sign tally over table rows. Zero rows are excluded from both counts
// (and reported), so the percentages are over signed rows only.
struct SignStatistics {
    std::uint64_t positive = 0;
    std::uint64_t negative = 0;
    std::uint64_t zeros = 0;

    std::uint64_t signed_rows() const { return positive + negative; }
    double pct_positive() const {
        return signed_rows() ? 100.0 * static_cast<double>(positive) / static_cast<double>(signed_rows()) : 0.0;
    }
    double pct_negative() const {
        return signed_rows() ? 100.0 * static_cast<double>(negative) / static_cast<double>(signed_rows()) : 0.0;
    }
    // Reporting form, rounded half-up to two decimals (e.g. "72.22").
    std::string pct_positive_str() const { return format_fixed(pct_positive(), 2); }
    std::string pct_negative_str() const { return format_fixed(pct_negative(), 2); }
};

inline SignStatistics sign_statistics(std::span<const std::vector<TableRow>> tables) {
    if (tables.empty()) throw Error::validation("sign statistics need at least one table");
    SignStatistics s;
    for (const auto& rows : tables)
        for (const auto& row : rows) {
            if (row.error_pct > 0)
                ++s.positive;
            else if (row.error_pct < 0)
                ++s.negative;
            else
                ++s.zeros;
        }
    return s;
}

// CSV schema: header x,pi,approx,error_pct; five fractional digits; LF line
// endings; no locale formatting anywhere.
inline void write_table_csv(std::ostream& out, std::span<const TableRow> rows) {
    out << "x,pi,approx,error_pct\n";
    for (const auto& row : rows)
        out << row.x << ',' << row.pi << ',' << format_fixed(row.approx, 5) << ','
            << format_fixed(row.error_pct, 5) << '\n';
}

inline std::string table_csv(std::span<const TableRow> rows) {
    std::ostringstream out;
    write_table_csv(out, rows);
    return out.str();
}

}  // namespace apps
