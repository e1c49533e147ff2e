// Acceptance suite: one criterion per section, one [PASS]/[FAIL] line each.
// Exit status is the number of failed criteria.
//
// Published-value caveat, established by exact integer arithmetic and an
// independent high-precision recomputation (and re-verified here at run
// time): six of the 144 published table cells are internally defective.
// Five approx entries omit exactly the boundary prime T = floor(x^(1/(k+1)))
// even though T^(a+b) <= x^b admits it, and one printed error percentage
// contradicts its own row's pi/approx columns (sign flip). Those rows are
// checked against the *diagnosed* values; every deviation must be exactly
// explained or the criterion fails.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "apps/apps.hpp"

#include "golden_util.hpp"

using apps::PrimeProvider;
using apps::RationalExponent;
using apps::ResidueClass;
using apps::SieveConfig;
using apps::SieveOptions;
using apps::TableRow;
using apps::TableSpec;

namespace {

int g_failures = 0;
constexpr unsigned kManyWorkers = 8;
constexpr double kFifthDecimal = 1e-5 + 1e-9;

struct Criterion {
    std::string name;
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back("FAILED: " + what);
        }
    }
    void note(const std::string& line) { notes.push_back(line); }

    void finish(double seconds) {
        std::cout << (pass ? "[PASS] " : "[FAIL] ") << name << "  ("
                  << apps::format_fixed(seconds, 1) << " s)\n";
        for (const auto& line : notes) std::cout << "       " << line << '\n';
        if (!pass) ++g_failures;
        std::cout.flush();
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct TableCase {
    RationalExponent k;
    ResidueClass cls;
    std::string key;
};

std::vector<TableCase> all_table_cases() {
    std::vector<TableCase> cases;
    const std::pair<RationalExponent, std::string> ks[] = {
        {RationalExponent(1), "k1"},
        {RationalExponent(1, 2), "k1over2"},
        {RationalExponent(-1, 10), "kneg1over10"},
        {RationalExponent(-1, 12), "kneg1over12"},
    };
    const std::pair<ResidueClass, std::string> classes[] = {
        {ResidueClass(4, 1), "m4_n1"},
        {ResidueClass(4, 3), "m4_n3"},
        {ResidueClass(5, 1), "m5_n1"},
        {ResidueClass(5, 3), "m5_n3"},
    };
    for (const auto& [k, kname] : ks)
        for (const auto& [cls, cname] : classes) cases.push_back({k, cls, kname + "_" + cname});
    return cases;
}

// Published-table defects, pinned. dropped_prime == 0 marks the sign typo.
struct PublishedDefect {
    std::string key;
    std::uint64_t x;
    std::uint64_t dropped_prime;
};
const std::vector<PublishedDefect> kPublishedDefects = {
    {"k1_m4_n3", 50000, 223},
    {"k1_m5_n3", 50000, 223},
    {"k1over2_m4_n3", 500000, 6299},
    {"k1over2_m4_n3", 100000000, 215443},
    {"k1over2_m5_n3", 100000000, 215443},
    {"kneg1over10_m5_n1", 500000, 0},
};

const PublishedDefect* find_defect(const std::string& key, std::uint64_t x) {
    for (const auto& d : kPublishedDefects)
        if (d.key == key && d.x == x) return &d;
    return nullptr;
}

std::vector<std::vector<TableRow>> generate_full_tables(unsigned workers,
                                                        const std::vector<TableCase>& cases) {
    const auto grid = apps::default_table_grid();
    std::vector<TableSpec> specs;
    std::uint64_t bound = grid.back();
    for (const auto& c : cases) {
        specs.push_back({c.k, c.cls});
        bound = std::max(bound, apps::power_sum_threshold(grid.back(), c.k));
    }
    const PrimeProvider provider(SieveConfig{bound, apps::kDefaultSegmentOdds, workers});
    return apps::generate_tables(specs, grid, provider);
}

// ---------------------------------------------------------------------------
// Criterion 1
// ---------------------------------------------------------------------------
void criterion1(const std::vector<TableCase>& cases,
                const std::vector<std::vector<TableRow>>& tables, double gen_seconds,
                double sieve_seconds) {
    Criterion crit{"criterion 1: table reproduction, full scale (grids 1e4..1e8)"};
    crit.note("all 16 tables generated in " + apps::format_fixed(gen_seconds, 2) +
              " s; sieve pass to 1e8 alone: " + apps::format_fixed(sieve_seconds, 2) + " s");

    std::size_t verbatim = 0, diagnosed = 0;
    for (std::size_t t = 0; t < cases.size(); ++t) {
        const auto fixture = golden::load_table(cases[t].key);
        const auto& rows = tables[t];
        if (rows.size() != fixture.rows.size()) {
            crit.require(false, "row count mismatch for " + cases[t].key);
            continue;
        }
        const bool integral_sum = cases[t].k.is_nonnegative_integer();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& mine = rows[i];
            const auto& ref = fixture.rows[i];
            const double ref_approx = std::strtod(ref.approx.c_str(), nullptr);
            const double ref_err = std::strtod(ref.error_pct.c_str(), nullptr);
            const std::string where = cases[t].key + " x=" + std::to_string(mine.x);

            crit.require(mine.pi == ref.pi, where + ": pi " + std::to_string(mine.pi) +
                                                " != published " + std::to_string(ref.pi));

            if (const auto* defect = find_defect(cases[t].key, mine.x)) {
                if (defect->dropped_prime != 0) {
                    const std::uint64_t p = defect->dropped_prime;
                    crit.require(apps::power_sum_threshold(mine.x, cases[t].k) == p,
                                 where + ": diagnosed prime is not the threshold");
                    crit.require(apps::threshold_membership(p, mine.x, cases[t].k),
                                 where + ": exact arithmetic rejects the diagnosed prime");
                    crit.require(cases[t].cls.contains(p),
                                 where + ": diagnosed prime is not in the class");
                    const double term = apps::power_term(p, cases[t].k);
                    crit.require(std::fabs(mine.approx - (ref_approx + term)) <= kFifthDecimal,
                                 where + ": deviation is not the omitted boundary-prime term");
                    crit.note(where + ": published approx omits boundary prime " +
                              std::to_string(p) + " (published " + ref.approx + ", computed " +
                              apps::format_fixed(mine.approx, 5) + ")");
                } else {
                    crit.require(std::fabs(mine.approx - ref_approx) <= kFifthDecimal,
                                 where + ": approx deviates beyond one fifth-decimal unit");
                    crit.require(std::fabs(mine.error_pct + ref_err) <= kFifthDecimal,
                                 where + ": deviation is not a pure sign flip");
                    const double derived = 100.0 * (static_cast<double>(ref.pi) - ref_approx) /
                                           static_cast<double>(ref.pi);
                    crit.require(std::fabs(derived - mine.error_pct) <= kFifthDecimal,
                                 where + ": published columns do not support the computed sign");
                    crit.note(where + ": published error " + ref.error_pct +
                              " contradicts its own columns; computed " +
                              apps::format_fixed(mine.error_pct, 5));
                }
                ++diagnosed;
                continue;
            }

            if (integral_sum)
                crit.require(mine.approx == ref_approx,
                             where + ": integer power sum " + apps::format_fixed(mine.approx, 0) +
                                 " != published " + ref.approx);
            else
                crit.require(std::fabs(mine.approx - ref_approx) <= kFifthDecimal,
                             where + ": approx " + apps::format_fixed(mine.approx, 5) +
                                 " != published " + ref.approx);
            crit.require(std::fabs(mine.error_pct - ref_err) <= kFifthDecimal,
                         where + ": error " + apps::format_fixed(mine.error_pct, 5) +
                             " != published " + ref.error_pct);
            ++verbatim;
        }
    }
    crit.note(std::to_string(verbatim) + " rows verbatim, " + std::to_string(diagnosed) +
              " rows matched through pinned published-defect diagnoses");
    crit.require(verbatim == 138 && diagnosed == 6, "expected 138 verbatim + 6 diagnosed rows");

    // Relative error decays across each table's grid: |error| at 1e8 below
    // |error| at 1e4 for every (k, class).
    for (std::size_t t = 0; t < cases.size(); ++t)
        crit.require(std::fabs(tables[t].back().error_pct) <
                         std::fabs(tables[t].front().error_pct),
                     cases[t].key + ": no error decay from 1e4 to 1e8");
    crit.finish(gen_seconds);
}

// ---------------------------------------------------------------------------
// Criterion 2
// ---------------------------------------------------------------------------
apps::SignStatistics group_stats(const std::vector<TableCase>& cases,
                                 const std::vector<std::vector<TableRow>>& tables,
                                 const std::string& kname, bool restore_published_signs) {
    std::vector<std::vector<TableRow>> group;
    for (std::size_t t = 0; t < cases.size(); ++t) {
        if (cases[t].key.rfind(kname + "_", 0) != 0) continue;
        auto rows = tables[t];
        if (restore_published_signs) {
            for (auto& row : rows) {
                const auto* defect = find_defect(cases[t].key, row.x);
                // The two sign-affecting cells: score them as published.
                if (defect && ((cases[t].key == "k1_m4_n3" && row.x == 50000) ||
                               (cases[t].key == "kneg1over10_m5_n1" && row.x == 500000)))
                    row.error_pct = -row.error_pct;
            }
        }
        group.push_back(std::move(rows));
    }
    return apps::sign_statistics(group);
}

void criterion2(const std::vector<TableCase>& cases,
                const std::vector<std::vector<TableRow>>& tables) {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion crit{"criterion 2: pooled sign statistics per exponent group"};

    struct Expect {
        std::string kname;
        bool count_positive;
        std::uint64_t computed;   // from the corrected reproduction
        std::uint64_t published;  // the published claim over the same 36 rows
        std::string published_pct;
    };
    const Expect expectations[] = {
        {"k1", true, 25, 26, "72.22"},
        {"k1over2", true, 26, 26, "72.22"},
        {"kneg1over10", false, 25, 26, "72.22"},
        {"kneg1over12", false, 28, 28, "77.78"},
    };

    for (const auto& e : expectations) {
        const auto stats = group_stats(cases, tables, e.kname, false);
        const auto scored = group_stats(cases, tables, e.kname, true);
        const std::uint64_t computed = e.count_positive ? stats.positive : stats.negative;
        const std::uint64_t as_published = e.count_positive ? scored.positive : scored.negative;
        crit.require(stats.signed_rows() == 36 && stats.zeros == 0,
                     e.kname + ": expected 36 signed rows");
        crit.require(computed == e.computed,
                     e.kname + ": computed " + std::to_string(computed) + " of 36, pinned " +
                         std::to_string(e.computed));
        crit.require(as_published == e.published,
                     e.kname + ": published-sign scoring gives " + std::to_string(as_published) +
                         ", claim is " + std::to_string(e.published));
        const std::string pct =
            e.count_positive ? scored.pct_positive_str() : scored.pct_negative_str();
        crit.require(pct == e.published_pct,
                     e.kname + ": percentage " + pct + " != published " + e.published_pct);
        crit.note(e.kname + ": " + std::to_string(computed) + "/36 " +
                  (e.count_positive ? "positive" : "negative") + " as computed, " +
                  std::to_string(as_published) + "/36 (" + pct +
                  "%) when the two defective cells are scored as published");
    }

    // Net sign trend: the pooled mean of pi - approx is positive for the
    // k > 0 groups and negative for the k < 0 groups.
    double mean_pos = 0.0, mean_neg = 0.0;
    for (std::size_t t = 0; t < cases.size(); ++t)
        for (const auto& row : tables[t]) {
            const double diff = static_cast<double>(row.pi) - row.approx;
            (cases[t].k.num() > 0 ? mean_pos : mean_neg) += diff;
        }
    crit.require(mean_pos > 0, "pooled pi - approx not positive for k > 0");
    crit.require(mean_neg < 0, "pooled pi - approx not negative for k < 0");
    crit.finish(seconds_since(t0));
}

// ---------------------------------------------------------------------------
// Criterion 3
// ---------------------------------------------------------------------------
std::vector<apps::IntegralIdentityReport> criterion3() {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion crit{"criterion 3: convergent-integral identity, k = 1, class (4,1)"};

    const RationalExponent one(1);
    const ResidueClass cls(4, 1);
    std::vector<apps::IntegralIdentityReport> reports;
    for (std::uint64_t X : {100ull, 1000ull, 10000ull}) {
        const std::uint64_t inner = apps::power_floor(X, one);
        const PrimeProvider provider(
            SieveConfig{std::max(X, inner), apps::kDefaultSegmentOdds, kManyWorkers});
        reports.push_back(apps::theorem2_partial_integral(one, cls, X, provider));
    }

    crit.require(std::fabs(reports[0].target - (-std::log(2.0) / 4.0)) < 1e-14,
                 "closed-form target is not -log(2)/4");
    for (const auto& r : reports)
        crit.note("X=" + std::to_string(r.X) + " (inner range " + std::to_string(r.inner_bound) +
                  "): partial " + apps::format_fixed(r.partial_integral, 7) + ", target " +
                  apps::format_fixed(r.target, 7) + ", gap " + apps::format_fixed(r.gap, 7));
    crit.require(reports[2].inner_bound == 100000000, "inner range at X = 1e4 must be 1e8");
    crit.require(reports[2].gap <= 0.02, "gap at X = 1e4 exceeds 0.02");
    crit.require(reports[2].gap < reports[0].gap, "gap(1e4) is not below gap(1e2)");
    crit.finish(seconds_since(t0));
    return reports;
}

// ---------------------------------------------------------------------------
// Criterion 4
// ---------------------------------------------------------------------------
void criterion4() {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion crit{"criterion 4: k = 0 power sums degenerate to exact counts"};

    const std::vector<ResidueClass> classes = {
        ResidueClass::all_primes(), ResidueClass(4, 1), ResidueClass(4, 3), ResidueClass(5, 1),
        ResidueClass(5, 2),         ResidueClass(5, 3), ResidueClass(5, 4)};
    std::mt19937_64 rng(0x5eed5eedULL);
    std::map<std::size_t, std::set<std::uint64_t>> draws;
    for (int i = 0; i < 1000; ++i)
        draws[rng() % classes.size()].insert(19 + rng() % (1000000 - 19));

    const PrimeProvider provider(SieveConfig{1000000, apps::kDefaultSegmentOdds, kManyWorkers});
    const RationalExponent zero(0);
    std::size_t checked = 0;
    for (const auto& [ci, xs] : draws) {
        const std::vector<std::uint64_t> stops(xs.begin(), xs.end());
        const RationalExponent ks[] = {zero};
        const auto series = apps::checkpoint_series(stops, classes[ci], ks, provider);
        for (std::size_t i = 0; i < series.size(); ++i) {
            const auto& sum = series[i].power_sums.at(zero);
            if (sum.value != static_cast<double>(series[i].pi) ||
                !sum.exact.has_value() || *sum.exact != std::to_string(series[i].pi)) {
                crit.require(false, "mismatch at x = " + std::to_string(stops[i]) + " class " +
                                        classes[ci].str());
            }
            ++checked;
        }
    }
    crit.note(std::to_string(checked) + " random checkpoints across m in {1, 4, 5}");

    std::mt19937_64 rng2(0xabcdULL);
    for (int i = 0; i < 20; ++i) {
        const std::uint64_t x = 19 + rng2() % 999981;
        const auto row = apps::error_at(x, zero, classes[rng2() % classes.size()], provider);
        crit.require(row.error_pct == 0.0,
                     "error_at(" + std::to_string(x) + ", k=0) is not exactly zero");
    }
    crit.finish(seconds_since(t0));
}

// ---------------------------------------------------------------------------
// Criterion 5
// ---------------------------------------------------------------------------
bool oracle_is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::string serialize_power_sums(unsigned workers) {
    const PrimeProvider provider(SieveConfig{100000, apps::kDefaultSegmentOdds, workers});
    const RationalExponent ks[] = {RationalExponent(1), RationalExponent(1, 2),
                                   RationalExponent(-1, 10), RationalExponent(-1, 12)};
    const std::pair<std::uint32_t, std::uint32_t> classes[] = {
        {1, 0}, {4, 1}, {4, 3}, {5, 1}, {5, 3}};
    std::string out;
    for (const auto& k : ks)
        for (const auto& [m, n] : classes) {
            const auto r = apps::power_sum(100000, k, ResidueClass(m, n), provider);
            out += k.str() + "|" + std::to_string(m) + "," + std::to_string(n) + "|" +
                   apps::format_roundtrip(r.value) + "|" +
                   (r.exact ? r.exact->get_str() : "-") + "|" + std::to_string(r.terms) + "\n";
        }
    return out;
}

void criterion5(double* out_seconds) {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion crit{"criterion 5: oracle equivalence (sieve and power sums)"};

    std::vector<std::uint64_t> oracle_primes;
    for (std::uint64_t n = 2; n <= 100000; ++n)
        if (oracle_is_prime(n)) oracle_primes.push_back(n);

    for (std::uint32_t seg : {1024u, 4096u, 65536u}) {
        apps::PrimeStream stream(SieveConfig{100000, seg, 2});
        std::vector<std::uint64_t> mine;
        stream.for_each([&](std::uint64_t p) { mine.push_back(p); });
        crit.require(mine == oracle_primes,
                     "segmented sieve differs from trial division (segment_size " +
                         std::to_string(seg) + ")");
    }
    crit.note("sieve identical to trial division up to 1e5 for 3 segment sizes");

    const PrimeProvider provider(SieveConfig{100000, apps::kDefaultSegmentOdds, kManyWorkers});
    const RationalExponent ks[] = {RationalExponent(1), RationalExponent(1, 2),
                                   RationalExponent(-1, 10), RationalExponent(-1, 12)};
    const std::pair<std::uint32_t, std::uint32_t> classes[] = {
        {1, 0}, {4, 1}, {4, 3}, {5, 1}, {5, 3}};
    for (const auto& k : ks) {
        const double kv = k.value();
        for (const auto& [m, n] : classes) {
            long double oracle = 0.0L;
            for (std::uint64_t p : oracle_primes)
                if (m == 1 || p % m == n)
                    oracle += std::pow(static_cast<long double>(p), static_cast<long double>(kv));
            const auto mine = apps::power_sum(100000, k, ResidueClass(m, n), provider);
            const long double rel =
                std::fabs(static_cast<long double>(mine.value) - oracle) / oracle;
            crit.require(rel <= 1e-10L, "power sum k=" + k.str() + " (" + std::to_string(m) +
                                            "," + std::to_string(n) +
                                            ") off from the naive oracle");
        }
    }
    crit.note("20 power sums within 1e-10 relative of the long-double naive oracle");
    *out_seconds = seconds_since(t0);
    crit.finish(*out_seconds);
}

// ---------------------------------------------------------------------------
// Criterion 6
// ---------------------------------------------------------------------------
void criterion6() {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion crit{"criterion 6: reciprocal-sum residuals behave like a constant"};

    const std::vector<std::uint64_t> grid = {10000, 100000, 1000000, 10000000};
    const PrimeProvider provider(SieveConfig{10000000, apps::kDefaultSegmentOdds, kManyWorkers});
    const auto fit1 = apps::estimate_mertens_B(ResidueClass(4, 1), grid, provider);
    const auto fit3 = apps::estimate_mertens_B(ResidueClass(4, 3), grid, provider);
    const double spread1 = apps::mertens_residual_spread(fit1);
    const double spread3 = apps::mertens_residual_spread(fit3);

    crit.require(spread1 <= 0.01, "(4,1) residual spread exceeds 0.01");
    crit.require(spread3 <= 0.01, "(4,3) residual spread exceeds 0.01");
    crit.require(std::fabs(fit1.B_estimate - fit3.B_estimate) > 0.05,
                 "B estimates of the two classes coincide (accidental coupling?)");
    crit.note("B(4,1) = " + apps::format_fixed(fit1.B_estimate, 6) + " (spread " +
              apps::format_fixed(spread1, 6) + "), B(4,3) = " +
              apps::format_fixed(fit3.B_estimate, 6) + " (spread " +
              apps::format_fixed(spread3, 6) + "); values reported, not asserted");
    crit.finish(seconds_since(t0));
}

// ---------------------------------------------------------------------------
// Criterion 7
// ---------------------------------------------------------------------------
void criterion7() {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion crit{"criterion 7: summation-identity validators"};

    {
        std::vector<double> ones(10, 1.0);
        const double r = apps::abel_summation_check(
            ones, [](double t) { return t; }, [](double) { return 1.0; }, 0.5, 10.0);
        crit.require(r <= 1e-9, "constant-weight residual too large");
    }
    const PrimeProvider provider(SieveConfig{10000, apps::kDefaultSegmentOdds, 2});
    {
        std::vector<double> a(10000, 0.0);
        provider.enumerate(10000, [&](std::uint64_t p) {
            if (p % 4 == 3)
                a[p - 1] = std::log(static_cast<double>(p)) / static_cast<double>(p);
        });
        const double r = apps::abel_summation_check(
            a, [](double t) { return 1.0 / std::log(t); },
            [](double t) { return -1.0 / (t * std::log(t) * std::log(t)); }, 1.5, 10000.0);
        crit.require(r <= 1e-8, "log-weight residual too large");
    }
    {
        std::vector<double> a(1000, 0.0);
        provider.enumerate(1000, [&](std::uint64_t p) { a[p - 1] = 1.0; });
        const double r = apps::abel_summation_check(
            a, [](double t) { return std::sqrt(t); },
            [](double t) { return 0.5 / std::sqrt(t); }, 1.5, 1000.0);
        crit.require(r <= 1e-8, "sqrt-weight residual too large");
    }

    std::mt19937_64 rng(0xfeedULL);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const double y = 10.0 + (rng() % 200) / 10.0;
        const double x = 0.5 + (rng() % 50) / 10.0;
        std::vector<double> a(static_cast<std::size_t>(std::floor(y)));
        for (auto& v : a) v = coeff(rng);
        const double c0 = coeff(rng), c1 = coeff(rng), c2 = coeff(rng), c3 = coeff(rng);
        const auto f = [=](double t) {
            const double u = t / y;
            return c0 + u * (c1 + u * (c2 + u * c3));
        };
        const auto df = [=](double t) {
            const double u = t / y;
            return (c1 + u * (2.0 * c2 + u * 3.0 * c3)) / y;
        };
        worst = std::max(worst, apps::abel_summation_check(a, f, df, x, y));
    }
    crit.require(worst <= 1e-8, "randomized abel residual too large");
    crit.note("worst randomized residual " + apps::format_roundtrip(worst));

    crit.require(apps::stieltjes_prime_sum([](double) { return 1.0; }, 10000,
                                           ResidueClass(4, 1), provider) == 609.0,
                 "stieltjes count form");
    crit.require(apps::stieltjes_prime_sum([](double t) { return t; }, 100, ResidueClass(4, 1),
                                           provider) == 515.0,
                 "stieltjes linear form");
    crit.require(apps::stieltjes_prime_sum([](double t) { return 1.0 / t; }, 100,
                                           ResidueClass(4, 1), provider) ==
                     apps::mertens_ap_sum(100, ResidueClass(4, 1), provider),
                 "stieltjes reciprocal form must equal the reciprocal sum bitwise");
    crit.finish(seconds_since(t0));
}

// ---------------------------------------------------------------------------
// Criterion 8
// ---------------------------------------------------------------------------
void criterion8(const std::vector<TableCase>& cases,
                const std::vector<std::string>& csv_w8) {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion crit{"criterion 8: byte-identical artifacts at worker_count 1 and 8"};

    const auto tables_w1 = generate_full_tables(1, cases);
    for (std::size_t t = 0; t < cases.size(); ++t)
        crit.require(apps::table_csv(tables_w1[t]) == csv_w8[t],
                     "table CSV differs between worker counts: " + cases[t].key);
    crit.note("16 table CSVs byte-identical between worker_count 1 and 8");

    const std::string sums_w1 = serialize_power_sums(1);
    const std::string sums_w8 = serialize_power_sums(kManyWorkers);
    crit.require(sums_w1 == sums_w8, "power-sum serialization differs between worker counts");
    crit.note("20 serialized power sums byte-identical between worker_count 1 and 8");
    crit.finish(seconds_since(t0));
}

}  // namespace

int main() {
    std::cout << "acceptance suite: primes in arithmetic progressions toolkit\n"
              << "------------------------------------------------------------\n";
    const auto cases = all_table_cases();

    // Informational: time one sieve pass to 1e8.
    const auto s0 = std::chrono::steady_clock::now();
    {
        const PrimeProvider provider(SieveConfig{100000000, apps::kDefaultSegmentOdds, kManyWorkers});
        std::uint64_t count = 0;
        provider.enumerate(100000000, [&](std::uint64_t) { ++count; });
        if (count != 5761455) {
            std::cout << "[FAIL] pre-flight: pi(1e8) != 5761455\n";
            return 1;
        }
    }
    const double sieve_seconds = seconds_since(s0);

    const auto t0 = std::chrono::steady_clock::now();
    const auto tables = generate_full_tables(kManyWorkers, cases);
    const double gen_seconds = seconds_since(t0);

    criterion1(cases, tables, gen_seconds, sieve_seconds);
    criterion2(cases, tables);
    const auto reports = criterion3();
    criterion4();
    double c5_seconds = 0.0;
    criterion5(&c5_seconds);
    criterion6();
    criterion7();

    std::vector<std::string> csv_w8;
    for (const auto& rows : tables) csv_w8.push_back(apps::table_csv(rows));
    criterion8(cases, csv_w8);

    // Artifacts: one CSV per table plus a JSON summary (sign statistics and
    // the integral reports), for inspection and external plotting.
    namespace fs = std::filesystem;
    fs::create_directories("acceptance_artifacts");
    for (std::size_t t = 0; t < cases.size(); ++t) {
        std::ofstream out("acceptance_artifacts/table_" + cases[t].key + ".csv",
                          std::ios::binary);
        out << csv_w8[t];
    }
    {
        nlohmann::json summary{{"schema", 1}};
        for (const auto& kname : {"k1", "k1over2", "kneg1over10", "kneg1over12"}) {
            const auto stats = group_stats(cases, tables, kname, false);
            summary["sign_statistics"][kname] = {{"positive", stats.positive},
                                                 {"negative", stats.negative},
                                                 {"zeros", stats.zeros},
                                                 {"pct_positive", stats.pct_positive_str()},
                                                 {"pct_negative", stats.pct_negative_str()}};
        }
        for (const auto& r : reports) summary["theorem2"].push_back(r.to_json());
        std::ofstream out("acceptance_artifacts/summary.json", std::ios::binary);
        out << summary.dump(2) << '\n';
    }

    std::cout << "------------------------------------------------------------\n"
              << (g_failures == 0 ? "all criteria passed\n"
                                  : std::to_string(g_failures) + " criteria failed\n");
    return g_failures;
}
