// apps command-line tool: prime counts, prime power sums, error tables, and
// verification suites for primes in arithmetic progressions.

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "apps/apps.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitBound = 4;

int exit_code_for(const apps::Error& e) {
    switch (e.code()) {
        case apps::errc::validation:
        case apps::errc::domain:
            return kExitValidation;
        case apps::errc::numerical:
            return kExitNumerical;
        case apps::errc::bound:
            return kExitBound;
    }
    return kExitValidation;
}

struct GlobalOptions {
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::uint32_t segment_size = apps::kDefaultSegmentOdds;
    std::string cache_dir;
    std::string format = "pretty";
    apps::QuadratureOptions quadrature;

    apps::SieveOptions sieve() const { return apps::SieveOptions{segment_size, workers}; }
};

// Guard for commands whose inner prime range grows like X^(k+1).
constexpr std::uint64_t kMaxInnerRange = std::uint64_t{1} << 34;

// Accepts plain integers and scientific notation ("1e8", "5e7").
std::uint64_t parse_amount(const std::string& text) {
    if (text.empty()) throw apps::Error::validation("empty numeric argument");
    std::uint64_t direct = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), direct);
    if (ec == std::errc() && ptr == text.data() + text.size()) return direct;

    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || !std::isfinite(v) || v < 0)
        throw apps::Error::validation("cannot parse number '" + text + "'");
    if (v != std::floor(v) || v > 9.0e15)
        throw apps::Error::validation("number '" + text + "' is not an exact integer in range");
    return static_cast<std::uint64_t>(v);
}

std::vector<std::uint64_t> parse_grid(const std::string& text) {
    std::vector<std::uint64_t> grid;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const auto piece = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                       : comma - pos);
        if (!piece.empty()) grid.push_back(parse_amount(piece));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return grid;
}

// Content-addressed prime cache: <dir>/primes-<limit>.apps. A cache hit must
// be indistinguishable from a fresh sieve, so corrupt or mismatched files are
// recomputed (and rewritten) rather than trusted.
apps::PrimeProvider provider_for(std::uint64_t limit, const GlobalOptions& opts) {
    limit = std::max<std::uint64_t>(limit, 2);
    const apps::SieveConfig cfg = opts.sieve().config_for(limit);
    if (opts.cache_dir.empty()) return apps::PrimeProvider(cfg);

    const fs::path path = fs::path(opts.cache_dir) / ("primes-" + std::to_string(limit) + ".apps");
    if (fs::exists(path)) {
        try {
            auto data = apps::read_prime_cache(path.string());
            if (data.limit == limit) return apps::PrimeProvider::from_cache(std::move(data));
            std::cerr << "warning: cache " << path << " covers a different limit; resieving\n";
        } catch (const apps::Error& e) {
            std::cerr << "warning: ignoring unusable cache " << path << " (" << e.what() << ")\n";
        }
    }
    try {
        fs::create_directories(opts.cache_dir);
        apps::write_prime_cache(path.string(), cfg);
        return apps::PrimeProvider::from_cache(apps::read_prime_cache(path.string()));
    } catch (const apps::Error& e) {
        std::cerr << "warning: cannot write cache " << path << " (" << e.what() << ")\n";
    }
    return apps::PrimeProvider(cfg);
}

void emit(const std::string& pretty, const json& machine, const GlobalOptions& opts) {
    if (opts.format == "json")
        std::cout << machine.dump(2) << '\n';
    else
        std::cout << pretty << '\n';
}

// ---------------------------------------------------------------- count ----
int run_count(std::uint64_t x, std::uint32_t m, std::uint32_t n, const GlobalOptions& opts) {
    const apps::ResidueClass cls(m, n);
    const auto pi = apps::count_primes(x, cls, provider_for(x, opts));
    emit(std::to_string(pi),
         json{{"schema", 1}, {"x", x}, {"m", m}, {"n", n}, {"pi", pi}}, opts);
    return kExitOk;
}

// ------------------------------------------------------------- powersum ----
int run_powersum(std::uint64_t x, const std::string& k_text, std::uint32_t m, std::uint32_t n,
                 bool at_threshold, const GlobalOptions& opts) {
    const auto k = apps::RationalExponent::parse(k_text);
    const apps::ResidueClass cls(m, n);
    const std::uint64_t bound = at_threshold ? apps::power_sum_threshold(x, k) : x;
    const auto provider = provider_for(bound, opts);
    const auto result = at_threshold ? apps::power_sum_at_threshold(x, k, cls, provider)
                                     : apps::power_sum(x, k, cls, provider);

    json out{{"schema", 1},          {"x", x},
             {"k", k.str()},         {"m", m},
             {"n", n},               {"at_threshold", at_threshold},
             {"prime_bound", bound}, {"value", apps::format_roundtrip(result.value)},
             {"terms", result.terms}};
    out["exact"] = result.exact ? json(result.exact->get_str()) : json(nullptr);

    const std::string pretty =
        result.exact ? result.exact->get_str() : apps::format_fixed(result.value, 5);
    emit(pretty, out, opts);
    return kExitOk;
}

// ---------------------------------------------------------------- table ----
int run_table(const std::string& k_text, std::uint32_t m, std::uint32_t n,
              const std::string& grid_text, const std::string& out_path,
              const GlobalOptions& opts) {
    const auto k = apps::RationalExponent::parse(k_text);
    const apps::ResidueClass cls(m, n);
    std::vector<std::uint64_t> grid =
        grid_text.empty() ? apps::default_table_grid() : parse_grid(grid_text);
    if (grid.empty()) throw apps::Error::validation("table grid is empty");

    std::uint64_t bound = grid.back();
    bound = std::max(bound, apps::power_sum_threshold(grid.back(), k));
    const auto rows = apps::generate_table(k, cls, grid, provider_for(bound, opts));

    if (opts.format == "json") {
        json jrows = json::array();
        for (const auto& r : rows)
            jrows.push_back(json{{"x", r.x},
                                 {"pi", r.pi},
                                 {"approx", apps::format_fixed(r.approx, 5)},
                                 {"error_pct", apps::format_fixed(r.error_pct, 5)}});
        json doc{{"schema", 1}, {"k", k.str()}, {"m", m}, {"n", n}, {"rows", jrows}};
        if (out_path.empty() || out_path == "-") {
            std::cout << doc.dump(2) << '\n';
        } else {
            std::ofstream f(out_path, std::ios::binary);
            if (!f) throw apps::Error::bound("cannot open output file " + out_path);
            f << doc.dump(2) << '\n';
        }
        return kExitOk;
    }

    const std::string csv = apps::table_csv(rows);
    if (out_path.empty() || out_path == "-") {
        std::cout << csv;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw apps::Error::bound("cannot open output file " + out_path);
        f << csv;
    }
    return kExitOk;
}

// --------------------------------------------------------------- verify ----
struct SuiteResult {
    std::string name;
    bool pass = true;
    json detail;
};

void report_line(const SuiteResult& r) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << '\n';
}

SuiteResult verify_tables(bool full_scale, const GlobalOptions& opts) {
    SuiteResult result{"tables"};
    const std::vector<std::uint64_t> full = apps::default_table_grid();
    std::vector<std::uint64_t> grid = full;
    if (!full_scale) grid.assign(full.begin(), full.begin() + 5);  // up to 10^6

    const std::vector<apps::RationalExponent> ks = {
        apps::RationalExponent(1), apps::RationalExponent(1, 2), apps::RationalExponent(-1, 10),
        apps::RationalExponent(-1, 12)};
    const std::vector<apps::ResidueClass> classes = {
        apps::ResidueClass(4, 1), apps::ResidueClass(4, 3), apps::ResidueClass(5, 1),
        apps::ResidueClass(5, 3)};

    std::vector<apps::TableSpec> specs;
    for (const auto& k : ks)
        for (const auto& cls : classes) specs.push_back({k, cls});

    std::uint64_t bound = grid.back();
    for (const auto& spec : specs)
        bound = std::max(bound, apps::power_sum_threshold(grid.back(), spec.k));
    const auto provider = provider_for(bound, opts);
    const auto tables = apps::generate_tables(specs, grid, provider);

    json jtables = json::array();
    std::vector<std::string> failures;
    for (std::size_t s = 0; s < specs.size(); ++s) {
        const auto& rows = tables[s];
        json jrows = json::array();
        for (const auto& r : rows)
            jrows.push_back(json{{"x", r.x},
                                 {"pi", r.pi},
                                 {"approx", apps::format_fixed(r.approx, 5)},
                                 {"error_pct", apps::format_fixed(r.error_pct, 5)}});
        jtables.push_back(json{{"k", specs[s].k.str()},
                               {"m", specs[s].cls.modulus()},
                               {"n", specs[s].cls.residue()},
                               {"rows", jrows}});

        // Monotone counts along the grid.
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (rows[i].pi < rows[i - 1].pi)
                failures.push_back("pi not monotone for k=" + specs[s].k.str());
        // Full scale: relative error shrinks from the first grid point to the last.
        if (full_scale && std::fabs(rows.back().error_pct) >= std::fabs(rows.front().error_pct))
            failures.push_back("no error decay for k=" + specs[s].k.str() + " class " +
                               specs[s].cls.str());
    }

    // Sign trend of pi - approx, pooled per exponent sign.
    double mean_pos = 0.0, mean_neg = 0.0;
    std::size_t n_pos = 0, n_neg = 0;
    for (std::size_t s = 0; s < specs.size(); ++s) {
        for (const auto& r : tables[s]) {
            const double diff = static_cast<double>(r.pi) - r.approx;
            if (specs[s].k.num() > 0) {
                mean_pos += diff;
                ++n_pos;
            } else if (specs[s].k.num() < 0) {
                mean_neg += diff;
                ++n_neg;
            }
        }
    }
    if (full_scale) {
        if (!(mean_pos / static_cast<double>(n_pos) > 0))
            failures.push_back("pooled mean of pi - approx not positive for k > 0");
        if (!(mean_neg / static_cast<double>(n_neg) < 0))
            failures.push_back("pooled mean of pi - approx not negative for k < 0");
    }

    result.pass = failures.empty();
    result.detail = json{{"scale", full_scale ? "full" : "small"},
                         {"tables", std::move(jtables)},
                         {"failures", failures}};
    return result;
}

SuiteResult verify_theorem2(const std::string& k_text, std::uint32_t m, std::uint32_t n,
                            std::uint64_t X, double tolerance, const GlobalOptions& opts) {
    SuiteResult result{"theorem2"};
    const auto k = apps::RationalExponent::parse(k_text);
    const apps::ResidueClass cls(m, n);
    const std::uint64_t inner = apps::power_floor(X, k);
    if (inner > kMaxInnerRange)
        throw apps::Error::bound("theorem2 at X = " + std::to_string(X) + ", k = " + k.str() +
                                 " requires sieving to " + std::to_string(inner) +
                                 " (above the supported " + std::to_string(kMaxInnerRange) + ")");
    const auto provider = provider_for(std::max(X, inner), opts);
    const auto report = apps::theorem2_partial_integral(k, cls, X, provider);
    result.pass = report.gap <= tolerance;
    result.detail = report.to_json();
    result.detail["tolerance"] = tolerance;
    std::cout << "theorem2: k=" << k.str() << " class " << cls.str() << " X=" << X
              << " partial=" << apps::format_fixed(report.partial_integral, 6)
              << " target=" << apps::format_fixed(report.target, 6)
              << " gap=" << apps::format_fixed(report.gap, 6) << '\n';
    return result;
}

SuiteResult verify_mertens(const GlobalOptions& opts) {
    SuiteResult result{"mertens"};
    const std::vector<std::uint64_t> grid = {10000, 100000, 1000000, 10000000};
    const auto provider = provider_for(grid.back(), opts);
    const auto fit1 = apps::estimate_mertens_B(apps::ResidueClass(4, 1), grid, provider);
    const auto fit3 = apps::estimate_mertens_B(apps::ResidueClass(4, 3), grid, provider);
    const double spread1 = apps::mertens_residual_spread(fit1);
    const double spread3 = apps::mertens_residual_spread(fit3);
    result.pass = spread1 <= 0.01 && spread3 <= 0.01 &&
                  std::fabs(fit1.B_estimate - fit3.B_estimate) > 0.05;
    result.detail = json{{"fit_4_1", fit1.to_json()},
                         {"fit_4_3", fit3.to_json()},
                         {"B_difference", fit1.B_estimate - fit3.B_estimate}};
    std::cout << "mertens: B(4,1)=" << apps::format_fixed(fit1.B_estimate, 6)
              << " B(4,3)=" << apps::format_fixed(fit3.B_estimate, 6)
              << " residual bounds " << apps::format_fixed(fit1.residual_bound, 6) << ", "
              << apps::format_fixed(fit3.residual_bound, 6)
              << " (spreads " << apps::format_fixed(spread1, 6) << ", "
              << apps::format_fixed(spread3, 6) << ")\n";
    return result;
}

SuiteResult verify_abel(const GlobalOptions& opts) {
    SuiteResult result{"abel"};
    std::vector<std::string> failures;
    const auto& quad = opts.quadrature;

    {  // a = 1, f(t) = t over (0.5, 10]
        std::vector<double> ones(10, 1.0);
        const double r = apps::abel_summation_check(
            ones, [](double t) { return t; }, [](double) { return 1.0; }, 0.5, 10.0, quad);
        if (r > 1e-9) failures.push_back("constant-weight instantiation residual " +
                                         apps::format_roundtrip(r));
    }

    const auto provider = provider_for(10000, opts);
    {  // a(p) = log p / p on primes = 3 (mod 4), f = 1/log t
        std::vector<double> a(10000, 0.0);
        provider.enumerate(10000, [&](std::uint64_t p) {
            if (p % 4 == 3) a[p - 1] = std::log(static_cast<double>(p)) / static_cast<double>(p);
        });
        const double r = apps::abel_summation_check(
            a, [](double t) { return 1.0 / std::log(t); },
            [](double t) { return -1.0 / (t * std::log(t) * std::log(t)); }, 1.5, 10000.0, quad);
        if (r > 1e-8) failures.push_back("reciprocal-prime instantiation residual " +
                                         apps::format_roundtrip(r));
    }
    {  // a = prime indicator, f = t^(1/2)
        std::vector<double> a(1000, 0.0);
        provider.enumerate(1000, [&](std::uint64_t p) { a[p - 1] = 1.0; });
        const double r = apps::abel_summation_check(
            a, [](double t) { return std::sqrt(t); },
            [](double t) { return 0.5 / std::sqrt(t); }, 1.5, 1000.0, quad);
        if (r > 1e-8) failures.push_back("power-sum instantiation residual " +
                                         apps::format_roundtrip(r));
    }

    result.pass = failures.empty();
    result.detail = json{{"failures", failures}};
    std::cout << "abel: 3 instantiations checked" << (result.pass ? "" : " (FAILURES)") << '\n';
    return result;
}

SuiteResult verify_race(const GlobalOptions& opts) {
    SuiteResult result{"race"};
    const auto provider = provider_for(1000000, opts);
    const auto tally = apps::race_tally(4, 3, 1, 1000000, 1, provider);
    result.pass = tally.lead_fraction > 0.5;
    result.detail = tally.to_json();
    std::cout << "race (4;3,1) to 1e6: lead fraction "
              << apps::format_fixed(tally.lead_fraction, 6) << ", "
              << tally.leader_changes << " lead changes\n";
    return result;
}

int run_verify(const std::string& suite, const std::string& k_text, std::uint32_t m,
               std::uint32_t n, std::uint64_t X, double tolerance, const std::string& scale,
               const GlobalOptions& opts) {
    std::vector<SuiteResult> results;
    const bool full = scale != "small";
    if (suite == "tables" || suite == "all") results.push_back(verify_tables(full, opts));
    if (suite == "theorem2" || suite == "all")
        results.push_back(verify_theorem2(k_text, m, n, X, tolerance, opts));
    if (suite == "mertens" || suite == "all") results.push_back(verify_mertens(opts));
    if (suite == "abel" || suite == "all") results.push_back(verify_abel(opts));
    if (suite == "race" || suite == "all") results.push_back(verify_race(opts));
    if (results.empty())
        throw apps::Error::validation("unknown verify suite '" + suite + "'");

    bool all_pass = true;
    json summary = json::array();
    for (const auto& r : results) {
        report_line(r);
        all_pass = all_pass && r.pass;
        summary.push_back(json{{"suite", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    }
    if (opts.format == "json")
        std::cout << json{{"schema", 1}, {"pass", all_pass}, {"suites", summary}}.dump(2) << '\n';
    return all_pass ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
    GlobalOptions opts;
    if (const char* env = std::getenv("APPS_CACHE_DIR")) opts.cache_dir = env;

    CLI::App app{"prime counts and prime power sums in arithmetic progressions"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    app.add_option("--workers", opts.workers, "sieve worker threads")->capture_default_str();
    app.add_option("--segment-size", opts.segment_size,
                   "odd numbers per sieve segment (>= 1024)")
        ->capture_default_str();
    app.add_option("--cache-dir", opts.cache_dir,
                   "prime cache directory (default: APPS_CACHE_DIR)");
    app.add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"pretty", "json", "csv"}))
        ->capture_default_str();
    app.add_option("--quad-abs-tol", opts.quadrature.abs_tol, "quadrature absolute tolerance")
        ->capture_default_str();
    app.add_option("--quad-rel-tol", opts.quadrature.rel_tol, "quadrature relative tolerance")
        ->capture_default_str();

    std::string x_text = "0", k_text = "1", grid_text, out_path, suite = "all", scale = "full";
    std::uint32_t m = 1, n = 0;
    bool at_threshold = false;
    double tolerance = 0.02;

    auto* count = app.add_subcommand("count", "print pi(x; m, n)");
    count->add_option("--x", x_text, "upper bound (accepts 1e8 forms)")->required();
    count->add_option("--mod", m, "modulus m")->required();
    count->add_option("--res", n, "residue n");

    auto* powersum = app.add_subcommand("powersum", "print pi_k(x; m, n)");
    powersum->add_option("--x", x_text)->required();
    powersum->add_option("--k", k_text, "exponent as integer or fraction a/b")->required();
    powersum->add_option("--mod", m)->required();
    powersum->add_option("--res", n);
    powersum->add_flag("--at-threshold", at_threshold,
                       "sum over p with p^(k+1) <= x instead of p <= x");

    auto* table = app.add_subcommand("table", "emit an error table as CSV");
    table->add_option("--k", k_text)->required();
    table->add_option("--mod", m)->required();
    table->add_option("--res", n);
    table->add_option("--grid", grid_text, "comma-separated x values (default: 1e4..1e8 grid)");
    table->add_option("--out", out_path, "output file ('-' for stdout)");

    std::string verify_k = "1", verify_X = "1e4";
    std::uint32_t verify_m = 4, verify_n = 1;
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", suite)
        ->check(CLI::IsMember({"tables", "theorem2", "mertens", "abel", "race", "all"}));
    verify->add_option("--k", verify_k)->capture_default_str();
    verify->add_option("--mod", verify_m)->capture_default_str();
    verify->add_option("--res", verify_n)->capture_default_str();
    verify->add_option("--X", verify_X, "partial-integral upper limit (theorem2)")
        ->capture_default_str();
    verify->add_option("--tol", tolerance, "gap tolerance (theorem2)")->capture_default_str();
    verify->add_option("--scale", scale)->check(CLI::IsMember({"small", "full"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (count->parsed()) return run_count(parse_amount(x_text), m, n, opts);
        if (powersum->parsed())
            return run_powersum(parse_amount(x_text), k_text, m, n, at_threshold, opts);
        if (table->parsed()) return run_table(k_text, m, n, grid_text, out_path, opts);
        if (verify->parsed())
            return run_verify(suite, verify_k, verify_m, verify_n, parse_amount(verify_X),
                              tolerance, scale, opts);
    } catch (const apps::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitValidation;
}
