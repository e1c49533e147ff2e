#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "apps/format.hpp"
#include "apps/kahan.hpp"
#include "apps/rational.hpp"
#include "apps/residue.hpp"

#include "json.hpp"

namespace apps {

// One prime-power term p^k as a double. For fractional k this is the
// exp(k ln p) evaluation, done by the libm pow (correctly rounded to well
// under the ~2 ulp per-term budget the 5-decimal tables need).
inline double power_term(std::uint64_t p, const RationalExponent& k) {
    if (k.is_zero()) return 1.0;
    if (k == RationalExponent(1)) return static_cast<double>(p);
    return std::pow(static_cast<double>(p), k.value());
}

// Compensated floating accumulator for sums of p^k, with an exact integer
// companion that is live whenever k is a nonnegative integer.
class PowerSumAccumulator {
public:
    explicit PowerSumAccumulator(RationalExponent k)
        : k_(k), exact_active_(k.is_nonnegative_integer()) {}

    const RationalExponent& exponent() const { return k_; }
    std::uint64_t term_count() const { return terms_; }
    bool exact_active() const { return exact_active_; }

    void add_prime(std::uint64_t p) {
        float_.add(power_term(p, k_));
        if (exact_active_) {
            if (k_.is_zero()) {
                exact_ += 1;
            } else if (k_ == RationalExponent(1)) {
                exact_ += static_cast<unsigned long>(p);
            } else {
                mpz_class term;
                mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(p),
                              static_cast<unsigned long>(k_.num()));
                exact_ += term;
            }
        }
        ++terms_;
    }

    double value() const { return float_.value(); }
    const CompensatedSum<double>& float_parts() const { return float_; }
    const mpz_class& exact_value() const { return exact_; }

    std::optional<std::string> exact_string() const {
        if (!exact_active_) return std::nullopt;
        return exact_.get_str();
    }

private:
    RationalExponent k_;
    CompensatedSum<double> float_;
    mpz_class exact_;
    bool exact_active_;
    std::uint64_t terms_ = 0;
};

// Value-level result of a power sum: the compensated double plus, when k is a
// nonnegative integer, the exact integer sum.
struct PowerSumResult {
    double value = 0.0;
    double compensation = 0.0;  // carry of the compensated sum at snapshot time
    std::optional<mpz_class> exact;
    std::uint64_t terms = 0;

    static PowerSumResult from(const PowerSumAccumulator& acc) {
        PowerSumResult r;
        r.value = acc.value();
        r.compensation = acc.float_parts().compensation;
        r.terms = acc.term_count();
        if (acc.exact_active()) r.exact = acc.exact_value();
        return r;
    }
};

// Snapshot of pi and power sums at a checkpoint x, serializable to the
// versioned JSON interchange document (floats as decimal strings).
struct CheckpointedCounts {
    std::uint64_t x = 0;
    ResidueClass cls = ResidueClass::all_primes();
    std::uint64_t pi = 0;

    struct Sum {
        double value = 0.0;
        double compensation = 0.0;
        std::optional<std::string> exact;
        std::uint64_t terms = 0;
    };
    std::map<RationalExponent, Sum> power_sums;

    nlohmann::json to_json() const {
        nlohmann::json sums = nlohmann::json::object();
        for (const auto& [k, s] : power_sums) {
            nlohmann::json one{{"float", format_roundtrip(s.value)},
                               {"compensation", format_roundtrip(s.compensation)},
                               {"terms", s.terms}};
            one["exact"] = s.exact ? nlohmann::json(*s.exact) : nlohmann::json(nullptr);
            sums[k.str()] = std::move(one);
        }
        return nlohmann::json{{"schema", 1},
                              {"x", x},
                              {"m", cls.modulus()},
                              {"n", cls.residue()},
                              {"pi", pi},
                              {"power_sums", std::move(sums)}};
    }

    static CheckpointedCounts from_json(const nlohmann::json& j) {
        if (!j.contains("schema") || j.at("schema").get<int>() != 1)
            throw Error::validation("checkpoint document has unsupported schema");
        CheckpointedCounts c;
        c.x = j.at("x").get<std::uint64_t>();
        c.cls = ResidueClass(j.at("m").get<std::uint32_t>(), j.at("n").get<std::uint32_t>());
        c.pi = j.at("pi").get<std::uint64_t>();
        for (const auto& [key, val] : j.at("power_sums").items()) {
            Sum s;
            s.value = std::strtod(val.at("float").get<std::string>().c_str(), nullptr);
            s.compensation =
                std::strtod(val.at("compensation").get<std::string>().c_str(), nullptr);
            s.terms = val.at("terms").get<std::uint64_t>();
            if (!val.at("exact").is_null()) s.exact = val.at("exact").get<std::string>();
            c.power_sums.emplace(RationalExponent::parse(key), std::move(s));
        }
        return c;
    }
};

}  // namespace apps
