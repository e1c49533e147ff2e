#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>
#include <string_view>

#include "apps/errors.hpp"

namespace apps {

// Exponent k = num/den in lowest terms, den >= 1, constrained to k > -1
// (equivalently num + den > 0). Keeping k rational is what makes the
// p^(k+1) <= x boundary decidable in exact integer arithmetic.
class RationalExponent {
public:
    constexpr RationalExponent() : num_(0), den_(1) {}

    RationalExponent(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {
        if (den_ == 0) throw Error::validation("exponent denominator must be nonzero");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ + den_ <= 0)
            throw Error::domain("exponent k = " + str() + " is outside the supported range k > -1");
    }

    // Accepts "a", "a/b", with optional leading '-' on either part.
    static RationalExponent parse(std::string_view text) {
        const auto bad = [&] {
            return Error::validation("cannot parse exponent '" + std::string(text) +
                                     "' (expected forms: 1, -1, 1/2, -1/10)");
        };
        auto parse_int = [&](std::string_view part) {
            std::int64_t value = 0;
            const char* first = part.data();
            const char* last = part.data() + part.size();
            auto [ptr, ec] = std::from_chars(first, last, value);
            if (ec != std::errc() || ptr != last) throw bad();
            return value;
        };
        if (text.empty()) throw bad();
        const auto slash = text.find('/');
        if (slash == std::string_view::npos) return RationalExponent(parse_int(text));
        if (slash + 1 >= text.size()) throw bad();
        return RationalExponent(parse_int(text.substr(0, slash)),
                                parse_int(text.substr(slash + 1)));
    }

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    // a + b: the exponent of p in the exact membership test p^(a+b) <= x^b.
    std::int64_t exponent_sum() const noexcept { return num_ + den_; }

    bool is_integer() const noexcept { return den_ == 1; }
    bool is_nonnegative_integer() const noexcept { return den_ == 1 && num_ >= 0; }
    bool is_zero() const noexcept { return num_ == 0; }

    double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend auto operator<=>(const RationalExponent&, const RationalExponent&) = default;

private:
    std::int64_t num_;
    std::int64_t den_;
};

}  // namespace apps
