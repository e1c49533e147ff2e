#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "apps/errors.hpp"
#include "apps/rational.hpp"

namespace apps {

// Exact boundary tests for p <= x^(1/(k+1)) with k = a/b in lowest terms.
// The comparison is carried out as p^(a+b) <= x^b over the integers, so a
// prime within one ulp of the real threshold can never be misclassified.

inline bool threshold_membership(std::uint64_t p, std::uint64_t x, const RationalExponent& k) {
    mpz_class lhs, rhs;
    mpz_ui_pow_ui(lhs.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(k.exponent_sum()));
    mpz_ui_pow_ui(rhs.get_mpz_t(), static_cast<unsigned long>(x),
                  static_cast<unsigned long>(k.den()));
    return lhs <= rhs;
}

// floor(x^(b/(a+b))): the largest integer t with t^(a+b) <= x^b, i.e. the
// inclusive prime bound behind a power sum "at threshold".
inline std::uint64_t power_sum_threshold(std::uint64_t x, const RationalExponent& k) {
    if (x == 0) return 0;
    mpz_class pw, root;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(x),
                  static_cast<unsigned long>(k.den()));
    mpz_root(root.get_mpz_t(), pw.get_mpz_t(), static_cast<unsigned long>(k.exponent_sum()));
    if (!root.fits_ulong_p())
        throw Error::bound("threshold for x = " + std::to_string(x) + ", k = " + k.str() +
                           " does not fit in 64 bits");
    return static_cast<std::uint64_t>(root.get_ui());
}

// floor(x^((a+b)/b)) = floor(x^(k+1)): the inclusive inner prime bound used
// when comparing a power sum up to x against a count up to x^(k+1).
inline std::uint64_t power_floor(std::uint64_t x, const RationalExponent& k) {
    if (x == 0) return 0;
    mpz_class pw, root;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(x),
                  static_cast<unsigned long>(k.exponent_sum()));
    mpz_root(root.get_mpz_t(), pw.get_mpz_t(), static_cast<unsigned long>(k.den()));
    if (!root.fits_ulong_p())
        throw Error::bound("x^(k+1) for x = " + std::to_string(x) + ", k = " + k.str() +
                           " does not fit in 64 bits");
    return static_cast<std::uint64_t>(root.get_ui());
}

}  // namespace apps
