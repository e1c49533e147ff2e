#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

#include "apps/errors.hpp"

namespace apps {

// Fixed-point rendering with round-half-away-from-zero, the convention used
// for every fractional value the toolkit prints. Built from an integer of
// scaled units so the output is locale-free and reproducible byte for byte.
inline std::string format_fixed(double value, int places = 5) {
    if (!std::isfinite(value)) throw Error::numerical("cannot format non-finite value");
    double scale = 1.0;
    for (int i = 0; i < places; ++i) scale *= 10.0;
    const bool neg = value < 0;
    const double scaled = std::floor(std::fabs(value) * scale + 0.5);
    if (scaled >= 9.2e18) throw Error::bound("value too large for fixed formatting");
    const auto units = static_cast<std::uint64_t>(scaled);
    const auto whole = units / static_cast<std::uint64_t>(scale);
    const auto frac = units % static_cast<std::uint64_t>(scale);
    std::string out;
    if (neg && units != 0) out += '-';
    out += std::to_string(whole);
    if (places > 0) {
        std::string digits = std::to_string(frac);
        out += '.';
        out.append(static_cast<std::size_t>(places) - digits.size(), '0');
        out += digits;
    }
    return out;
}

// Shortest round-trip decimal for doubles, for JSON payloads that must stay
// language-neutral (parse back with strtod to recover the exact bits).
inline std::string format_roundtrip(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

}  // namespace apps
