#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "apps/errors.hpp"

namespace apps {

// Euler's totient, by trial factorization. m is a CLI-sized modulus.
inline std::uint32_t totient(std::uint32_t m) {
    if (m == 0) throw Error::domain("totient(0) is undefined");
    std::uint32_t result = m;
    std::uint32_t rest = m;
    for (std::uint32_t p = 2; static_cast<std::uint64_t>(p) * p <= rest; ++p) {
        if (rest % p != 0) continue;
        while (rest % p == 0) rest /= p;
        result -= result / p;
    }
    if (rest > 1) result -= result / rest;
    return result;
}

// Names the progression p = n (mod m). The unit constraint gcd(m, n) = 1
// matches the setting where the progression contains infinitely many primes;
// m = 1, n = 0 is the unrestricted "all primes" class.
class ResidueClass {
public:
    ResidueClass(std::uint32_t modulus, std::uint32_t residue)
        : modulus_(modulus), residue_(residue) {
        if (modulus_ == 0) throw Error::validation("modulus must be positive");
        if (modulus_ == 1) {
            if (residue_ != 0)
                throw Error::validation("the unrestricted class is (m, n) = (1, 0)");
            return;
        }
        if (residue_ == 0 || residue_ >= modulus_)
            throw Error::validation("residue must satisfy 1 <= n < m, got n = " +
                                    std::to_string(residue_) + ", m = " + std::to_string(modulus_));
        if (std::gcd(modulus_, residue_) != 1)
            throw Error::validation("residue class (" + std::to_string(modulus_) + ", " +
                                    std::to_string(residue_) + ") is not coprime");
    }

    static ResidueClass all_primes() { return ResidueClass(1, 0); }

    std::uint32_t modulus() const noexcept { return modulus_; }
    std::uint32_t residue() const noexcept { return residue_; }
    bool unrestricted() const noexcept { return modulus_ == 1; }

    bool contains(std::uint64_t value) const noexcept {
        return modulus_ == 1 || value % modulus_ == residue_;
    }

    std::uint32_t phi() const { return totient(modulus_); }

    std::string str() const {
        return "(" + std::to_string(modulus_) + "," + std::to_string(residue_) + ")";
    }

    friend bool operator==(const ResidueClass&, const ResidueClass&) = default;

private:
    std::uint32_t modulus_;
    std::uint32_t residue_;
};

// True iff prime p falls in the class. p >= 2 expected; composites are the
// caller's responsibility, this is pure modular arithmetic.
inline bool classify(std::uint64_t p, const ResidueClass& cls) { return cls.contains(p); }

}  // namespace apps
