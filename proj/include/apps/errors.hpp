#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace apps {

// Error taxonomy shared by the library and the CLI exit-code contract:
//   validation -> exit 2, domain -> exit 2, numerical -> exit 3, bound -> exit 4.
enum class errc {
    validation,
    domain,
    bound,
    numerical,
};

class Error : public std::runtime_error {
public:
    Error(errc code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}

    errc code() const noexcept { return code_; }

    static Error validation(std::string msg) { return Error(errc::validation, std::move(msg)); }
    static Error domain(std::string msg) { return Error(errc::domain, std::move(msg)); }
    static Error bound(std::string msg) { return Error(errc::bound, std::move(msg)); }
    static Error numerical(std::string msg) { return Error(errc::numerical, std::move(msg)); }

private:
    errc code_;
};

}  // namespace apps
