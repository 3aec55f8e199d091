#pragma once

#include <stdexcept>
#include <string>

namespace oraclab {

enum class Errc {
    invalid_argument = 1,
    unsupported_case,
    domain_violation,
    budget_exhausted,
    not_converged,
    subspace_exhausted,
    io_error,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, const std::string& what) {
    if (!ok) fail(Errc::invalid_argument, what);
}

}  // namespace oraclab
