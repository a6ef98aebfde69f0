#pragma once

#include <stdexcept>
#include <string>

namespace slipns {

// Error categories surfaced through the C API as status codes.
enum class ErrorCode {
    invalid_argument = 1,
    domain_error = 2,       // input violates a mathematical precondition
    branch_cut = 3,         // complex frequency on the spectral cut
    not_converged = 4,      // iterative or quadrature process failed to converge
    io_error = 5,
    internal = 6,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool cond, ErrorCode code, const std::string& msg) {
    if (!cond) fail(code, msg);
}

}  // namespace slipns
