#pragma once
#include <stdexcept>
#include <string>

namespace zdense {

/* All library errors carry a short stable code (reused verbatim as the "code"
   field of CLI JSON error reports) plus a human-readable message. */
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

/* Input is structurally valid but fails a density requirement (symplectic
   input, no surjective prime found, ...).  The CLI maps this to exit 2,
   ordinary errors to exit 1. */
class NotDense : public Error {
public:
    using Error::Error;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
    throw Error(code, msg);
}

} // namespace zdense
