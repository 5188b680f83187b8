#ifndef CLUBFORGE_ERROR_HPP
#define CLUBFORGE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace clubforge {

// Typed runtime error. The code is a stable machine-readable tag
// (e.g. "NotPrime", "BudgetExceeded") that the CLI maps to structured
// stderr JSON and exit codes.
class Error : public std::runtime_error {
  public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

  private:
    std::string code_;
};

[[noreturn]] inline void fail(std::string code, const std::string& message) {
    throw Error(std::move(code), message);
}

}  // namespace clubforge

#endif
