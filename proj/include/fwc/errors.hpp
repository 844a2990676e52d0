#ifndef FWC_ERRORS_HPP
#define FWC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fwc {

// Failure categories. These map one-to-one onto the status codes of the C API.
enum class ErrorKind {
    InvalidArgument,
    Domain,
    BudgetExceeded,
    Mismatch,
    ConstancyViolation,
    Io,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, const std::string& what) {
    if (!cond) fail(ErrorKind::InvalidArgument, what);
}

}  // namespace fwc

#endif  // FWC_ERRORS_HPP
