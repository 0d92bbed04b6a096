#ifndef SPHERE_QMC_ERROR_HPP
#define SPHERE_QMC_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace sphere_qmc {

enum class ErrorKind {
  invalid_input,
  unsupported,
  numerical_inconsistency,
  size_limit,
  singular_domain,
  degenerate_cap,
  domain,
  internal,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::numerical_inconsistency: return "numerical-inconsistency";
    case ErrorKind::size_limit: return "size-limit";
    case ErrorKind::singular_domain: return "singular-domain";
    case ErrorKind::degenerate_cap: return "degenerate-cap";
    case ErrorKind::domain: return "domain";
    case ErrorKind::internal: return "internal-error";
  }
  return "unknown";
}

/// Every failure raised by the library. `kind()` tells callers which
/// contract was violated; the message carries the offending values.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

namespace detail {

inline void require(bool condition, ErrorKind kind, const std::string &what) {
  if (!condition) throw Error(kind, what);
}

}  // namespace detail

}  // namespace sphere_qmc

#endif  // SPHERE_QMC_ERROR_HPP
