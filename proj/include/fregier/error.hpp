#pragma once

#include <stdexcept>
#include <string>

namespace fregier {

/// Failure categories. Each maps onto one CLI exit code.
enum class ErrorKind {
  invalid_argument,   ///< caller supplied inputs outside the documented domain
  numerical_failure,  ///< a search or fit did not reach its tolerance
  degeneracy,         ///< a documented degenerate configuration (e.g. infinitely many solutions)
};

class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace fregier
