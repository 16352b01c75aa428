#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperslice {

enum class ErrorKind {
  invalid_input,
  capacity,
  convergence,
  regime,
  domain,
  degenerate,
  nonintegrable_tail,
  cell_crossing,
  internal,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; the kind drives CLI exit codes and
/// Python exception mapping.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace hyperslice
