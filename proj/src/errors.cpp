#include "hyperslice/errors.hpp"

namespace hyperslice {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input:
      return "invalid_input";
    case ErrorKind::capacity:
      return "capacity";
    case ErrorKind::convergence:
      return "convergence";
    case ErrorKind::regime:
      return "regime";
    case ErrorKind::domain:
      return "domain";
    case ErrorKind::degenerate:
      return "degenerate";
    case ErrorKind::nonintegrable_tail:
      return "nonintegrable_tail";
    case ErrorKind::cell_crossing:
      return "cell_crossing";
    case ErrorKind::internal:
      return "internal";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace hyperslice
