#include "quartred/error.hpp"

namespace quartred {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Input: return "input";
    case ErrorKind::ContextMismatch: return "context-mismatch";
    case ErrorKind::Precision: return "precision";
    case ErrorKind::HenselObstruction: return "hensel-obstruction";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::ExtensionTooSmall: return "extension-too-small";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, std::string stage, const std::string& what,
             std::string hint)
    : std::runtime_error(what),
      kind_(kind),
      stage_(std::move(stage)),
      hint_(std::move(hint)) {}

HenselObstruction::HenselObstruction(int kappa, const std::string& what)
    : Error(ErrorKind::HenselObstruction, "hensel", what,
            "shift or rescale the variable, or raise the precision"),
      kappa_(kappa) {}

}  // namespace quartred
