#pragma once

#include <stdexcept>
#include <string>

namespace quartred {

enum class ErrorKind {
  Input,
  ContextMismatch,
  Precision,
  HenselObstruction,
  Degenerate,
  ExtensionTooSmall,
  Internal,
};

const char* to_string(ErrorKind k);

// Every failure carries the pipeline stage it came from and a remediation hint.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string stage, const std::string& what,
        std::string hint = {});

  ErrorKind kind() const { return kind_; }
  const std::string& stage() const { return stage_; }
  const std::string& hint() const { return hint_; }

 private:
  ErrorKind kind_;
  std::string stage_;
  std::string hint_;
};

class HenselObstruction : public Error {
 public:
  HenselObstruction(int kappa, const std::string& what);
  // valuation of f'(r0)
  int kappa() const { return kappa_; }

 private:
  int kappa_;
};

}  // namespace quartred
