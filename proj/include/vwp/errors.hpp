#pragma once

#include <stdexcept>
#include <string>

namespace vwp {

enum class ErrorKind {
  DivisionByVanishingFactor,
  NomeOutOfRange,
  ZeroArgument,
  PoleAtNonpositiveInteger,
  PoleHit,
  ThetaZeroHit,
  ConvergenceViolated,
  RadiusExhausted,
  TruncationViolated,
  GenericityViolated,
  InvalidParameters,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind), detail_(detail) {}

  ErrorKind kind() const { return kind_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace vwp
