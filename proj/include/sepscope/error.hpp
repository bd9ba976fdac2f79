#pragma once

#include <stdexcept>
#include <string>

namespace sepscope {

enum class Errc {
  DimensionMismatch,
  NotHermitian,
  NotPSD,
  TraceNotOne,
  NotNormalized,
  EmptySubset,
  SiteOutOfRange,
  LevelOutOfRange,
  ConvergenceFailure,
  InvalidRange,
  NotAGroup,
  NotStraddling,
  FullSetError,
  TrivialPartition,
  CalibrationInconsistent,
  SymmetryViolation,
  SizeTooSmall,
  ChainViolation,
  InvalidWeights,
  ParseError,
  MixedStateError,
  IoError,
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace sepscope
