#include "sepscope/error.hpp"

namespace sepscope {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NotPSD: return "NotPSD";
    case Errc::TraceNotOne: return "TraceNotOne";
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::EmptySubset: return "EmptySubset";
    case Errc::SiteOutOfRange: return "SiteOutOfRange";
    case Errc::LevelOutOfRange: return "LevelOutOfRange";
    case Errc::ConvergenceFailure: return "ConvergenceFailure";
    case Errc::InvalidRange: return "InvalidRange";
    case Errc::NotAGroup: return "NotAGroup";
    case Errc::NotStraddling: return "NotStraddling";
    case Errc::FullSetError: return "FullSetError";
    case Errc::TrivialPartition: return "TrivialPartition";
    case Errc::CalibrationInconsistent: return "CalibrationInconsistent";
    case Errc::SymmetryViolation: return "SymmetryViolation";
    case Errc::SizeTooSmall: return "SizeTooSmall";
    case Errc::ChainViolation: return "ChainViolation";
    case Errc::InvalidWeights: return "InvalidWeights";
    case Errc::ParseError: return "ParseError";
    case Errc::MixedStateError: return "MixedStateError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace sepscope
