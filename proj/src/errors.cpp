#include "seqlab/errors.hpp"

namespace seqlab {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NonFiniteCoordinate: return "NonFiniteCoordinate";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::DimensionExhausted: return "DimensionExhausted";
    case Errc::SearchExhausted: return "SearchExhausted";
    case Errc::InsufficientStabilization: return "InsufficientStabilization";
    case Errc::RatioOutOfRange: return "RatioOutOfRange";
    case Errc::DuplicateRatio: return "DuplicateRatio";
    case Errc::EpsOutOfRange: return "EpsOutOfRange";
    case Errc::OverlappingWindows: return "OverlappingWindows";
    case Errc::UnnormalizedBlock: return "UnnormalizedBlock";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::NetTooCoarse: return "NetTooCoarse";
    case Errc::CaseBoundViolated: return "CaseBoundViolated";
    case Errc::TooFewIndices: return "TooFewIndices";
    case Errc::WitnessViolation: return "WitnessViolation";
    case Errc::MissingPerturbCert: return "MissingPerturbCert";
    case Errc::MalformedCertificate: return "MalformedCertificate";
    case Errc::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

bool is_model_limit(Errc code) noexcept {
  return code == Errc::DimensionExhausted || code == Errc::SearchExhausted ||
         code == Errc::InsufficientStabilization;
}

bool is_hard_failure(Errc code) noexcept {
  return code == Errc::WitnessViolation || code == Errc::CaseBoundViolated ||
         code == Errc::NetTooCoarse;
}

}  // namespace seqlab
