#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace seqlab {

enum class Errc {
  NonFiniteCoordinate,
  LengthMismatch,
  IndexOutOfRange,
  PreconditionViolated,
  DimensionExhausted,
  SearchExhausted,
  InsufficientStabilization,
  RatioOutOfRange,
  DuplicateRatio,
  EpsOutOfRange,
  OverlappingWindows,
  UnnormalizedBlock,
  ZeroVector,
  NetTooCoarse,
  CaseBoundViolated,
  TooFewIndices,
  WitnessViolation,
  MissingPerturbCert,
  MalformedCertificate,
  ConfigError,
};

std::string_view errc_name(Errc code) noexcept;

/// The finite model was too small for the requested construction
/// (truncation, dimension or stabilization ran out). Not a math failure.
bool is_model_limit(Errc code) noexcept;

/// A proven inequality failed on computed data.
bool is_hard_failure(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace seqlab
