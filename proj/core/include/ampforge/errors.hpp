#pragma once

#include <stdexcept>
#include <string>

namespace ampforge {

// Base class for all library errors. Negative scientific verdicts
// (infeasible, theorem not satisfied, ...) are results, not errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// state-core
struct DimensionMismatch : Error { using Error::Error; };
struct InvalidDim : Error { using Error::Error; };
struct TruncationTooSmall : Error { using Error::Error; };
struct NegativeVariance : Error { using Error::Error; };
struct EmptySet : Error { using Error::Error; };
struct InvalidState : Error { using Error::Error; };

// gram-feasibility
struct InvalidProbability : Error { using Error::Error; };
struct NTooLarge : Error { using Error::Error; };

// kraus-synthesis
struct LinearlyDependentSet : Error { using Error::Error; };
struct NotPSD : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };
struct ZeroGamma : Error { using Error::Error; };

// amplifier-classify
struct ZeroInputSignal : Error { using Error::Error; };
struct GainInconsistent : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };

// gaussian-phase
struct TruncationBoundary : Error { using Error::Error; };
struct SingularCovariance : Error { using Error::Error; };
struct UndefinedPhase : Error { using Error::Error; };
struct InvalidGain : Error { using Error::Error; };
struct TargetAmplitudeMismatch : Error { using Error::Error; };
struct DegenerateModel : Error { using Error::Error; };
struct InvalidParameters : Error { using Error::Error; };

// homodyne-metrology
struct DivergentSensitivity : Error { using Error::Error; };
struct ZeroSignal : Error { using Error::Error; };
struct InsufficientTrials : Error { using Error::Error; };

// noisy-channel
struct NegativeTime : Error { using Error::Error; };
struct UnsortedTimes : Error { using Error::Error; };
struct TooFewPoints : Error { using Error::Error; };
struct ThresholdUnreachable : Error { using Error::Error; };

// cli-io
struct ParseError : Error { using Error::Error; };
struct SchemaError : Error { using Error::Error; };
struct VersionUnsupported : Error { using Error::Error; };

}  // namespace ampforge
