#pragma once

#include <stdexcept>
#include <string>

namespace sl4 {

// Exit-code policy: invariant violations -> 2, resource exhaustion -> 3.

struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RankDeficient : InvariantError { using InvariantError::InvariantError; };
struct NotPrimitive : InvariantError { using InvariantError::InvariantError; };
struct DivisionByZero : InvariantError { using InvariantError::InvariantError; };
struct InvalidLevel : InvariantError { using InvariantError::InvariantError; };
struct InvalidGroup : InvariantError { using InvariantError::InvariantError; };
struct GenerationFailed : InvariantError { using InvariantError::InvariantError; };
struct ContractViolation : InvariantError { using InvariantError::InvariantError; };
struct InvalidFacet : InvariantError { using InvariantError::InvariantError; };
struct CorruptDatabase : InvariantError { using InvariantError::InvariantError; };
struct DataInconsistency : InvariantError { using InvariantError::InvariantError; };
struct ShapeError : InvariantError { using InvariantError::InvariantError; };
struct TooLarge : ResourceError { using ResourceError::ResourceError; };
struct InsufficientRuns : ResourceError { using ResourceError::ResourceError; };
struct TorsionDivisionFailure : InvariantError { using InvariantError::InvariantError; };
struct NotACocycle : InvariantError { using InvariantError::InvariantError; };
struct NotReduced : InvariantError { using InvariantError::InvariantError; };
struct StandardizationFailure : InvariantError { using InvariantError::InvariantError; };
struct ReductionTimeout : ResourceError { using ResourceError::ResourceError; };
struct BadPrime : InvariantError { using InvariantError::InvariantError; };
struct PipelineCorruption : InvariantError { using InvariantError::InvariantError; };

}  // namespace sl4
