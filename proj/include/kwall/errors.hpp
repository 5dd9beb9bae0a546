#pragma once

#include <stdexcept>
#include <string>

namespace kwall {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// malformed input: JSON, schema, rationals, unknown ids
struct InputError : Error {
  using Error::Error;
};

struct EngineError : Error {
  using Error::Error;
};

struct SingularSystem : EngineError {
  SingularSystem() : EngineError("singular linear system") {}
  using EngineError::EngineError;
};

struct LatticeMismatch : EngineError {
  LatticeMismatch() : EngineError("classes live on different lattices") {}
};

struct ConfigurationError : EngineError {
  using EngineError::EngineError;
};

struct NotPseudoEffective : EngineError {
  using EngineError::EngineError;
};

struct InconsistentMultiplicity : EngineError {
  using EngineError::EngineError;
};

struct DomainError : EngineError {
  using EngineError::EngineError;
};

}  // namespace kwall
