#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace hiercast {

// Base for every error the library raises. `module` names the component the
// failure belongs to so the CLI can report it with context.
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& message)
      : std::runtime_error(module + ": " + message), module_(std::move(module)) {}

  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

#define HIERCAST_ERROR_KIND(Name) \
  class Name : public Error {     \
   public:                        \
    using Error::Error;           \
  };

HIERCAST_ERROR_KIND(SchemaError)        // missing/unexpected column or header
HIERCAST_ERROR_KIND(ValueError)         // bad cell value, message carries coordinates
HIERCAST_ERROR_KIND(DuplicateKeyError)  // repeated (item, store) row
HIERCAST_ERROR_KIND(ContinuityError)    // calendar gap, duplicate or index mismatch
HIERCAST_ERROR_KIND(ConfigError)        // invalid parameter or unknown config key
HIERCAST_ERROR_KIND(DataError)          // non-finite or empty training data
HIERCAST_ERROR_KIND(ShapeError)         // dimension mismatch between model and input
HIERCAST_ERROR_KIND(DomainError)        // argument outside the mathematical domain
HIERCAST_ERROR_KIND(LengthError)        // series too short for the operation
HIERCAST_ERROR_KIND(CoverageError)      // forecasts missing for hierarchy keys
HIERCAST_ERROR_KIND(NumericalError)     // solver breakdown (singular system)
HIERCAST_ERROR_KIND(IoError)

#undef HIERCAST_ERROR_KIND

}  // namespace hiercast
