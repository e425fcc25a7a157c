#pragma once

#include <stdexcept>
#include <string>

namespace eonbam {

/// Base of every exception thrown by the simulator.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define EONBAM_DEFINE_ERROR(Name)          \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

// topology
EONBAM_DEFINE_ERROR(UnknownNode);
EONBAM_DEFINE_ERROR(NoSuchLink);
EONBAM_DEFINE_ERROR(DuplicateLink);
// spectrum
EONBAM_DEFINE_ERROR(CapacityMismatch);
EONBAM_DEFINE_ERROR(SlotConflict);
EONBAM_DEFINE_ERROR(SlotNotOccupied);
// bam
EONBAM_DEFINE_ERROR(UnknownClass);
EONBAM_DEFINE_ERROR(PreconditionViolated);
EONBAM_DEFINE_ERROR(LedgerUnderflow);
// traffic
EONBAM_DEFINE_ERROR(UnknownScenario);
// engine
EONBAM_DEFINE_ERROR(UnknownLightpath);
EONBAM_DEFINE_ERROR(AuditFailure);
// metrics
EONBAM_DEFINE_ERROR(NegativeInterval);
EONBAM_DEFINE_ERROR(GridMismatch);
// config
EONBAM_DEFINE_ERROR(ValidationError);

#undef EONBAM_DEFINE_ERROR

/// Malformed config text. Carries the offending line and field.
class ParseError : public Error {
 public:
  ParseError(int line, std::string field, const std::string& what)
      : Error("line " + std::to_string(line) + ", field '" + field + "': " + what),
        line_(line),
        field_(std::move(field)) {}

  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

}  // namespace eonbam
