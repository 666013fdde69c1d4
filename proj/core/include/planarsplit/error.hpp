#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace planarsplit {

// Single error type for the whole library.  `code` drives CLI exit codes and
// lets tests assert on the precise failure class; `tag`/`witness` carry
// machine-readable detail for internal-invariant failures.
class Error : public std::runtime_error {
 public:
  enum class Code {
    kNotPlanar,
    kInconsistentRotation,
    kUnknownVertex,
    kNotOnFace,
    kAlreadyAdjacent,
    kBadParameter,
    kPreconditionViolated,
    kGirthTooSmall,
    kAssumptionViolated,
    kRuleDeadlock,
    kUncoloredVertex,
    kBudgetExceeded,
    kReconstructionUnavailable,
    kParseError,
    kIoError,
  };

  Error(Code code, std::string message)
      : std::runtime_error(message), code_(code), message_(std::move(message)) {}

  Error(Code code, std::string tag, std::string witness, std::string message)
      : std::runtime_error(message),
        code_(code),
        tag_(std::move(tag)),
        witness_(std::move(witness)),
        message_(std::move(message)) {}

  Code code() const { return code_; }
  const std::string& tag() const { return tag_; }
  const std::string& witness() const { return witness_; }
  const std::string& message() const { return message_; }

 private:
  Code code_;
  std::string tag_;
  std::string witness_;
  std::string message_;
};

inline Error assumption_violated(std::string tag, std::string witness) {
  std::string msg = "internal invariant failed [" + tag + "]";
  if (!witness.empty()) msg += ": " + witness;
  return Error(Error::Code::kAssumptionViolated, std::move(tag), std::move(witness), std::move(msg));
}

// Checks for conditions the algorithm's correctness argument guarantees.
// A failure is a bug (or an input outside the promised class), never a
// recoverable condition, so it throws rather than returning a status.
inline void require_assumption(bool ok, const char* tag, const std::string& witness) {
  if (!ok) throw assumption_violated(tag, witness);
}

inline void require_precondition(bool ok, const std::string& message) {
  if (!ok) throw Error(Error::Code::kPreconditionViolated, message);
}

inline void require_param(bool ok, const std::string& message) {
  if (!ok) throw Error(Error::Code::kBadParameter, message);
}

}  // namespace planarsplit
