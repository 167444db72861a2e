#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace latlab {

// Every failure the library reports carries one of these codes. The CLI maps
// them one-to-one onto process exit codes (see docs/exit_codes.md).
enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kSingularMatrix,
  kOutOfDomain,
  kNumericJetUnstable,
  kRankDeficient,
  kIrrationalFrame,
  kSingularJet,
  kNotUnimodular,
  kPrecisionExhausted,
  kDegenerateInput,
  kBadDimensions,
  kJetDepthInsufficient,
  kOnDegeneracyLocus,
  kEnumerationBudgetExceeded,
  kBudgetExceeded,
  kConfigInvalid,
  kIo,
};

std::string_view error_name(ErrorCode code);

// Distinct nonzero exit status per code; 0 and 1 are reserved for success and
// "ran but a check failed".
int exit_status(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace latlab
