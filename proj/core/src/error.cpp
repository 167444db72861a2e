#include "latlab/error.hpp"

namespace latlab {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kSingularMatrix: return "SingularMatrix";
    case ErrorCode::kOutOfDomain: return "OutOfDomain";
    case ErrorCode::kNumericJetUnstable: return "NumericJetUnstable";
    case ErrorCode::kRankDeficient: return "RankDeficient";
    case ErrorCode::kIrrationalFrame: return "IrrationalFrame";
    case ErrorCode::kSingularJet: return "SingularJet";
    case ErrorCode::kNotUnimodular: return "NotUnimodular";
    case ErrorCode::kPrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::kDegenerateInput: return "DegenerateInput";
    case ErrorCode::kBadDimensions: return "BadDimensions";
    case ErrorCode::kJetDepthInsufficient: return "JetDepthInsufficient";
    case ErrorCode::kOnDegeneracyLocus: return "OnDegeneracyLocus";
    case ErrorCode::kEnumerationBudgetExceeded: return "EnumerationBudgetExceeded";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kConfigInvalid: return "ConfigInvalid";
    case ErrorCode::kIo: return "IoError";
  }
  return "UnknownError";
}

int exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfigInvalid: return 2;
    case ErrorCode::kIo: return 3;
    case ErrorCode::kInvalidArgument: return 4;
    case ErrorCode::kDimensionMismatch: return 10;
    case ErrorCode::kSingularMatrix: return 11;
    case ErrorCode::kOutOfDomain: return 12;
    case ErrorCode::kNumericJetUnstable: return 13;
    case ErrorCode::kRankDeficient: return 14;
    case ErrorCode::kIrrationalFrame: return 15;
    case ErrorCode::kSingularJet: return 16;
    case ErrorCode::kNotUnimodular: return 17;
    case ErrorCode::kPrecisionExhausted: return 18;
    case ErrorCode::kDegenerateInput: return 19;
    case ErrorCode::kBadDimensions: return 20;
    case ErrorCode::kJetDepthInsufficient: return 21;
    case ErrorCode::kOnDegeneracyLocus: return 22;
    case ErrorCode::kEnumerationBudgetExceeded: return 23;
    case ErrorCode::kBudgetExceeded: return 24;
  }
  return 1;
}

}  // namespace latlab
