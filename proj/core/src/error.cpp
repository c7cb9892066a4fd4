// Copyright 2026 The qnlp-finance Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qnlp/error.h"

namespace qnlp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInvalidTarget: return "InvalidTarget";
    case ErrorCode::kUnresolvedParam: return "UnresolvedParam";
    case ErrorCode::kDegeneratePostselection: return "DegeneratePostselection";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kUnknownWord: return "UnknownWord";
    case ErrorCode::kNotASentence: return "NotASentence";
    case ErrorCode::kMissingAnsatz: return "MissingAnsatz";
    case ErrorCode::kInvalidLabel: return "InvalidLabel";
    case ErrorCode::kTooSmall: return "TooSmall";
    case ErrorCode::kEmptySplit: return "EmptySplit";
    case ErrorCode::kEmptySequence: return "EmptySequence";
    case ErrorCode::kUnknownToken: return "UnknownToken";
    case ErrorCode::kNonFiniteGradient: return "NonFiniteGradient";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kAllRecordsInvalid: return "AllRecordsInvalid";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kNetworkError: return "NetworkError";
    case ErrorCode::kAuthError: return "AuthError";
    case ErrorCode::kNoParsableLines: return "NoParsableLines";
    case ErrorCode::kFormatError: return "FormatError";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, std::string(to_string(code)) + ": " + message);
}

}  // namespace qnlp
