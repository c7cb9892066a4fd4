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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qnlp {

/// Machine-readable failure category. The CLI maps these onto exit codes.
enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kInvalidTarget,
  kUnresolvedParam,
  kDegeneratePostselection,
  kSyntaxError,
  kUnknownWord,
  kNotASentence,
  kMissingAnsatz,
  kInvalidLabel,
  kTooSmall,
  kEmptySplit,
  kEmptySequence,
  kUnknownToken,
  kNonFiniteGradient,
  kIoError,
  kAllRecordsInvalid,
  kEmptyDataset,
  kInvalidConfig,
  kNetworkError,
  kAuthError,
  kNoParsableLines,
  kFormatError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace qnlp
