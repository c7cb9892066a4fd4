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

#include <map>
#include <string>

#include "qnlp/discocat/compile.h"
#include "qnlp/qsim/circuit.h"

namespace qnlp::discocat {

struct SentimentResult {
  /// P(postselection succeeds).
  double success = 0.0;
  /// P(s qubit = 1 | postselection); 0.5 when degenerate.
  double p_positive = 0.5;
  bool degenerate = false;
};

/// Requires exactly one s qubit.
SentimentResult sentiment_prob(const CompiledSentence& compiled, const qsim::ParamStore& params);

struct SentimentGradient {
  SentimentResult forward;
  /// Binary cross entropy of the clamped p_positive (ln 2 when degenerate).
  double loss = 0.0;
  /// d loss / d theta for the sentence's own parameters; empty when degenerate.
  std::map<std::string, double> grad;
};

/// Loss and gradient for one labelled sentence. p = N(theta) / D(theta) with
/// N = P(postselect and s = 1), D = P(postselect); N and D are differentiated
/// by the qsim gradient engine and combined with the quotient rule.
SentimentGradient discocat_loss_and_grad(const CompiledSentence& compiled,
                                         const qsim::ParamStore& params, int label);

/// Gradient only, over the sentence's parameters.
std::map<std::string, double> discocat_grad(const CompiledSentence& compiled,
                                            const qsim::ParamStore& params, int label);

}  // namespace qnlp::discocat
