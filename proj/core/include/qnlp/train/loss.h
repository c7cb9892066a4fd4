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

#include <span>
#include <vector>

namespace qnlp::train {

inline constexpr double kProbabilityClamp = 1e-7;

/// p clamped to [1e-7, 1 - 1e-7].
double clamp_probability(double p);

/// -[y ln p + (1 - y) ln(1 - p)] on the clamped p. y must be 0 or 1.
double binary_cross_entropy(double p, int label);

/// d BCE / d p; zero where the clamp is active.
double binary_cross_entropy_grad(double p, int label);

std::vector<double> softmax(std::span<const double> logits);

/// -ln softmax(logits)[label], computed with the log-sum-exp shift.
double categorical_cross_entropy(std::span<const double> logits, int label);

/// softmax(logits) - onehot(label).
std::vector<double> categorical_cross_entropy_grad(std::span<const double> logits, int label);

}  // namespace qnlp::train
