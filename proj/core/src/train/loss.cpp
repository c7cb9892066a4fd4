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

#include "qnlp/train/loss.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "qnlp/error.h"

namespace qnlp::train {

namespace {

void check_binary(int label) {
  if (label != 0 && label != 1) {
    fail(ErrorCode::kInvalidLabel, "binary label must be 0 or 1, got " + std::to_string(label));
  }
}

void check_class(std::span<const double> logits, int label) {
  if (logits.empty()) fail(ErrorCode::kDimensionMismatch, "empty logits");
  if (label < 0 || static_cast<std::size_t>(label) >= logits.size()) {
    fail(ErrorCode::kInvalidLabel, "label " + std::to_string(label) + " outside " +
                                       std::to_string(logits.size()) + " classes");
  }
}

}  // namespace

double clamp_probability(double p) {
  return std::clamp(p, kProbabilityClamp, 1.0 - kProbabilityClamp);
}

double binary_cross_entropy(double p, int label) {
  check_binary(label);
  const double q = clamp_probability(p);
  return label == 1 ? -std::log(q) : -std::log1p(-q);
}

double binary_cross_entropy_grad(double p, int label) {
  check_binary(label);
  if (p < kProbabilityClamp || p > 1.0 - kProbabilityClamp) return 0.0;
  return label == 1 ? -1.0 / p : 1.0 / (1.0 - p);
}

std::vector<double> softmax(std::span<const double> logits) {
  const double top = *std::max_element(logits.begin(), logits.end());
  std::vector<double> out(logits.size());
  double total = 0.0;
  for (std::size_t k = 0; k < logits.size(); ++k) {
    out[k] = std::exp(logits[k] - top);
    total += out[k];
  }
  for (double& v : out) v /= total;
  return out;
}

double categorical_cross_entropy(std::span<const double> logits, int label) {
  check_class(logits, label);
  const double top = *std::max_element(logits.begin(), logits.end());
  double total = 0.0;
  for (double z : logits) total += std::exp(z - top);
  return top + std::log(total) - logits[static_cast<std::size_t>(label)];
}

std::vector<double> categorical_cross_entropy_grad(std::span<const double> logits, int label) {
  check_class(logits, label);
  std::vector<double> g = softmax(logits);
  g[static_cast<std::size_t>(label)] -= 1.0;
  return g;
}

}  // namespace qnlp::train
