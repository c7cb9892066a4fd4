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

#include "qnlp/train/adam.h"

#include <cmath>
#include <string>

#include "qnlp/error.h"

namespace qnlp::train {

void adam_step(AdamState& state, std::span<double> params, std::span<const double> grads,
               double lr) {
  const std::size_t n = params.size();
  if (grads.size() != n || state.m.size() != n || state.v.size() != n) {
    fail(ErrorCode::kDimensionMismatch, "Adam state, parameters and gradients differ in size");
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::isfinite(grads[k])) {
      fail(ErrorCode::kNonFiniteGradient, "gradient entry " + std::to_string(k) + " is not finite");
    }
  }
  ++state.t;
  const double c1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.t));
  const double c2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.t));
  for (std::size_t k = 0; k < n; ++k) {
    state.m[k] = state.beta1 * state.m[k] + (1.0 - state.beta1) * grads[k];
    state.v[k] = state.beta2 * state.v[k] + (1.0 - state.beta2) * grads[k] * grads[k];
    const double m_hat = state.m[k] / c1;
    const double v_hat = state.v[k] / c2;
    params[k] -= lr * m_hat / (std::sqrt(v_hat) + state.eps);
  }
}

}  // namespace qnlp::train
