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

#include "qnlp/discocat/sentiment.h"

#include <algorithm>
#include <cmath>

#include "qnlp/error.h"
#include "qnlp/qsim/gradient.h"
#include "qnlp/qsim/simulator.h"
#include "qnlp/train/loss.h"

namespace qnlp::discocat {

namespace {

struct Masks {
  std::size_t care = 0;
  std::size_t want = 0;
  std::size_t s_bit = 0;
};

Masks masks_for(const CompiledSentence& compiled) {
  if (compiled.s_qubits.size() != 1) {
    fail(ErrorCode::kInvalidArgument,
         "sentiment readout needs exactly one s qubit, got " +
             std::to_string(compiled.s_qubits.size()));
  }
  Masks m;
  for (const auto& [q, bit] : compiled.postselect) {
    m.care |= std::size_t{1} << q;
    if (bit) m.want |= std::size_t{1} << q;
  }
  m.s_bit = std::size_t{1} << compiled.s_qubits[0];
  if (m.care & m.s_bit) fail(ErrorCode::kInvalidArgument, "s qubit is postselected");
  return m;
}

/// (N, D): joint probability of success and s = 1, and success probability.
std::vector<double> joint_and_success(const qsim::StateVector& state, const Masks& m) {
  double joint = 0.0;
  double success = 0.0;
  auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & m.care) != m.want) continue;
    const double p = std::norm(amps[i]);
    success += p;
    if (i & m.s_bit) joint += p;
  }
  return {joint, success};
}

SentimentResult from_counts(double joint, double success) {
  SentimentResult r;
  r.success = success;
  if (success < qsim::kDegenerateThreshold) {
    r.degenerate = true;
    r.p_positive = 0.5;
  } else {
    r.p_positive = std::clamp(joint / success, 0.0, 1.0);
  }
  return r;
}

}  // namespace

SentimentResult sentiment_prob(const CompiledSentence& compiled, const qsim::ParamStore& params) {
  const Masks m = masks_for(compiled);
  const auto state = qsim::run_circuit(compiled.circuit, params);
  const auto counts = joint_and_success(state, m);
  return from_counts(counts[0], counts[1]);
}

SentimentGradient discocat_loss_and_grad(const CompiledSentence& compiled,
                                         const qsim::ParamStore& params, int label) {
  const Masks m = masks_for(compiled);
  const auto state = qsim::run_circuit(compiled.circuit, params);
  const auto counts = joint_and_success(state, m);
  SentimentGradient out;
  out.forward = from_counts(counts[0], counts[1]);
  out.loss = train::binary_cross_entropy(out.forward.p_positive, label);
  if (out.forward.degenerate) return out;

  const double joint = counts[0];
  const double success = counts[1];
  const double p = joint / success;
  const double dloss_dp = train::binary_cross_entropy_grad(p, label);
  auto jac = qsim::param_shift_jacobian(compiled.circuit, params, [&](const qsim::StateVector& s) {
    return joint_and_success(s, m);
  });
  for (auto& [name, row] : jac) {
    const double dp = (row[0] * success - joint * row[1]) / (success * success);
    out.grad[name] = dloss_dp * dp;
  }
  return out;
}

std::map<std::string, double> discocat_grad(const CompiledSentence& compiled,
                                            const qsim::ParamStore& params, int label) {
  auto g = discocat_loss_and_grad(compiled, params, label);
  for (const auto& name : compiled.param_names) g.grad.try_emplace(name, 0.0);
  return g.grad;
}

}  // namespace qnlp::discocat
