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
#include <optional>
#include <vector>

#include "qnlp/qsim/circuit.h"
#include "qnlp/qsim/state_vector.h"

namespace qnlp::qsim {

/// Below this success probability a postselection is treated as degenerate.
inline constexpr double kDegenerateThreshold = 1e-12;

/// In-place application with an already resolved angle (ignored for H/CNOT).
void apply_gate_inplace(StateVector& state, GateKind kind,
                        std::span<const int> qubits, double angle);

void apply_gate_inplace(StateVector& state, const Gate& gate,
                        const ParamStore& params);

StateVector apply_gate(StateVector state, const Gate& gate,
                       const ParamStore& params);

/// Runs from |0...0>.
StateVector run_circuit(const Circuit& circuit, const ParamStore& params);

StateVector run_circuit(const Circuit& circuit, const ParamStore& params,
                        StateVector initial);

/// <Z> on one qubit: P(qubit = 0) - P(qubit = 1).
double expectation_z(const StateVector& state, int qubit);

/// <Z_q> for every qubit q, in one pass.
std::vector<double> expectation_z_all(const StateVector& state);

/// Required bit per qubit.
using PostselectPattern = std::map<int, int>;

struct PostselectResult {
  double success_prob = 0.0;
  /// Renormalized state over the unconstrained qubits (ascending original
  /// order); empty when the postselection is degenerate.
  std::optional<StateVector> conditional;

  bool degenerate() const { return !conditional.has_value(); }
};

PostselectResult postselect(const StateVector& state,
                            const PostselectPattern& pattern);

}  // namespace qnlp::qsim
