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

#include "qnlp/qsim/gradient.h"

#include <algorithm>
#include <numeric>

#include "qnlp/error.h"
#include "qnlp/qsim/simulator.h"

namespace qnlp::qsim {

namespace {

std::vector<double> resolve_angles(const Circuit& circuit, const ParamStore& params) {
  std::vector<double> angles(circuit.gates.size(), 0.0);
  for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
    const Gate& gate = circuit.gates[g];
    if (is_parameterized(gate.kind) && gate.param) angles[g] = params.resolve(*gate.param);
  }
  return angles;
}

/// Applies gates [from, end) to state, with angles taken from `angles`.
void run_tail(const Circuit& circuit, const std::vector<double>& angles, std::size_t from,
              StateVector& state) {
  for (std::size_t g = from; g < circuit.gates.size(); ++g) {
    const Gate& gate = circuit.gates[g];
    apply_gate_inplace(state, gate.kind, gate.qubits(), angles[g]);
  }
}

}  // namespace

std::vector<std::vector<double>> gate_jacobian(const Circuit& circuit, const ParamStore& params,
                                               std::span<const std::size_t> gate_indices,
                                               const VectorFn& readout) {
  circuit.validate();
  const std::vector<double> angles = resolve_angles(circuit, params);

  std::vector<std::size_t> order(gate_indices.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return gate_indices[a] < gate_indices[b]; });

  std::vector<std::vector<double>> rows(gate_indices.size());
  // `prefix` is the state just before gate `next_gate`.
  StateVector prefix(circuit.n_qubits);
  std::size_t next_gate = 0;
  for (std::size_t r : order) {
    const std::size_t g = gate_indices[r];
    if (g >= circuit.gates.size()) {
      fail(ErrorCode::kInvalidArgument, "gate index " + std::to_string(g) + " out of range");
    }
    const Gate& gate = circuit.gates[g];
    if (!is_parameterized(gate.kind)) {
      fail(ErrorCode::kInvalidArgument,
           "gate " + std::to_string(g) + " (" + std::string(to_string(gate.kind)) +
               ") has no angle to differentiate");
    }
    for (; next_gate < g; ++next_gate) {
      const Gate& pg = circuit.gates[next_gate];
      apply_gate_inplace(prefix, pg.kind, pg.qubits(), angles[next_gate]);
    }

    const bool finite_difference = gate.kind == GateKind::kCRZ;
    const double shift = finite_difference ? kCrzFiniteDifferenceStep : kParamShift;
    const double scale = finite_difference ? 1.0 / (2.0 * kCrzFiniteDifferenceStep) : 0.5;

    auto evaluate = [&](double delta) {
      StateVector s = prefix;
      apply_gate_inplace(s, gate.kind, gate.qubits(), angles[g] + delta);
      run_tail(circuit, angles, g + 1, s);
      return readout(s);
    };
    std::vector<double> plus = evaluate(shift);
    std::vector<double> minus = evaluate(-shift);
    if (plus.size() != minus.size()) {
      fail(ErrorCode::kDimensionMismatch, "readout size changed between evaluations");
    }
    for (std::size_t k = 0; k < plus.size(); ++k) plus[k] = scale * (plus[k] - minus[k]);
    rows[r] = std::move(plus);
  }
  return rows;
}

std::map<std::string, std::vector<double>> param_shift_jacobian(const Circuit& circuit,
                                                                const ParamStore& params,
                                                                const VectorFn& readout) {
  std::vector<std::size_t> gates;
  std::vector<const std::string*> owners;
  for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
    const Gate& gate = circuit.gates[g];
    if (!gate.param) continue;
    if (const auto* sym = std::get_if<Symbol>(&*gate.param)) {
      params.get(sym->name);  // surfaces UnresolvedParam before any simulation
      gates.push_back(g);
      owners.push_back(&sym->name);
    }
  }
  auto rows = gate_jacobian(circuit, params, gates, readout);
  std::map<std::string, std::vector<double>> out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    auto& acc = out[*owners[r]];
    if (acc.empty()) {
      acc = std::move(rows[r]);
    } else {
      for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += rows[r][k];
    }
  }
  return out;
}

std::map<std::string, double> param_shift_grad(const Circuit& circuit, const ParamStore& params,
                                               const ScalarFn& scalar_fn) {
  auto jac = param_shift_jacobian(circuit, params, [&](const StateVector& s) {
    return std::vector<double>{scalar_fn(s)};
  });
  std::map<std::string, double> grad;
  for (const std::string& name : params.names()) grad[name] = 0.0;
  for (auto& [name, row] : jac) grad[name] = row.front();
  return grad;
}

}  // namespace qnlp::qsim
