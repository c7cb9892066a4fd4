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

#include "qnlp/qsim/simulator.h"

#include <bit>
#include <cmath>
#include <numbers>
#include <set>

#include "qnlp/error.h"

namespace qnlp::qsim {

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 0 || n_qubits > 30) {
    fail(ErrorCode::kInvalidArgument, "unsupported qubit count " + std::to_string(n_qubits));
  }
  amps_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
  if (amplitudes.empty() || !std::has_single_bit(amplitudes.size())) {
    fail(ErrorCode::kDimensionMismatch,
         "amplitude count " + std::to_string(amplitudes.size()) + " is not a power of two");
  }
  StateVector s(0);
  s.n_qubits_ = std::countr_zero(amplitudes.size());
  s.amps_ = std::move(amplitudes);
  return s;
}

StateVector StateVector::basis(int n_qubits, std::size_t index) {
  StateVector s(n_qubits);
  if (index >= s.size()) fail(ErrorCode::kInvalidArgument, "basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

double StateVector::norm_squared() const {
  double total = 0.0;
  for (const Complex& a : amps_) total += std::norm(a);
  return total;
}

namespace {

void check_qubit(const StateVector& state, int q) {
  if (q < 0 || q >= state.n_qubits()) {
    fail(ErrorCode::kInvalidTarget, "qubit " + std::to_string(q) + " outside a " +
                                        std::to_string(state.n_qubits()) + "-qubit state");
  }
}

void apply_1q(std::span<Complex> amps, int q, Complex u00, Complex u01, Complex u10,
              Complex u11) {
  const std::size_t stride = std::size_t{1} << q;
  const std::size_t n = amps.size();
  for (std::size_t base = 0; base < n; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const Complex a0 = amps[i];
      const Complex a1 = amps[i + stride];
      amps[i] = u00 * a0 + u01 * a1;
      amps[i + stride] = u10 * a0 + u11 * a1;
    }
  }
}

void apply_diag_1q(std::span<Complex> amps, int q, Complex d0, Complex d1) {
  const std::size_t mask = std::size_t{1} << q;
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] *= (i & mask) ? d1 : d0;
}

}  // namespace

void apply_gate_inplace(StateVector& state, GateKind kind, std::span<const int> qubits,
                        double angle) {
  if (qubits.size() != static_cast<std::size_t>(arity(kind))) {
    fail(ErrorCode::kInvalidTarget, "wrong number of targets for " + std::string(to_string(kind)));
  }
  for (int q : qubits) check_qubit(state, q);
  if (qubits.size() == 2 && qubits[0] == qubits[1]) {
    fail(ErrorCode::kInvalidTarget, "control and target coincide");
  }
  auto amps = state.amplitudes();
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  switch (kind) {
    case GateKind::kH: {
      const double r = std::numbers::sqrt2 / 2.0;
      apply_1q(amps, qubits[0], r, r, r, -r);
      break;
    }
    case GateKind::kRX:
      apply_1q(amps, qubits[0], c, Complex(0, -s), Complex(0, -s), c);
      break;
    case GateKind::kRY:
      apply_1q(amps, qubits[0], c, -s, s, c);
      break;
    case GateKind::kRZ:
      apply_diag_1q(amps, qubits[0], Complex(c, -s), Complex(c, s));
      break;
    case GateKind::kCNOT: {
      const std::size_t cm = std::size_t{1} << qubits[0];
      const std::size_t tm = std::size_t{1} << qubits[1];
      for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & cm) && !(i & tm)) std::swap(amps[i], amps[i | tm]);
      }
      break;
    }
    case GateKind::kCRZ: {
      const std::size_t both = (std::size_t{1} << qubits[0]) | (std::size_t{1} << qubits[1]);
      const Complex phase = std::polar(1.0, angle);
      for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & both) == both) amps[i] *= phase;
      }
      break;
    }
  }
}

void apply_gate_inplace(StateVector& state, const Gate& gate, const ParamStore& params) {
  double angle = 0.0;
  if (is_parameterized(gate.kind)) {
    if (!gate.param) {
      fail(ErrorCode::kInvalidArgument,
           std::string(to_string(gate.kind)) + " gate without a parameter");
    }
    angle = params.resolve(*gate.param);
  }
  apply_gate_inplace(state, gate.kind, gate.qubits(), angle);
}

StateVector apply_gate(StateVector state, const Gate& gate, const ParamStore& params) {
  apply_gate_inplace(state, gate, params);
  return state;
}

StateVector run_circuit(const Circuit& circuit, const ParamStore& params) {
  return run_circuit(circuit, params, StateVector(circuit.n_qubits));
}

StateVector run_circuit(const Circuit& circuit, const ParamStore& params,
                        StateVector initial) {
  if (initial.n_qubits() != circuit.n_qubits) {
    fail(ErrorCode::kDimensionMismatch,
         "initial state has " + std::to_string(initial.n_qubits()) + " qubits, circuit has " +
             std::to_string(circuit.n_qubits));
  }
  for (const Gate& gate : circuit.gates) apply_gate_inplace(initial, gate, params);
  return initial;
}

double expectation_z(const StateVector& state, int qubit) {
  check_qubit(state, qubit);
  const std::size_t mask = std::size_t{1} << qubit;
  double p0 = 0.0;
  double p1 = 0.0;
  auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    ((i & mask) ? p1 : p0) += std::norm(amps[i]);
  }
  return p0 - p1;
}

std::vector<double> expectation_z_all(const StateVector& state) {
  std::vector<double> out(static_cast<std::size_t>(state.n_qubits()), 0.0);
  auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps[i]);
    for (std::size_t q = 0; q < out.size(); ++q) out[q] += ((i >> q) & 1) ? -p : p;
  }
  return out;
}

PostselectResult postselect(const StateVector& state, const PostselectPattern& pattern) {
  std::size_t care = 0;
  std::size_t want = 0;
  for (const auto& [q, bit] : pattern) {
    check_qubit(state, q);
    if (bit != 0 && bit != 1) {
      fail(ErrorCode::kInvalidArgument, "postselected bit must be 0 or 1");
    }
    care |= std::size_t{1} << q;
    if (bit) want |= std::size_t{1} << q;
  }
  std::vector<int> free_qubits;
  for (int q = 0; q < state.n_qubits(); ++q) {
    if (!pattern.contains(q)) free_qubits.push_back(q);
  }

  auto amps = state.amplitudes();
  std::vector<Complex> kept(std::size_t{1} << free_qubits.size());
  double success = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & care) != want) continue;
    std::size_t j = 0;
    for (std::size_t k = 0; k < free_qubits.size(); ++k) {
      j |= ((i >> free_qubits[k]) & 1) << k;
    }
    kept[j] = amps[i];
    success += std::norm(amps[i]);
  }

  PostselectResult result;
  result.success_prob = success;
  if (success < kDegenerateThreshold) return result;
  const double scale = 1.0 / std::sqrt(success);
  for (Complex& a : kept) a *= scale;
  result.conditional = StateVector::from_amplitudes(std::move(kept));
  return result;
}

}  // namespace qnlp::qsim
