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

#include <cstddef>
#include <span>
#include <vector>

#include "qnlp/qsim/circuit.h"

namespace qnlp::qlstm {

/// Variational circuit used inside every QLSTM gate: H on all qubits, then
/// RY(arctan x_i) and RZ(arctan x_i^2) on qubit i, then per layer a ring of
/// CNOTs (i -> (i + k) mod n for each offset k) followed by a trainable RY on
/// every qubit. The output is <Z> on each qubit.
struct QnnConfig {
  int n_qubits = 4;
  int n_layers = 1;
  std::vector<int> cnot_offsets{1, 2};

  /// Throws InvalidConfig.
  void validate() const;
  std::size_t n_angles() const {
    return static_cast<std::size_t>(n_layers) * static_cast<std::size_t>(n_qubits);
  }
  bool operator==(const QnnConfig&) const = default;
};

/// Circuit with literal angles; angles holds n_layers blocks of n_qubits.
qsim::Circuit qnn_circuit(const QnnConfig& config, std::span<const double> angles,
                          std::span<const double> x);

/// Index of the trainable RY of (layer, qubit) within qnn_circuit().
std::size_t qnn_trainable_gate(const QnnConfig& config, int layer, int qubit);

/// Throws DimensionMismatch.
std::vector<double> qnn_forward(const QnnConfig& config, std::span<const double> angles,
                                std::span<const double> x);

struct QnnJacobian {
  std::vector<double> out;
  /// [i * Q + j] = d out_j / d x_i.
  std::vector<double> d_input;
  /// [a * Q + j] = d out_j / d angles_a.
  std::vector<double> d_angles;
};

/// Forward value plus derivatives. Gate derivatives come from the shift rule;
/// the input encoding is differentiated analytically.
QnnJacobian qnn_jacobian(const QnnConfig& config, std::span<const double> angles,
                         std::span<const double> x);

}  // namespace qnlp::qlstm
