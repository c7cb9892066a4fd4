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

#include "qnlp/qlstm/qnn.h"

#include <cmath>
#include <numeric>

#include "qnlp/error.h"
#include "qnlp/qsim/gradient.h"
#include "qnlp/qsim/simulator.h"

namespace qnlp::qlstm {

namespace {

void check_sizes(const QnnConfig& config, std::span<const double> angles,
                 std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(config.n_qubits)) {
    fail(ErrorCode::kDimensionMismatch, "QNN input has " + std::to_string(x.size()) +
                                            " entries for " + std::to_string(config.n_qubits) +
                                            " qubits");
  }
  if (angles.size() != config.n_angles()) {
    fail(ErrorCode::kDimensionMismatch, "QNN expects " + std::to_string(config.n_angles()) +
                                            " angles, got " + std::to_string(angles.size()));
  }
}

std::size_t layer_stride(const QnnConfig& config) {
  return static_cast<std::size_t>(config.n_qubits) * (config.cnot_offsets.size() + 1);
}

}  // namespace

void QnnConfig::validate() const {
  if (n_qubits < 2) fail(ErrorCode::kInvalidConfig, "QNN needs at least 2 qubits");
  if (n_qubits > 20) fail(ErrorCode::kInvalidConfig, "QNN limited to 20 qubits");
  if (n_layers < 0) fail(ErrorCode::kInvalidConfig, "negative QNN layer count");
  for (int k : cnot_offsets) {
    if (((k % n_qubits) + n_qubits) % n_qubits == 0) {
      fail(ErrorCode::kInvalidConfig,
           "CNOT offset " + std::to_string(k) + " is 0 mod " + std::to_string(n_qubits));
    }
  }
}

qsim::Circuit qnn_circuit(const QnnConfig& config, std::span<const double> angles,
                          std::span<const double> x) {
  config.validate();
  check_sizes(config, angles, x);
  const int n = config.n_qubits;
  qsim::Circuit c;
  c.n_qubits = n;
  c.gates.reserve(static_cast<std::size_t>(3 * n) +
                  static_cast<std::size_t>(config.n_layers) * layer_stride(config));
  for (int q = 0; q < n; ++q) c.gates.push_back(qsim::Gate::h(q));
  for (int q = 0; q < n; ++q) {
    const double xi = x[static_cast<std::size_t>(q)];
    c.gates.push_back(qsim::Gate::ry(q, std::atan(xi)));
    c.gates.push_back(qsim::Gate::rz(q, std::atan(xi * xi)));
  }
  for (int l = 0; l < config.n_layers; ++l) {
    for (int k : config.cnot_offsets) {
      for (int q = 0; q < n; ++q) c.gates.push_back(qsim::Gate::cnot(q, ((q + k) % n + n) % n));
    }
    for (int q = 0; q < n; ++q) {
      c.gates.push_back(qsim::Gate::ry(q, angles[static_cast<std::size_t>(l * n + q)]));
    }
  }
  return c;
}

std::size_t qnn_trainable_gate(const QnnConfig& config, int layer, int qubit) {
  const auto n = static_cast<std::size_t>(config.n_qubits);
  const std::size_t stride = layer_stride(config);
  return 3 * n + static_cast<std::size_t>(layer) * stride + n * config.cnot_offsets.size() +
         static_cast<std::size_t>(qubit);
}

std::vector<double> qnn_forward(const QnnConfig& config, std::span<const double> angles,
                                std::span<const double> x) {
  const qsim::Circuit c = qnn_circuit(config, angles, x);
  return qsim::expectation_z_all(qsim::run_circuit(c, qsim::ParamStore{}));
}

QnnJacobian qnn_jacobian(const QnnConfig& config, std::span<const double> angles,
                         std::span<const double> x) {
  const qsim::Circuit c = qnn_circuit(config, angles, x);
  const qsim::ParamStore none;
  const auto n = static_cast<std::size_t>(config.n_qubits);

  // Encoding gates first (RY_i, RZ_i interleaved), then trainable RYs.
  std::vector<std::size_t> gates;
  gates.reserve(2 * n + config.n_angles());
  for (std::size_t q = 0; q < n; ++q) {
    gates.push_back(n + 2 * q);
    gates.push_back(n + 2 * q + 1);
  }
  for (int l = 0; l < config.n_layers; ++l) {
    for (int q = 0; q < config.n_qubits; ++q) gates.push_back(qnn_trainable_gate(config, l, q));
  }
  const auto rows = qsim::gate_jacobian(c, none, gates, [](const qsim::StateVector& s) {
    return qsim::expectation_z_all(s);
  });

  QnnJacobian out;
  out.out = qsim::expectation_z_all(qsim::run_circuit(c, none));
  out.d_input.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    const double d_ry = 1.0 / (1.0 + xi * xi);
    const double d_rz = 2.0 * xi / (1.0 + xi * xi * xi * xi);
    for (std::size_t j = 0; j < n; ++j) {
      out.d_input[i * n + j] = rows[2 * i][j] * d_ry + rows[2 * i + 1][j] * d_rz;
    }
  }
  out.d_angles.assign(config.n_angles() * n, 0.0);
  for (std::size_t a = 0; a < config.n_angles(); ++a) {
    for (std::size_t j = 0; j < n; ++j) out.d_angles[a * n + j] = rows[2 * n + a][j];
  }
  return out;
}

}  // namespace qnlp::qlstm
