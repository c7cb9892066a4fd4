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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qnlp/qlstm/layers.h"
#include "qnlp/qlstm/qnn.h"

namespace qnlp::qlstm {

struct QlstmConfig {
  std::size_t vocab_size = 1;
  int embed_dim = 5;
  int hidden = 4;
  int n_classes = 3;
  QnnConfig qnn;
  /// Use y_t = h_t instead of a sixth network; requires hidden == n_classes.
  bool collapse_output = false;

  /// Throws InvalidConfig.
  void validate() const;
  int n_networks() const { return collapse_output ? 5 : 6; }
  bool operator==(const QlstmConfig&) const = default;
};

struct CellState {
  std::vector<double> c;
  std::vector<double> h;
};

/// Forced gate activations for tests; each set vector must have length H.
struct GateOverride {
  std::optional<std::vector<double>> f, i, g, o;
};

/// Intermediate values of one cell step.
struct StepTrace {
  std::vector<double> v, u;
  std::array<QnnJacobian, 6> qnn;  // qnn[k].out only unless gradients were requested
  std::vector<double> f, i, g, o;
  std::vector<double> c_prev, c, m, w;
  std::vector<double> h, y;
};

class Qlstm {
 public:
  /// Embedding, projections and angles drawn from `seed`.
  Qlstm(QlstmConfig config, std::uint64_t seed);
  /// Parameters supplied explicitly (e.g. from a checkpoint).
  Qlstm(QlstmConfig config, std::vector<double> theta);

  const QlstmConfig& config() const { return config_; }
  std::span<double> parameters() { return theta_; }
  std::span<const double> parameters() const { return theta_; }
  const Layout& layout() const { return layout_; }
  int num_classes() const { return config_.n_classes; }

  CellState zero_state() const;

  /// One step from `state` on input x (length E).
  StepTrace step(const CellState& state, std::span<const double> x,
                 const GateOverride* force = nullptr) const;

  /// Embeds ids and returns y_T. Throws EmptySequence, UnknownToken.
  std::vector<double> logits(std::span<const int> ids) const;

  /// Categorical cross entropy of the logits; adds d loss / d theta into grad.
  double loss_and_grad(std::span<const int> ids, int label, std::span<double> grad) const;

  nlohmann::json to_json() const;
  static Qlstm from_json(const nlohmann::json& j);

 private:
  void build_layout();
  StepTrace run_step(const CellState& state, std::span<const double> x, bool with_jacobian,
                     const GateOverride* force) const;
  std::span<const double> angles(int network) const;
  std::span<const double> embedding(int id) const;
  void check_ids(std::span<const int> ids) const;

  QlstmConfig config_;
  Layout layout_;
  Block embedding_;
  Linear w_in_, w_m_;
  std::array<Linear, 6> proj_{};
  std::array<Block, 6> angles_{};
  std::vector<double> theta_;
};

nlohmann::json to_json(const QlstmConfig& c);
QlstmConfig qlstm_config_from_json(const nlohmann::json& j);

}  // namespace qnlp::qlstm
