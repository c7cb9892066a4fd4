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
#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qnlp/qlstm/layers.h"
#include "qnlp/rng.h"

namespace qnlp::qlstm {

struct LstmConfig {
  std::size_t vocab_size = 1;
  int embed_dim = 5;
  int hidden = 16;
  int fc = 8;
  int n_classes = 3;
  double dropout = 0.0;

  /// Throws InvalidConfig.
  void validate() const;
  bool operator==(const LstmConfig&) const = default;
};

/// Embedding -> one LSTM layer -> fully connected + ReLU -> dropout -> linear
/// readout of the final hidden state.
class Lstm {
 public:
  Lstm(LstmConfig config, std::uint64_t seed);
  Lstm(LstmConfig config, std::vector<double> theta);

  const LstmConfig& config() const { return config_; }
  std::span<double> parameters() { return theta_; }
  std::span<const double> parameters() const { return theta_; }
  const Layout& layout() const { return layout_; }
  int num_classes() const { return config_.n_classes; }

  /// Evaluation mode when dropout_rng is null, training mode otherwise.
  /// Throws EmptySequence, UnknownToken.
  std::vector<double> logits(std::span<const int> ids, Rng* dropout_rng = nullptr) const;

  /// Categorical cross entropy; adds d loss / d theta into grad.
  double loss_and_grad(std::span<const int> ids, int label, std::span<double> grad,
                       Rng* dropout_rng = nullptr) const;

  nlohmann::json to_json() const;
  static Lstm from_json(const nlohmann::json& j);

 private:
  struct Trace;
  void build_layout();
  Trace forward(std::span<const int> ids, Rng* dropout_rng) const;

  LstmConfig config_;
  Layout layout_;
  Block embedding_;
  Linear gates_, fc_, out_;
  std::vector<double> theta_;
};

nlohmann::json to_json(const LstmConfig& c);
LstmConfig lstm_config_from_json(const nlohmann::json& j);

}  // namespace qnlp::qlstm
