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

#include <memory>
#include <span>
#include <vector>

#include "qnlp/data/dataset.h"
#include "qnlp/discocat/compile.h"
#include "qnlp/qlstm/lstm.h"
#include "qnlp/qlstm/qlstm.h"
#include "qnlp/qsim/circuit.h"
#include "qnlp/train/trainer.h"

namespace qnlp::train {

struct TokenExample {
  std::vector<int> ids;
  int label = 0;
};

std::vector<TokenExample> encode(const data::Dataset& dataset, const data::Vocab& vocab);

/// Argmax with ties to the lower class, plus categorical cross entropy.
Prediction predict_from_logits(std::span<const double> logits, int label);

class LstmModel {
 public:
  using Example = TokenExample;
  explicit LstmModel(qlstm::Lstm net) : net_(std::move(net)) {}

  std::span<double> parameters() { return net_.parameters(); }
  int num_classes() const { return net_.num_classes(); }
  Prediction evaluate(const Example& ex) const;
  double accumulate_gradient(const Example& ex, std::span<double> grad, Rng& rng) const;
  const qlstm::Lstm& net() const { return net_; }

 private:
  qlstm::Lstm net_;
};

class QlstmModel {
 public:
  using Example = TokenExample;
  explicit QlstmModel(qlstm::Qlstm net) : net_(std::move(net)) {}

  std::span<double> parameters() { return net_.parameters(); }
  int num_classes() const { return net_.num_classes(); }
  Prediction evaluate(const Example& ex) const;
  double accumulate_gradient(const Example& ex, std::span<double> grad, Rng& rng) const;
  const qlstm::Qlstm& net() const { return net_; }

 private:
  qlstm::Qlstm net_;
};

struct CircuitExample {
  std::shared_ptr<const discocat::CompiledSentence> circuit;
  int label = 0;
};

/// Binary sentiment from postselected sentence circuits. A degenerate
/// postselection scores p = 0.5 and is counted as a wrong prediction.
class DiscocatModel {
 public:
  using Example = CircuitExample;
  explicit DiscocatModel(qsim::ParamStore params) : params_(std::move(params)) {}

  std::span<double> parameters() { return params_.values(); }
  int num_classes() const { return 2; }
  Prediction evaluate(const Example& ex) const;
  double accumulate_gradient(const Example& ex, std::span<double> grad, Rng& rng) const;
  const qsim::ParamStore& params() const { return params_; }

 private:
  qsim::ParamStore params_;
};

static_assert(Trainable<LstmModel>);
static_assert(Trainable<QlstmModel>);
static_assert(Trainable<DiscocatModel>);

}  // namespace qnlp::train
