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

#include "qnlp/train/models.h"

#include "qnlp/discocat/sentiment.h"
#include "qnlp/error.h"
#include "qnlp/train/loss.h"

namespace qnlp::train {

std::vector<TokenExample> encode(const data::Dataset& dataset, const data::Vocab& vocab) {
  std::vector<TokenExample> out;
  out.reserve(dataset.size());
  for (const auto& s : dataset.sentences) out.push_back({vocab.encode(s.tokens), s.label});
  return out;
}

Prediction predict_from_logits(std::span<const double> logits, int label) {
  Prediction p;
  p.loss = categorical_cross_entropy(logits, label);
  for (std::size_t k = 1; k < logits.size(); ++k) {
    if (logits[k] > logits[static_cast<std::size_t>(p.predicted)]) p.predicted = static_cast<int>(k);
  }
  return p;
}

Prediction LstmModel::evaluate(const Example& ex) const {
  return predict_from_logits(net_.logits(ex.ids), ex.label);
}

double LstmModel::accumulate_gradient(const Example& ex, std::span<double> grad, Rng& rng) const {
  return net_.loss_and_grad(ex.ids, ex.label, grad, &rng);
}

Prediction QlstmModel::evaluate(const Example& ex) const {
  return predict_from_logits(net_.logits(ex.ids), ex.label);
}

double QlstmModel::accumulate_gradient(const Example& ex, std::span<double> grad, Rng&) const {
  return net_.loss_and_grad(ex.ids, ex.label, grad);
}

Prediction DiscocatModel::evaluate(const Example& ex) const {
  const auto r = discocat::sentiment_prob(*ex.circuit, params_);
  Prediction p;
  p.loss = binary_cross_entropy(r.p_positive, ex.label);
  if (r.degenerate) {
    p.degenerate = true;
    p.predicted = 1 - ex.label;
  } else {
    p.predicted = r.p_positive >= 0.5 ? 1 : 0;
  }
  return p;
}

double DiscocatModel::accumulate_gradient(const Example& ex, std::span<double> grad, Rng&) const {
  const auto g = discocat::discocat_loss_and_grad(*ex.circuit, params_, ex.label);
  for (const auto& [name, value] : g.grad) {
    const auto idx = params_.index_of(name);
    if (!idx) fail(ErrorCode::kUnresolvedParam, "no parameter named " + name);
    grad[*idx] += value;
  }
  return g.loss;
}

}  // namespace qnlp::train
