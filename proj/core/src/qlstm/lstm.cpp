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

#include "qnlp/qlstm/lstm.h"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "qnlp/error.h"
#include "qnlp/train/loss.h"

namespace qnlp::qlstm {

struct Lstm::Trace {
  // Per step: v = [h_prev; x], gate activations (f, i, g, o stacked), c_prev, c.
  std::vector<std::vector<double>> v, act, c_prev, c;
  std::vector<double> h_last, fc_pre, fc_out, mask, logits;
};

void LstmConfig::validate() const {
  if (vocab_size < 1) fail(ErrorCode::kInvalidConfig, "vocabulary must contain UNK");
  if (embed_dim < 1 || hidden < 1 || fc < 1 || n_classes < 2) {
    fail(ErrorCode::kInvalidConfig, "LSTM dimensions must be positive with at least 2 classes");
  }
  if (!(dropout >= 0.0 && dropout < 1.0)) fail(ErrorCode::kInvalidConfig, "dropout must be in [0, 1)");
}

Lstm::Lstm(LstmConfig config, std::uint64_t seed) : config_(std::move(config)) {
  config_.validate();
  build_layout();
  theta_.assign(layout_.total(), 0.0);
  Rng rng(seed);
  for (std::size_t k = 0; k < embedding_.size; ++k) {
    theta_[embedding_.offset + k] = rng.uniform(-kEmbeddingInit, kEmbeddingInit);
  }
  gates_.init(theta_, rng);
  fc_.init(theta_, rng);
  out_.init(theta_, rng);
}

Lstm::Lstm(LstmConfig config, std::vector<double> theta) : config_(std::move(config)) {
  config_.validate();
  build_layout();
  if (theta.size() != layout_.total()) {
    fail(ErrorCode::kDimensionMismatch, "LSTM expects " + std::to_string(layout_.total()) +
                                            " parameters, got " + std::to_string(theta.size()));
  }
  theta_ = std::move(theta);
}

void Lstm::build_layout() {
  const auto e = static_cast<std::size_t>(config_.embed_dim);
  const auto h = static_cast<std::size_t>(config_.hidden);
  embedding_ = layout_.add("embedding", config_.vocab_size * e);
  gates_ = Linear::allocate(layout_, "gates", h + e, 4 * h);
  fc_ = Linear::allocate(layout_, "fc", h, static_cast<std::size_t>(config_.fc));
  out_ = Linear::allocate(layout_, "out", static_cast<std::size_t>(config_.fc),
                          static_cast<std::size_t>(config_.n_classes));
}

Lstm::Trace Lstm::forward(std::span<const int> ids, Rng* dropout_rng) const {
  if (ids.empty()) fail(ErrorCode::kEmptySequence, "LSTM input has no tokens");
  const auto e = static_cast<std::size_t>(config_.embed_dim);
  const auto h = static_cast<std::size_t>(config_.hidden);
  Trace t;
  std::vector<double> hs(h, 0.0), cs(h, 0.0);
  for (int id : ids) {
    if (id < 0 || static_cast<std::size_t>(id) >= config_.vocab_size) {
      fail(ErrorCode::kUnknownToken, "token id " + std::to_string(id) + " outside vocabulary of " +
                                         std::to_string(config_.vocab_size));
    }
    std::vector<double> v(hs);
    const double* x = theta_.data() + embedding_.offset + static_cast<std::size_t>(id) * e;
    v.insert(v.end(), x, x + e);
    std::vector<double> a(4 * h, 0.0);
    gates_.forward(theta_, v, a);
    std::vector<double> c(h, 0.0);
    for (std::size_t r = 0; r < h; ++r) {
      a[r] = sigmoid(a[r]);
      a[h + r] = sigmoid(a[h + r]);
      a[2 * h + r] = std::tanh(a[2 * h + r]);
      a[3 * h + r] = sigmoid(a[3 * h + r]);
      c[r] = a[r] * cs[r] + a[h + r] * a[2 * h + r];
      hs[r] = a[3 * h + r] * std::tanh(c[r]);
    }
    t.v.push_back(std::move(v));
    t.act.push_back(std::move(a));
    t.c_prev.push_back(cs);
    t.c.push_back(c);
    cs = std::move(c);
  }
  t.h_last = hs;
  const auto f = static_cast<std::size_t>(config_.fc);
  t.fc_pre.assign(f, 0.0);
  fc_.forward(theta_, t.h_last, t.fc_pre);
  t.mask.assign(f, 1.0);
  if (dropout_rng && config_.dropout > 0.0) {
    const double keep = 1.0 - config_.dropout;
    for (double& m : t.mask) m = dropout_rng->uniform() < keep ? 1.0 / keep : 0.0;
  }
  t.fc_out.assign(f, 0.0);
  for (std::size_t r = 0; r < f; ++r) t.fc_out[r] = std::max(0.0, t.fc_pre[r]) * t.mask[r];
  t.logits.assign(static_cast<std::size_t>(config_.n_classes), 0.0);
  out_.forward(theta_, t.fc_out, t.logits);
  return t;
}

std::vector<double> Lstm::logits(std::span<const int> ids, Rng* dropout_rng) const {
  return forward(ids, dropout_rng).logits;
}

double Lstm::loss_and_grad(std::span<const int> ids, int label, std::span<double> grad,
                           Rng* dropout_rng) const {
  if (grad.size() != theta_.size()) {
    fail(ErrorCode::kDimensionMismatch, "gradient buffer has the wrong size");
  }
  const Trace t = forward(ids, dropout_rng);
  const double loss = train::categorical_cross_entropy(t.logits, label);
  const std::vector<double> dlogits = train::categorical_cross_entropy_grad(t.logits, label);

  const auto e = static_cast<std::size_t>(config_.embed_dim);
  const auto h = static_cast<std::size_t>(config_.hidden);
  const auto f = static_cast<std::size_t>(config_.fc);

  std::vector<double> dfc(f, 0.0);
  out_.backward(theta_, t.fc_out, dlogits, grad, dfc);
  for (std::size_t r = 0; r < f; ++r) dfc[r] = t.fc_pre[r] > 0.0 ? dfc[r] * t.mask[r] : 0.0;
  std::vector<double> dh(h, 0.0);
  fc_.backward(theta_, t.h_last, dfc, grad, dh);

  std::vector<double> dc(h, 0.0);
  for (std::size_t s = t.v.size(); s-- > 0;) {
    const auto& a = t.act[s];
    const auto& c = t.c[s];
    const auto& c_prev = t.c_prev[s];
    std::vector<double> da(4 * h, 0.0);
    for (std::size_t r = 0; r < h; ++r) {
      const double fg = a[r], ig = a[h + r], gg = a[2 * h + r], og = a[3 * h + r];
      const double tc = std::tanh(c[r]);
      const double d_o = dh[r] * tc;
      const double dcr = dc[r] + dh[r] * og * (1.0 - tc * tc);
      da[r] = dcr * c_prev[r] * fg * (1.0 - fg);
      da[h + r] = dcr * gg * ig * (1.0 - ig);
      da[2 * h + r] = dcr * ig * (1.0 - gg * gg);
      da[3 * h + r] = d_o * og * (1.0 - og);
      dc[r] = dcr * fg;
    }
    std::vector<double> dv(h + e, 0.0);
    gates_.backward(theta_, t.v[s], da, grad, dv);
    for (std::size_t r = 0; r < h; ++r) dh[r] = dv[r];
    const std::size_t row = embedding_.offset + static_cast<std::size_t>(ids[s]) * e;
    for (std::size_t k = 0; k < e; ++k) grad[row + k] += dv[h + k];
  }
  return loss;
}

nlohmann::json to_json(const LstmConfig& c) {
  return {{"vocab_size", c.vocab_size}, {"embed_dim", c.embed_dim}, {"hidden", c.hidden},
          {"fc", c.fc},                 {"n_classes", c.n_classes}, {"dropout", c.dropout}};
}

LstmConfig lstm_config_from_json(const nlohmann::json& j) {
  try {
    LstmConfig c;
    c.vocab_size = j.at("vocab_size").get<std::size_t>();
    c.embed_dim = j.at("embed_dim").get<int>();
    c.hidden = j.at("hidden").get<int>();
    c.fc = j.at("fc").get<int>();
    c.n_classes = j.at("n_classes").get<int>();
    c.dropout = j.at("dropout").get<double>();
    c.validate();
    return c;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kFormatError, std::string("bad LSTM config: ") + e.what());
  }
}

nlohmann::json Lstm::to_json() const {
  return {{"config", qlstm::to_json(config_)}, {"theta", theta_}};
}

Lstm Lstm::from_json(const nlohmann::json& j) {
  try {
    return Lstm(lstm_config_from_json(j.at("config")), j.at("theta").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kFormatError, std::string("bad LSTM checkpoint: ") + e.what());
  }
}

}  // namespace qnlp::qlstm
