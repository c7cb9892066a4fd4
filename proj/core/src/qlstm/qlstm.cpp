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

#include "qnlp/qlstm/qlstm.h"

#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "qnlp/error.h"
#include "qnlp/rng.h"
#include "qnlp/train/loss.h"

namespace qnlp::qlstm {

namespace {

constexpr int kForget = 0, kInput = 1, kCandidate = 2, kOutput = 3, kHidden = 4, kReadout = 5;

void check_override(const std::optional<std::vector<double>>& v, std::size_t h, const char* name) {
  if (v && v->size() != h) {
    fail(ErrorCode::kDimensionMismatch, std::string("override for gate ") + name + " has length " +
                                            std::to_string(v->size()));
  }
}

}  // namespace

void QlstmConfig::validate() const {
  if (vocab_size < 1) fail(ErrorCode::kInvalidConfig, "vocabulary must contain UNK");
  if (embed_dim < 1 || hidden < 1 || n_classes < 2) {
    fail(ErrorCode::kInvalidConfig, "QLSTM dimensions must be positive with at least 2 classes");
  }
  if (collapse_output && hidden != n_classes) {
    fail(ErrorCode::kInvalidConfig, "y = h needs hidden size equal to the class count");
  }
  qnn.validate();
}

Qlstm::Qlstm(QlstmConfig config, std::uint64_t seed) : config_(std::move(config)) {
  config_.validate();
  build_layout();
  theta_.assign(layout_.total(), 0.0);
  Rng rng(seed);
  // Unit-scale embeddings keep the arctan input encoding away from its flat
  // region around 0.
  for (std::size_t k = 0; k < embedding_.size; ++k) theta_[embedding_.offset + k] = rng.normal();
  w_in_.init(theta_, rng);
  for (int k = 0; k < 4; ++k) proj_[static_cast<std::size_t>(k)].init(theta_, rng);
  w_m_.init(theta_, rng);
  for (int k = kHidden; k < config_.n_networks(); ++k) proj_[static_cast<std::size_t>(k)].init(theta_, rng);
  for (int k = 0; k < config_.n_networks(); ++k) {
    const Block& b = angles_[static_cast<std::size_t>(k)];
    for (std::size_t a = 0; a < b.size; ++a) theta_[b.offset + a] = rng.uniform(0.0, 2.0 * std::numbers::pi);
  }
}

Qlstm::Qlstm(QlstmConfig config, std::vector<double> theta) : config_(std::move(config)) {
  config_.validate();
  build_layout();
  if (theta.size() != layout_.total()) {
    fail(ErrorCode::kDimensionMismatch, "QLSTM expects " + std::to_string(layout_.total()) +
                                            " parameters, got " + std::to_string(theta.size()));
  }
  theta_ = std::move(theta);
}

void Qlstm::build_layout() {
  const auto e = static_cast<std::size_t>(config_.embed_dim);
  const auto h = static_cast<std::size_t>(config_.hidden);
  const auto q = static_cast<std::size_t>(config_.qnn.n_qubits);
  const auto c = static_cast<std::size_t>(config_.n_classes);
  embedding_ = layout_.add("embedding", config_.vocab_size * e);
  w_in_ = Linear::allocate(layout_, "w_in", h + e, q);
  const char* names[] = {"p_forget", "p_input", "p_candidate", "p_output", "p_hidden", "p_readout"};
  for (int k = 0; k < 4; ++k) proj_[static_cast<std::size_t>(k)] = Linear::allocate(layout_, names[k], q, h);
  w_m_ = Linear::allocate(layout_, "w_m", h, q);
  proj_[kHidden] = Linear::allocate(layout_, names[kHidden], q, h);
  if (!config_.collapse_output) proj_[kReadout] = Linear::allocate(layout_, names[kReadout], q, c);
  for (int k = 0; k < config_.n_networks(); ++k) {
    angles_[static_cast<std::size_t>(k)] =
        layout_.add("qnn" + std::to_string(k + 1) + "_angles", config_.qnn.n_angles());
  }
}

CellState Qlstm::zero_state() const {
  const auto h = static_cast<std::size_t>(config_.hidden);
  return {std::vector<double>(h, 0.0), std::vector<double>(h, 0.0)};
}

std::span<const double> Qlstm::angles(int network) const {
  const Block& b = angles_[static_cast<std::size_t>(network)];
  return std::span<const double>(theta_).subspan(b.offset, b.size);
}

std::span<const double> Qlstm::embedding(int id) const {
  const auto e = static_cast<std::size_t>(config_.embed_dim);
  return std::span<const double>(theta_).subspan(embedding_.offset + static_cast<std::size_t>(id) * e, e);
}

void Qlstm::check_ids(std::span<const int> ids) const {
  if (ids.empty()) fail(ErrorCode::kEmptySequence, "QLSTM input has no tokens");
  for (int id : ids) {
    if (id < 0 || static_cast<std::size_t>(id) >= config_.vocab_size) {
      fail(ErrorCode::kUnknownToken, "token id " + std::to_string(id) + " outside vocabulary of " +
                                         std::to_string(config_.vocab_size));
    }
  }
}

StepTrace Qlstm::run_step(const CellState& state, std::span<const double> x, bool with_jacobian,
                          const GateOverride* force) const {
  const auto h = static_cast<std::size_t>(config_.hidden);
  const auto q = static_cast<std::size_t>(config_.qnn.n_qubits);
  if (x.size() != static_cast<std::size_t>(config_.embed_dim) || state.c.size() != h ||
      state.h.size() != h) {
    fail(ErrorCode::kDimensionMismatch, "QLSTM step input or state has the wrong size");
  }
  auto network = [&](int k, std::span<const double> in) {
    if (with_jacobian) return qnn_jacobian(config_.qnn, angles(k), in);
    QnnJacobian j;
    j.out = qnn_forward(config_.qnn, angles(k), in);
    return j;
  };

  StepTrace t;
  t.v.assign(state.h.begin(), state.h.end());
  t.v.insert(t.v.end(), x.begin(), x.end());
  t.u.assign(q, 0.0);
  w_in_.forward(theta_, t.v, t.u);

  std::array<std::vector<double>*, 4> acts{&t.f, &t.i, &t.g, &t.o};
  for (int k = 0; k < 4; ++k) {
    auto ks = static_cast<std::size_t>(k);
    t.qnn[ks] = network(k, t.u);
    std::vector<double>& a = *acts[ks];
    a.assign(h, 0.0);
    proj_[ks].forward(theta_, t.qnn[ks].out, a);
    for (double& z : a) z = k == kCandidate ? std::tanh(z) : sigmoid(z);
  }
  if (force) {
    check_override(force->f, h, "f");
    check_override(force->i, h, "i");
    check_override(force->g, h, "g");
    check_override(force->o, h, "o");
    if (force->f) t.f = *force->f;
    if (force->i) t.i = *force->i;
    if (force->g) t.g = *force->g;
    if (force->o) t.o = *force->o;
  }

  t.c_prev = state.c;
  t.c.assign(h, 0.0);
  t.m.assign(h, 0.0);
  for (std::size_t r = 0; r < h; ++r) {
    t.c[r] = t.f[r] * t.c_prev[r] + t.i[r] * t.g[r];
    t.m[r] = t.o[r] * std::tanh(t.c[r]);
  }
  t.w.assign(q, 0.0);
  w_m_.forward(theta_, t.m, t.w);

  t.qnn[kHidden] = network(kHidden, t.w);
  t.h.assign(h, 0.0);
  proj_[kHidden].forward(theta_, t.qnn[kHidden].out, t.h);
  if (config_.collapse_output) {
    t.y = t.h;
  } else {
    t.qnn[kReadout] = network(kReadout, t.w);
    t.y.assign(static_cast<std::size_t>(config_.n_classes), 0.0);
    proj_[kReadout].forward(theta_, t.qnn[kReadout].out, t.y);
  }
  return t;
}

StepTrace Qlstm::step(const CellState& state, std::span<const double> x,
                      const GateOverride* force) const {
  return run_step(state, x, false, force);
}

std::vector<double> Qlstm::logits(std::span<const int> ids) const {
  check_ids(ids);
  CellState s = zero_state();
  std::vector<double> y;
  for (int id : ids) {
    StepTrace t = run_step(s, embedding(id), false, nullptr);
    s.c = std::move(t.c);
    s.h = std::move(t.h);
    y = std::move(t.y);
  }
  return y;
}

double Qlstm::loss_and_grad(std::span<const int> ids, int label, std::span<double> grad) const {
  check_ids(ids);
  if (grad.size() != theta_.size()) {
    fail(ErrorCode::kDimensionMismatch, "gradient buffer has the wrong size");
  }
  std::vector<StepTrace> traces;
  traces.reserve(ids.size());
  CellState s = zero_state();
  for (int id : ids) {
    traces.push_back(run_step(s, embedding(id), true, nullptr));
    s.c = traces.back().c;
    s.h = traces.back().h;
  }
  const std::vector<double>& logits = traces.back().y;
  const double loss = train::categorical_cross_entropy(logits, label);
  const std::vector<double> dy = train::categorical_cross_entropy_grad(logits, label);

  const auto h = static_cast<std::size_t>(config_.hidden);
  const auto q = static_cast<std::size_t>(config_.qnn.n_qubits);
  const auto e = static_cast<std::size_t>(config_.embed_dim);

  // Adds the QNN contribution for upstream dq into angle grads and dx.
  auto network_backward = [&](int k, const QnnJacobian& jac, std::span<const double> dq,
                              std::span<double> dx) {
    const Block& b = angles_[static_cast<std::size_t>(k)];
    for (std::size_t a = 0; a < b.size; ++a) {
      double acc = 0.0;
      for (std::size_t j = 0; j < q; ++j) acc += jac.d_angles[a * q + j] * dq[j];
      grad[b.offset + a] += acc;
    }
    for (std::size_t i = 0; i < q; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < q; ++j) acc += jac.d_input[i * q + j] * dq[j];
      dx[i] += acc;
    }
  };

  std::vector<double> dh_next(h, 0.0), dc_next(h, 0.0);
  for (std::size_t t = traces.size(); t-- > 0;) {
    const StepTrace& tr = traces[t];
    const bool last = t + 1 == traces.size();
    std::vector<double> dh = dh_next;
    std::vector<double> dw(q, 0.0);
    if (last) {
      if (config_.collapse_output) {
        for (std::size_t r = 0; r < h; ++r) dh[r] += dy[r];
      } else {
        std::vector<double> dq(q, 0.0);
        proj_[kReadout].backward(theta_, tr.qnn[kReadout].out, dy, grad, dq);
        network_backward(kReadout, tr.qnn[kReadout], dq, dw);
      }
    }
    {
      std::vector<double> dq(q, 0.0);
      proj_[kHidden].backward(theta_, tr.qnn[kHidden].out, dh, grad, dq);
      network_backward(kHidden, tr.qnn[kHidden], dq, dw);
    }
    std::vector<double> dm(h, 0.0);
    w_m_.backward(theta_, tr.m, dw, grad, dm);

    std::vector<double> dc = dc_next;
    std::vector<std::vector<double>> da(4, std::vector<double>(h, 0.0));
    for (std::size_t r = 0; r < h; ++r) {
      const double tc = std::tanh(tr.c[r]);
      const double d_o = dm[r] * tc;
      dc[r] += dm[r] * tr.o[r] * (1.0 - tc * tc);
      const double d_f = dc[r] * tr.c_prev[r];
      const double d_i = dc[r] * tr.g[r];
      const double d_g = dc[r] * tr.i[r];
      dc_next[r] = dc[r] * tr.f[r];
      da[kForget][r] = d_f * tr.f[r] * (1.0 - tr.f[r]);
      da[kInput][r] = d_i * tr.i[r] * (1.0 - tr.i[r]);
      da[kCandidate][r] = d_g * (1.0 - tr.g[r] * tr.g[r]);
      da[kOutput][r] = d_o * tr.o[r] * (1.0 - tr.o[r]);
    }
    std::vector<double> du(q, 0.0);
    for (int k = 0; k < 4; ++k) {
      const auto ks = static_cast<std::size_t>(k);
      std::vector<double> dq(q, 0.0);
      proj_[ks].backward(theta_, tr.qnn[ks].out, da[ks], grad, dq);
      network_backward(k, tr.qnn[ks], dq, du);
    }
    std::vector<double> dv(h + e, 0.0);
    w_in_.backward(theta_, tr.v, du, grad, dv);
    for (std::size_t r = 0; r < h; ++r) dh_next[r] = dv[r];
    const std::size_t row = embedding_.offset + static_cast<std::size_t>(ids[t]) * e;
    for (std::size_t k = 0; k < e; ++k) grad[row + k] += dv[h + k];
  }
  return loss;
}

nlohmann::json to_json(const QlstmConfig& c) {
  return {{"vocab_size", c.vocab_size},
          {"embed_dim", c.embed_dim},
          {"hidden", c.hidden},
          {"n_classes", c.n_classes},
          {"collapse_output", c.collapse_output},
          {"qnn",
           {{"n_qubits", c.qnn.n_qubits},
            {"n_layers", c.qnn.n_layers},
            {"cnot_offsets", c.qnn.cnot_offsets}}}};
}

QlstmConfig qlstm_config_from_json(const nlohmann::json& j) {
  try {
    QlstmConfig c;
    c.vocab_size = j.at("vocab_size").get<std::size_t>();
    c.embed_dim = j.at("embed_dim").get<int>();
    c.hidden = j.at("hidden").get<int>();
    c.n_classes = j.at("n_classes").get<int>();
    c.collapse_output = j.at("collapse_output").get<bool>();
    const auto& q = j.at("qnn");
    c.qnn.n_qubits = q.at("n_qubits").get<int>();
    c.qnn.n_layers = q.at("n_layers").get<int>();
    c.qnn.cnot_offsets = q.at("cnot_offsets").get<std::vector<int>>();
    c.validate();
    return c;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kFormatError, std::string("bad QLSTM config: ") + e.what());
  }
}

nlohmann::json Qlstm::to_json() const {
  return {{"config", qlstm::to_json(config_)}, {"theta", theta_}};
}

Qlstm Qlstm::from_json(const nlohmann::json& j) {
  try {
    return Qlstm(qlstm_config_from_json(j.at("config")), j.at("theta").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kFormatError, std::string("bad QLSTM checkpoint: ") + e.what());
  }
}

}  // namespace qnlp::qlstm
