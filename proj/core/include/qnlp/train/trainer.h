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

#include <chrono>
#include <concepts>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "qnlp/error.h"
#include "qnlp/parallel.h"
#include "qnlp/rng.h"
#include "qnlp/train/adam.h"
#include "qnlp/train/metrics.h"

namespace qnlp::train {

struct Prediction {
  double loss = 0.0;
  int predicted = 0;
  /// No usable prediction; scored as wrong.
  bool degenerate = false;
};

/// A model the generic loop can fit: flat parameters, per-example evaluation
/// in inference mode, and per-example gradient accumulation in training mode.
/// Examples carry an integer `label`.
template <class M>
concept Trainable = requires(M& m, const M& cm, const typename M::Example& ex,
                             std::span<double> grad, Rng& rng) {
  { m.parameters() } -> std::convertible_to<std::span<double>>;
  { cm.num_classes() } -> std::convertible_to<int>;
  { cm.evaluate(ex) } -> std::same_as<Prediction>;
  { cm.accumulate_gradient(ex, grad, rng) } -> std::convertible_to<double>;
  { ex.label } -> std::convertible_to<int>;
};

/// Loss, accuracy and confusion over a split. Throws EmptySplit.
template <Trainable M>
Metrics evaluate(const M& model, std::span<const typename M::Example> split, unsigned threads = 1) {
  if (split.empty()) fail(ErrorCode::kEmptySplit, "cannot evaluate an empty split");
  std::vector<Prediction> preds(split.size());
  parallel_for(split.size(), threads, [&](std::size_t k) { preds[k] = model.evaluate(split[k]); });

  const auto classes = static_cast<std::size_t>(model.num_classes());
  Metrics m;
  m.n = split.size();
  m.confusion.assign(classes, std::vector<std::size_t>(classes, 0));
  std::size_t correct = 0;
  for (std::size_t k = 0; k < split.size(); ++k) {
    const int label = split[k].label;
    const Prediction& p = preds[k];
    m.loss += p.loss;
    if (p.degenerate) ++m.degenerate;
    if (!p.degenerate && p.predicted == label) ++correct;
    if (p.predicted >= 0 && static_cast<std::size_t>(p.predicted) < classes) {
      ++m.confusion[static_cast<std::size_t>(label)][static_cast<std::size_t>(p.predicted)];
    }
  }
  m.loss /= static_cast<double>(split.size());
  m.accuracy = static_cast<double>(correct) / static_cast<double>(split.size());
  return m;
}

/// Minibatch Adam with a seeded per-epoch shuffle. Per-example gradients are
/// computed in parallel into separate buffers and summed in example order, so
/// results do not depend on the thread count. After each epoch the full train
/// and validation splits are scored and on_epoch is called with the record.
template <Trainable M>
std::vector<EpochRecord> fit(M& model, std::span<const typename M::Example> train_split,
                             std::span<const typename M::Example> val_split,
                             const TrainConfig& config,
                             const std::function<void(const EpochRecord&)>& on_epoch = {}) {
  config.validate();
  std::vector<EpochRecord> records;
  if (config.epochs == 0) return records;
  if (train_split.empty()) fail(ErrorCode::kEmptySplit, "training split is empty");

  const std::size_t n_params = model.parameters().size();
  AdamState adam(n_params);
  std::vector<std::vector<double>> buffers(config.batch_size, std::vector<double>(n_params));
  std::vector<double> grad(n_params);
  std::vector<std::size_t> order(train_split.size());

  const auto start = std::chrono::steady_clock::now();
  double best_val = std::numeric_limits<double>::infinity();
  std::size_t since_best = 0;

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    const std::uint64_t epoch_seed = Rng::derive(config.seed, epoch);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng shuffle_rng(epoch_seed);
    shuffle_rng.shuffle(std::span<std::size_t>(order));

    for (std::size_t begin = 0; begin < order.size(); begin += config.batch_size) {
      const std::size_t size = std::min(config.batch_size, order.size() - begin);
      parallel_for(size, config.threads, [&](std::size_t b) {
        std::vector<double>& buf = buffers[b];
        std::fill(buf.begin(), buf.end(), 0.0);
        Rng sample_rng(Rng::derive(epoch_seed, begin + b + 1));
        model.accumulate_gradient(train_split[order[begin + b]], buf, sample_rng);
      });
      std::fill(grad.begin(), grad.end(), 0.0);
      for (std::size_t b = 0; b < size; ++b) {
        for (std::size_t k = 0; k < n_params; ++k) grad[k] += buffers[b][k];
      }
      const double scale = 1.0 / static_cast<double>(size);
      for (double& g : grad) g *= scale;
      adam_step(adam, model.parameters(), grad, config.learning_rate);
    }

    const Metrics tr = evaluate(model, train_split, config.threads);
    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_loss = tr.loss;
    rec.train_acc = tr.accuracy;
    if (!val_split.empty()) {
      const Metrics va = evaluate(model, val_split, config.threads);
      rec.val_loss = va.loss;
      rec.val_acc = va.accuracy;
    }
    rec.wallclock_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    records.push_back(rec);
    if (on_epoch) on_epoch(rec);

    if (config.early_stop_patience && !val_split.empty()) {
      if (rec.val_loss < best_val) {
        best_val = rec.val_loss;
        since_best = 0;
      } else if (++since_best >= *config.early_stop_patience) {
        break;
      }
    }
  }
  return records;
}

}  // namespace qnlp::train
