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

#include "qnlp/train/split.h"

#include <cmath>
#include <numeric>
#include <string>

#include "qnlp/error.h"
#include "qnlp/rng.h"

namespace qnlp::train {

SplitIndices split_indices(std::size_t n, const SplitFractions& fractions, std::uint64_t seed) {
  double total = 0.0;
  for (double f : fractions) {
    if (!(f > 0.0)) fail(ErrorCode::kInvalidConfig, "split fractions must be positive");
    total += f;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    fail(ErrorCode::kInvalidConfig, "split fractions sum to " + std::to_string(total));
  }
  if (n < 10) fail(ErrorCode::kTooSmall, "need at least 10 items to split, got " + std::to_string(n));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(order));

  const auto nd = static_cast<double>(n);
  auto n_train = static_cast<std::size_t>(std::llround(nd * fractions[0]));
  auto n_val = static_cast<std::size_t>(std::llround(nd * fractions[1]));
  n_train = std::min(n_train, n);
  n_val = std::min(n_val, n - n_train);

  SplitIndices out;
  out.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  out.val.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train),
                 order.begin() + static_cast<std::ptrdiff_t>(n_train + n_val));
  out.test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train + n_val), order.end());
  return out;
}

Splits split_dataset(const data::Dataset& dataset, const SplitFractions& fractions,
                     std::uint64_t seed) {
  const SplitIndices idx = split_indices(dataset.size(), fractions, seed);
  Splits out;
  for (data::Dataset* d : {&out.train, &out.val, &out.test}) d->binary = dataset.binary;
  for (std::size_t i : idx.train) out.train.sentences.push_back(dataset.sentences[i]);
  for (std::size_t i : idx.val) out.val.sentences.push_back(dataset.sentences[i]);
  for (std::size_t i : idx.test) out.test.sentences.push_back(dataset.sentences[i]);
  return out;
}

}  // namespace qnlp::train
