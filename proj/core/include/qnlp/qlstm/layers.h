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

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qnlp/rng.h"

namespace qnlp::qlstm {

/// Classical embedding tables start uniform in +-kEmbeddingInit.
inline constexpr double kEmbeddingInit = 0.05;

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

/// Named slice of a model's flat parameter vector.
struct Block {
  std::string name;
  std::size_t offset = 0;
  std::size_t size = 0;
};

/// Assigns consecutive offsets to named blocks.
class Layout {
 public:
  Block add(std::string name, std::size_t size);
  std::size_t total() const { return total_; }
  const std::vector<Block>& blocks() const { return blocks_; }

 private:
  std::vector<Block> blocks_;
  std::size_t total_ = 0;
};

/// y = W x + b over a slice of the parameter vector: W is out x in row-major,
/// followed by b.
struct Linear {
  std::size_t in = 0;
  std::size_t out = 0;
  std::size_t offset = 0;

  static Linear allocate(Layout& layout, const std::string& name, std::size_t in, std::size_t out);
  std::size_t size() const { return in * out + out; }

  void forward(std::span<const double> theta, std::span<const double> x, std::span<double> y) const;
  /// Adds dW, db into grad and, when dx is non-empty, W^T dy into dx.
  void backward(std::span<const double> theta, std::span<const double> x,
                std::span<const double> dy, std::span<double> grad, std::span<double> dx) const;
  /// Uniform in +-1/sqrt(in) for weights and biases.
  void init(std::span<double> theta, Rng& rng) const;
};

}  // namespace qnlp::qlstm
