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

#include "qnlp/qlstm/layers.h"

#include "qnlp/error.h"

namespace qnlp::qlstm {

Block Layout::add(std::string name, std::size_t size) {
  Block b{std::move(name), total_, size};
  total_ += size;
  blocks_.push_back(b);
  return b;
}

Linear Linear::allocate(Layout& layout, const std::string& name, std::size_t in, std::size_t out) {
  Linear l;
  l.in = in;
  l.out = out;
  l.offset = layout.add(name, in * out + out).offset;
  return l;
}

void Linear::forward(std::span<const double> theta, std::span<const double> x,
                     std::span<double> y) const {
  if (x.size() != in || y.size() != out) {
    fail(ErrorCode::kDimensionMismatch, "linear layer " + std::to_string(in) + "->" +
                                            std::to_string(out) + " got " +
                                            std::to_string(x.size()) + "->" + std::to_string(y.size()));
  }
  const double* w = theta.data() + offset;
  const double* b = w + in * out;
  for (std::size_t r = 0; r < out; ++r) {
    double acc = b[r];
    for (std::size_t c = 0; c < in; ++c) acc += w[r * in + c] * x[c];
    y[r] = acc;
  }
}

void Linear::backward(std::span<const double> theta, std::span<const double> x,
                      std::span<const double> dy, std::span<double> grad,
                      std::span<double> dx) const {
  const double* w = theta.data() + offset;
  double* gw = grad.data() + offset;
  double* gb = gw + in * out;
  for (std::size_t r = 0; r < out; ++r) {
    const double d = dy[r];
    gb[r] += d;
    for (std::size_t c = 0; c < in; ++c) gw[r * in + c] += d * x[c];
  }
  if (dx.empty()) return;
  for (std::size_t r = 0; r < out; ++r) {
    for (std::size_t c = 0; c < in; ++c) dx[c] += w[r * in + c] * dy[r];
  }
}

void Linear::init(std::span<double> theta, Rng& rng) const {
  const double bound = 1.0 / std::sqrt(static_cast<double>(in));
  for (std::size_t k = 0; k < size(); ++k) theta[offset + k] = rng.uniform(-bound, bound);
}

}  // namespace qnlp::qlstm
