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
#include <vector>

#include "qnlp/data/dataset.h"

namespace qnlp::train {

/// Train, validation, test.
using SplitFractions = std::array<double, 3>;

inline constexpr SplitFractions kDefaultSplit{0.8, 0.1, 0.1};

struct SplitIndices {
  std::vector<std::size_t> train, val, test;
};

/// Seeded shuffle of [0, n) cut into contiguous slices of rounded sizes; the
/// test slice takes the remainder. Throws TooSmall for n < 10 and
/// InvalidConfig for bad fractions.
SplitIndices split_indices(std::size_t n, const SplitFractions& fractions, std::uint64_t seed);

struct Splits {
  data::Dataset train, val, test;
};

Splits split_dataset(const data::Dataset& dataset, const SplitFractions& fractions,
                     std::uint64_t seed);

}  // namespace qnlp::train
