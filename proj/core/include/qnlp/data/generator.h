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
#include <cstdint>
#include <optional>
#include <string_view>

#include "qnlp/data/dataset.h"
#include "qnlp/grammar/lexicon.h"

namespace qnlp::data {

enum class Complexity { kLow, kModerate };

std::string_view to_string(Complexity c);
std::optional<Complexity> complexity_from_string(std::string_view name);

struct GenConfig {
  std::size_t n_sentences = 1000;
  Complexity complexity = Complexity::kLow;
  /// Negative, neutral, positive.
  std::array<double, 3> target_shares{0.34, 0.18, 0.48};
  std::uint64_t seed = 0;

  /// Throws InvalidConfig.
  void validate() const;
};

/// Class shares of the reference corpora, per complexity.
std::array<double, 3> reference_shares(Complexity c);

/// Seeded template expansion over a finance vocabulary. Class counts follow
/// the target shares by largest-remainder rounding. The label is carried by
/// the sentiment of the main verb. Low complexity sentences have at most five
/// words and all reduce to s under finance_lexicon(); moderate sentences are
/// multi-clause and not meant to be parsed.
Dataset generate_synthetic(const GenConfig& config);

/// Lexicon covering every low-complexity generator word plus the textbook
/// examples of grammar::standard_lexicon().
grammar::Lexicon finance_lexicon();

}  // namespace qnlp::data
