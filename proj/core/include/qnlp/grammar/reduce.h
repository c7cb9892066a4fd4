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

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qnlp/grammar/lexicon.h"
#include "qnlp/grammar/pregroup.h"

namespace qnlp::grammar {

/// A contraction between two positions of the flattened simple-type sequence.
struct Cup {
  std::size_t left;
  std::size_t right;

  bool operator==(const Cup&) const = default;
  auto operator<=>(const Cup&) const = default;
};

/// Result of reducing a typed word sequence. Positions index `flat`, the
/// concatenation of all word types.
struct Derivation {
  std::vector<TypedWord> words;
  std::vector<SimpleType> flat;
  /// Owning word for each flat position.
  std::vector<std::size_t> word_of;
  /// In the order the reducer contracted them.
  std::vector<Cup> cups;
  /// Uncontracted positions, ascending.
  std::vector<std::size_t> residue;

  /// First flat position of word w.
  std::size_t offset(std::size_t w) const;
};

/// Flattens the words into a Derivation with no cups (everything residue).
Derivation flatten(std::span<const TypedWord> words);

class NotASentence : public Error {
 public:
  NotASentence(std::vector<SimpleType> residue_types, std::vector<std::size_t> residue);
  /// Smallest residue reached by the search.
  const std::vector<std::size_t>& residue() const { return residue_; }
  const std::vector<SimpleType>& residue_types() const { return residue_types_; }

 private:
  std::vector<SimpleType> residue_types_;
  std::vector<std::size_t> residue_;
};

/// Backtracking search for a planar set of contractions that leaves exactly
/// one plain s. Always tries the leftmost contractible adjacent pair first.
/// Throws NotASentence (with the best residue found) when none exists.
Derivation reduce(std::span<const TypedWord> words);

nlohmann::json to_json(const Derivation& derivation);

}  // namespace qnlp::grammar
