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
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qnlp::data {

inline constexpr int kNegative = 0;
inline constexpr int kNeutral = 1;
inline constexpr int kPositive = 2;

std::string_view label_name(int label);

struct Sentence {
  std::string text;
  /// 0 negative, 1 neutral, 2 positive; after binarize 0 negative, 1 positive.
  int label = 0;
  std::vector<std::string> tokens;
  /// Three-class label before binarize.
  int original_label = 0;

  bool operator==(const Sentence&) const = default;
};

/// Builds a Sentence and tokenizes its text.
Sentence make_sentence(std::string text, int label);

struct Dataset {
  std::vector<Sentence> sentences;
  /// True once the neutral class has been dropped.
  bool binary = false;

  int num_classes() const { return binary ? 2 : 3; }
  std::size_t size() const { return sentences.size(); }
  bool empty() const { return sentences.empty(); }
};

struct LineIssue {
  std::size_t line;
  std::string message;
};

struct LoadReport {
  std::size_t loaded = 0;
  std::vector<LineIssue> malformed;
  /// Records whose text tokenizes to nothing.
  std::vector<LineIssue> empty;
};

/// Lines of {"text": string, "label": 0|1|2}. Records that also carry
/// "original_label" mark a binarized dataset. Malformed and empty records
/// are skipped and listed in `report`. Throws AllRecordsInvalid when nothing
/// usable remains (including for an empty file) and IoError.
Dataset load_jsonl(const std::filesystem::path& path, LoadReport* report = nullptr);
Dataset parse_jsonl(std::istream& in, LoadReport* report = nullptr);

void write_jsonl(const Dataset& dataset, std::ostream& out);
void save_jsonl(const Dataset& dataset, const std::filesystem::path& path);

struct DistributionStats {
  /// One share per class (3, or 2 for a binarized dataset).
  std::vector<double> class_shares;
  std::vector<std::size_t> class_counts;
  double mean_word_count = 0.0;
  std::size_t vocab_size = 0;
  std::size_t n_sentences = 0;
};

/// Throws EmptyDataset.
DistributionStats stats(const Dataset& dataset);

/// Drops neutral records and maps negative -> 0, positive -> 1. Idempotent.
Dataset binarize(const Dataset& dataset);

/// Token -> id with 0 reserved for unknown tokens.
class Vocab {
 public:
  static constexpr int kUnk = 0;

  Vocab() = default;
  explicit Vocab(std::vector<std::string> tokens_by_id);

  int id(std::string_view token) const;
  std::vector<int> encode(std::span<const std::string> tokens) const;
  /// Including UNK.
  std::size_t size() const { return tokens_.size() + 1; }
  /// Tokens with ids 1..size()-1.
  const std::vector<std::string>& tokens() const { return tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::map<std::string, int, std::less<>> ids_;
};

/// Ids by descending frequency, ties broken lexicographically; tokens seen
/// fewer than min_count times stay unknown. Throws EmptyDataset.
Vocab build_vocab(std::span<const Sentence> sentences, std::size_t min_count = 1);

}  // namespace qnlp::data
