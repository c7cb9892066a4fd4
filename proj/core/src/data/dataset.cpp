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

#include "qnlp/data/dataset.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "qnlp/error.h"
#include "qnlp/grammar/tokenize.h"

namespace qnlp::data {

using nlohmann::json;

std::string_view label_name(int label) {
  switch (label) {
    case kNegative: return "negative";
    case kNeutral: return "neutral";
    case kPositive: return "positive";
  }
  return "invalid";
}

Sentence make_sentence(std::string text, int label) {
  Sentence s;
  s.tokens = grammar::tokenize(text);
  s.text = std::move(text);
  s.label = label;
  s.original_label = label;
  return s;
}

Dataset parse_jsonl(std::istream& in, LoadReport* report) {
  LoadReport local;
  LoadReport& rep = report ? *report : local;
  rep = LoadReport{};
  Dataset out;
  std::size_t binary_records = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      rep.malformed.push_back({line_no, std::string("invalid JSON: ") + e.what()});
      continue;
    }
    if (!record.is_object() || !record.contains("text") || !record["text"].is_string() ||
        !record.contains("label") || !record["label"].is_number_integer()) {
      rep.malformed.push_back({line_no, "expected {\"text\": string, \"label\": integer}"});
      continue;
    }
    const int label = record["label"].get<int>();
    if (label < 0 || label > 2) {
      rep.malformed.push_back({line_no, "label " + std::to_string(label) + " not in {0,1,2}"});
      continue;
    }
    Sentence s = make_sentence(record["text"].get<std::string>(), label);
    if (record.contains("original_label") && record["original_label"].is_number_integer()) {
      s.original_label = record["original_label"].get<int>();
      ++binary_records;
    }
    if (s.tokens.empty()) {
      rep.empty.push_back({line_no, "text has no tokens"});
      continue;
    }
    out.sentences.push_back(std::move(s));
  }
  rep.loaded = out.sentences.size();
  if (out.sentences.empty()) {
    fail(ErrorCode::kAllRecordsInvalid,
         "no usable records (" + std::to_string(rep.malformed.size()) + " malformed, " +
             std::to_string(rep.empty.size()) + " empty)");
  }
  out.binary = binary_records == out.sentences.size();
  return out;
}

Dataset load_jsonl(const std::filesystem::path& path, LoadReport* report) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIoError, "cannot open " + path.string());
  return parse_jsonl(in, report);
}

void write_jsonl(const Dataset& dataset, std::ostream& out) {
  for (const Sentence& s : dataset.sentences) {
    json record = {{"text", s.text}, {"label", s.label}};
    if (dataset.binary) record["original_label"] = s.original_label;
    out << record.dump() << '\n';
  }
}

void save_jsonl(const Dataset& dataset, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIoError, "cannot write " + path.string());
  write_jsonl(dataset, out);
  if (!out) fail(ErrorCode::kIoError, "write failed for " + path.string());
}

DistributionStats stats(const Dataset& dataset) {
  if (dataset.empty()) fail(ErrorCode::kEmptyDataset, "cannot compute statistics of no sentences");
  DistributionStats st;
  const auto classes = static_cast<std::size_t>(dataset.num_classes());
  st.class_counts.assign(classes, 0);
  std::set<std::string, std::less<>> vocab;
  std::size_t words = 0;
  for (const Sentence& s : dataset.sentences) {
    if (s.label < 0 || static_cast<std::size_t>(s.label) >= classes) {
      fail(ErrorCode::kInvalidLabel, "label " + std::to_string(s.label) + " out of range");
    }
    ++st.class_counts[static_cast<std::size_t>(s.label)];
    words += s.tokens.size();
    vocab.insert(s.tokens.begin(), s.tokens.end());
  }
  st.n_sentences = dataset.size();
  const auto n = static_cast<double>(dataset.size());
  for (std::size_t c : st.class_counts) st.class_shares.push_back(static_cast<double>(c) / n);
  st.mean_word_count = static_cast<double>(words) / n;
  st.vocab_size = vocab.size();
  return st;
}

Dataset binarize(const Dataset& dataset) {
  if (dataset.binary) return dataset;
  Dataset out;
  out.binary = true;
  for (const Sentence& s : dataset.sentences) {
    if (s.label == kNeutral) continue;
    Sentence b = s;
    b.original_label = s.label;
    b.label = s.label == kPositive ? 1 : 0;
    out.sentences.push_back(std::move(b));
  }
  return out;
}

Vocab::Vocab(std::vector<std::string> tokens_by_id) : tokens_(std::move(tokens_by_id)) {
  for (std::size_t k = 0; k < tokens_.size(); ++k) {
    if (!ids_.emplace(tokens_[k], static_cast<int>(k + 1)).second) {
      fail(ErrorCode::kInvalidArgument, "duplicate vocabulary token '" + tokens_[k] + "'");
    }
  }
}

int Vocab::id(std::string_view token) const {
  auto it = ids_.find(token);
  return it == ids_.end() ? kUnk : it->second;
}

std::vector<int> Vocab::encode(std::span<const std::string> tokens) const {
  std::vector<int> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(id(t));
  return out;
}

Vocab build_vocab(std::span<const Sentence> sentences, std::size_t min_count) {
  if (sentences.empty()) fail(ErrorCode::kEmptyDataset, "cannot build a vocabulary from nothing");
  std::unordered_map<std::string, std::size_t> counts;
  for (const Sentence& s : sentences) {
    for (const auto& t : s.tokens) ++counts[t];
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  std::vector<std::string> tokens;
  for (auto& [token, count] : ranked) {
    if (count >= min_count) tokens.push_back(token);
  }
  return Vocab(std::move(tokens));
}

}  // namespace qnlp::data
