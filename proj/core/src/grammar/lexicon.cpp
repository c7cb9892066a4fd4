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

#include "qnlp/grammar/lexicon.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>

namespace qnlp::grammar {

Category categorize(const PregroupType& type) {
  if (type == types::noun()) return Category::kNoun;
  if (type == types::adjective()) return Category::kModifier;
  if (type == types::transitive_verb()) return Category::kTransitiveVerb;
  if (type == types::intransitive_verb()) return Category::kIntransitiveVerb;
  if (type == types::adverb()) return Category::kAdverb;
  if (type == types::sentence()) return Category::kSentence;
  return Category::kOther;
}

UnknownWord::UnknownWord(std::string word)
    : Error(ErrorCode::kUnknownWord, "UnknownWord: no type for '" + word + "'"),
      word_(std::move(word)) {}

namespace {

std::string lower(std::string s) {
  for (char& ch : s) {
    if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
  }
  return s;
}

std::string trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

bool is_verb(Category c) {
  return c == Category::kTransitiveVerb || c == Category::kIntransitiveVerb;
}

}  // namespace

void Lexicon::add(std::string word, PregroupType type) {
  if (type.empty()) {
    fail(ErrorCode::kInvalidArgument, "lexicon entry '" + word + "' has the unit type");
  }
  if (word.empty()) fail(ErrorCode::kInvalidArgument, "empty lexicon word");
  entries_.insert_or_assign(lower(std::move(word)), std::move(type));
}

const PregroupType* Lexicon::find(std::string_view word) const {
  auto it = entries_.find(word);
  return it == entries_.end() ? nullptr : &it->second;
}

void Lexicon::merge(const Lexicon& other) {
  for (const auto& [word, type] : other.entries_) entries_.insert_or_assign(word, type);
}

Lexicon Lexicon::parse_tsv(std::istream& in, std::string_view source) {
  Lexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    const auto tab = line.find('\t');
    const std::string where = std::string(source) + ":" + std::to_string(line_no);
    if (tab == std::string::npos) {
      fail(ErrorCode::kFormatError, where + ": expected 'word<TAB>type'");
    }
    const std::string word = trim(std::string_view(line).substr(0, tab));
    if (word.empty()) fail(ErrorCode::kFormatError, where + ": empty word");
    PregroupType type;
    try {
      type = parse_type(std::string_view(line).substr(tab + 1));
    } catch (const SyntaxError& e) {
      fail(ErrorCode::kFormatError, where + ": " + e.what());
    }
    if (type.empty()) fail(ErrorCode::kFormatError, where + ": unit type not allowed");
    lex.add(word, std::move(type));
  }
  return lex;
}

Lexicon Lexicon::load_tsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIoError, "cannot open lexicon " + path.string());
  return parse_tsv(in, path.string());
}

void Lexicon::write_tsv(std::ostream& out) const {
  for (const auto& [word, type] : entries_) out << word << '\t' << to_string(type) << '\n';
}

Lexicon standard_lexicon() {
  Lexicon lex;
  for (const char* w : {"alice", "bob", "charlie", "diane", "mary", "john", "people", "food"}) {
    lex.add(w, types::noun());
  }
  for (const char* w : {"loves", "likes", "hates", "sees", "cooks", "meets"}) {
    lex.add(w, types::transitive_verb());
  }
  for (const char* w : {"runs", "sleeps", "laughs", "walks"}) {
    lex.add(w, types::intransitive_verb());
  }
  for (const char* w : {"the", "a", "an", "big", "small", "happy", "sad", "old", "young"}) {
    lex.add(w, types::adjective());
  }
  for (const char* w : {"quickly", "slowly", "today"}) lex.add(w, types::adverb());
  return lex;
}

std::vector<TypedWord> assign_types(std::span<const std::string> tokens,
                                    const Lexicon& lexicon) {
  const std::size_t n = tokens.size();
  std::vector<std::optional<PregroupType>> assigned(n);
  // Right to left, so the rule for an unknown word can look at the type
  // already settled for its right neighbour.
  for (std::size_t k = n; k-- > 0;) {
    if (const PregroupType* t = lexicon.find(tokens[k])) {
      assigned[k] = *t;
      continue;
    }
    if (lexicon.fallback() == FallbackPolicy::kNone) throw UnknownWord(tokens[k]);

    const bool last = k + 1 == n;
    const std::optional<Category> next =
        last ? std::nullopt : std::optional<Category>(categorize(*assigned[k + 1]));
    if (last || is_verb(*next)) {
      assigned[k] = types::noun();
      continue;
    }
    const PregroupType* prev = k == 0 ? nullptr : lexicon.find(tokens[k - 1]);
    const bool after_modifier_or_start =
        k == 0 || (prev != nullptr && categorize(*prev) == Category::kModifier);
    if (after_modifier_or_start && *next == Category::kNoun) {
      assigned[k] = types::adjective();
      continue;
    }
    throw UnknownWord(tokens[k]);
  }
  std::vector<TypedWord> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) out.push_back({tokens[k], std::move(*assigned[k])});
  return out;
}

}  // namespace qnlp::grammar
