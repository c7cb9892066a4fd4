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

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qnlp/grammar/pregroup.h"

namespace qnlp::grammar {

/// Grammatical role of a lexicon type within the supported fragment.
enum class Category {
  kNoun,              // n
  kModifier,          // n . n^l   (adjective or determiner)
  kTransitiveVerb,    // n^r . s . n^l
  kIntransitiveVerb,  // n^r . s
  kAdverb,            // s^r . s   (sentence-final)
  kSentence,          // s
  kOther,
};

Category categorize(const PregroupType& type);

/// How words missing from the lexicon are typed.
enum class FallbackPolicy {
  kNone,
  /// Word directly before a verb or at the end of the sentence -> n;
  /// word between a modifier (or the sentence start) and a noun -> n . n^l.
  kPositional,
};

class UnknownWord : public Error {
 public:
  explicit UnknownWord(std::string word);
  const std::string& word() const { return word_; }

 private:
  std::string word_;
};

class Lexicon {
 public:
  Lexicon() = default;

  /// Words are stored lowercase; the type must be non-empty.
  void add(std::string word, PregroupType type);
  const PregroupType* find(std::string_view word) const;
  bool contains(std::string_view word) const { return find(word) != nullptr; }
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, PregroupType, std::less<>>& entries() const { return entries_; }

  FallbackPolicy fallback() const { return fallback_; }
  void set_fallback(FallbackPolicy policy) { fallback_ = policy; }

  /// Merges another lexicon; entries of `other` win on conflicts.
  void merge(const Lexicon& other);

  /// "word<TAB>type-expression" lines; blank lines and '#' comments ignored.
  /// Throws FormatError (with line number) or SyntaxError.
  static Lexicon parse_tsv(std::istream& in, std::string_view source = "<stream>");
  static Lexicon load_tsv(const std::filesystem::path& path);
  void write_tsv(std::ostream& out) const;

 private:
  std::map<std::string, PregroupType, std::less<>> entries_;
  FallbackPolicy fallback_ = FallbackPolicy::kPositional;
};

/// Small lexicon with the textbook examples ("alice", "bob", "loves", ...).
Lexicon standard_lexicon();

struct TypedWord {
  std::string word;
  PregroupType type;

  bool operator==(const TypedWord&) const = default;
};

/// Types every token through the lexicon, then the fallback policy.
/// Throws UnknownWord for the first token no rule covers.
std::vector<TypedWord> assign_types(std::span<const std::string> tokens, const Lexicon& lexicon);

}  // namespace qnlp::grammar
