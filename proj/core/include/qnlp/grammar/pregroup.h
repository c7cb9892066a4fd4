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
#include <string>
#include <string_view>
#include <vector>

#include "qnlp/error.h"

namespace qnlp::grammar {

enum class Atom { kNoun, kSentence };

std::string_view to_string(Atom atom);

inline constexpr int kMaxAdjointOrder = 2;

/// An atom with an adjoint order: 0 plain, -1 left adjoint (^l),
/// +1 right adjoint (^r), +-2 iterated.
struct SimpleType {
  Atom atom = Atom::kNoun;
  int z = 0;

  bool operator==(const SimpleType&) const = default;
};

/// True when `left . right` contracts to the unit: a^l . a and a . a^r, and
/// generally (a, k) . (a, k + 1).
constexpr bool contracts(const SimpleType& left, const SimpleType& right) {
  return left.atom == right.atom && right.z == left.z + 1;
}

/// Ordered product of simple types; the empty product is the unit 1.
struct PregroupType {
  std::vector<SimpleType> simples;

  bool empty() const { return simples.empty(); }
  std::size_t size() const { return simples.size(); }

  bool operator==(const PregroupType&) const = default;
};

PregroupType operator*(const PregroupType& a, const PregroupType& b);

std::string to_string(const SimpleType& t);
/// "n.r @ s @ n.l"; the unit prints as "1".
std::string to_string(const PregroupType& t);

/// Raised by parse_type; column is 1-based.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t column, const std::string& message);
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

/// Parses "atom[.l|.r]* (@ atom[.l|.r]*)*" ignoring whitespace, or "1".
PregroupType parse_type(std::string_view text);

namespace types {
inline const SimpleType n{Atom::kNoun, 0};
inline const SimpleType s{Atom::kSentence, 0};
inline SimpleType l(SimpleType t) { return {t.atom, t.z - 1}; }
inline SimpleType r(SimpleType t) { return {t.atom, t.z + 1}; }

inline PregroupType noun() { return {{n}}; }
inline PregroupType sentence() { return {{s}}; }
inline PregroupType adjective() { return {{n, l(n)}}; }
inline PregroupType determiner() { return {{n, l(n)}}; }
inline PregroupType transitive_verb() { return {{r(n), s, l(n)}}; }
inline PregroupType intransitive_verb() { return {{r(n), s}}; }
inline PregroupType adverb() { return {{r(s), s}}; }
}  // namespace types

}  // namespace qnlp::grammar
