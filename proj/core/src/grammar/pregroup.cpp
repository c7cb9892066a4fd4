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

#include "qnlp/grammar/pregroup.h"

#include <cctype>

namespace qnlp::grammar {

std::string_view to_string(Atom atom) { return atom == Atom::kNoun ? "n" : "s"; }

PregroupType operator*(const PregroupType& a, const PregroupType& b) {
  PregroupType out = a;
  out.simples.insert(out.simples.end(), b.simples.begin(), b.simples.end());
  return out;
}

std::string to_string(const SimpleType& t) {
  std::string out(to_string(t.atom));
  for (int k = 0; k < t.z; ++k) out += ".r";
  for (int k = 0; k < -t.z; ++k) out += ".l";
  return out;
}

std::string to_string(const PregroupType& t) {
  if (t.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < t.simples.size(); ++i) {
    if (i) out += " @ ";
    out += to_string(t.simples[i]);
  }
  return out;
}

SyntaxError::SyntaxError(std::size_t column, const std::string& message)
    : Error(ErrorCode::kSyntaxError,
            "SyntaxError at column " + std::to_string(column) + ": " + message),
      column_(column) {}

namespace {

class TypeScanner {
 public:
  explicit TypeScanner(std::string_view text) : text_(text) {}

  PregroupType parse() {
    skip_ws();
    if (peek() == '1') {
      ++pos_;
      skip_ws();
      if (!at_end()) error("unexpected '" + std::string(1, peek()) + "' after unit");
      return {};
    }
    PregroupType out;
    out.simples.push_back(simple());
    while (true) {
      skip_ws();
      if (at_end()) break;
      if (peek() != '@') error("expected '@' but found '" + std::string(1, peek()) + "'");
      ++pos_;
      out.simples.push_back(simple());
    }
    return out;
  }

 private:
  SimpleType simple() {
    skip_ws();
    if (at_end()) error("expected an atom but reached end of input");
    const std::size_t start = pos_;
    SimpleType t;
    switch (peek()) {
      case 'n': t.atom = Atom::kNoun; break;
      case 's': t.atom = Atom::kSentence; break;
      default: error("unknown atom '" + std::string(1, peek()) + "'");
    }
    ++pos_;
    while (true) {
      skip_ws();
      if (peek() != '.') break;
      ++pos_;
      skip_ws();
      if (peek() == 'l') {
        --t.z;
      } else if (peek() == 'r') {
        ++t.z;
      } else {
        error(at_end() ? "expected 'l' or 'r' after '.'"
                       : "expected 'l' or 'r' after '.' but found '" + std::string(1, peek()) + "'");
      }
      ++pos_;
    }
    if (t.z < -kMaxAdjointOrder || t.z > kMaxAdjointOrder) {
      throw SyntaxError(start + 1, "adjoint order " + std::to_string(t.z) + " outside [-2, 2]");
    }
    return t;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  [[noreturn]] void error(const std::string& message) const {
    throw SyntaxError(pos_ + 1, message);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

PregroupType parse_type(std::string_view text) { return TypeScanner(text).parse(); }

}  // namespace qnlp::grammar
