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

#include "qnlp/grammar/reduce.h"

#include <algorithm>
#include <set>

namespace qnlp::grammar {

std::size_t Derivation::offset(std::size_t w) const {
  auto it = std::find(word_of.begin(), word_of.end(), w);
  if (it == word_of.end()) fail(ErrorCode::kInvalidArgument, "word index out of range");
  return static_cast<std::size_t>(it - word_of.begin());
}

Derivation flatten(std::span<const TypedWord> words) {
  Derivation d;
  d.words.assign(words.begin(), words.end());
  for (std::size_t w = 0; w < words.size(); ++w) {
    for (const SimpleType& t : words[w].type.simples) {
      d.residue.push_back(d.flat.size());
      d.flat.push_back(t);
      d.word_of.push_back(w);
    }
  }
  return d;
}

namespace {

std::string describe(const std::vector<SimpleType>& types) {
  std::string out;
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (i) out += " @ ";
    out += to_string(types[i]);
  }
  return out.empty() ? "1" : out;
}

class Reducer {
 public:
  explicit Reducer(const std::vector<SimpleType>& flat) : flat_(flat) {}

  bool search(std::vector<std::size_t>& alive, std::vector<Cup>& cups) {
    if (alive.size() == 1 && flat_[alive[0]] == types::s) return true;
    if (failed_.contains(alive)) return false;
    if (!have_best_ || alive.size() < best_.size()) {
      best_ = alive;
      have_best_ = true;
    }
    for (std::size_t k = 0; k + 1 < alive.size(); ++k) {
      if (!contracts(flat_[alive[k]], flat_[alive[k + 1]])) continue;
      std::vector<std::size_t> next;
      next.reserve(alive.size() - 2);
      next.insert(next.end(), alive.begin(), alive.begin() + static_cast<std::ptrdiff_t>(k));
      next.insert(next.end(), alive.begin() + static_cast<std::ptrdiff_t>(k + 2), alive.end());
      cups.push_back({alive[k], alive[k + 1]});
      if (search(next, cups)) {
        alive = std::move(next);
        return true;
      }
      cups.pop_back();
    }
    failed_.insert(alive);
    return false;
  }

  const std::vector<std::size_t>& best() const { return best_; }

 private:
  const std::vector<SimpleType>& flat_;
  std::set<std::vector<std::size_t>> failed_;
  std::vector<std::size_t> best_;
  bool have_best_ = false;
};

}  // namespace

NotASentence::NotASentence(std::vector<SimpleType> residue_types, std::vector<std::size_t> residue)
    : Error(ErrorCode::kNotASentence,
            "NotASentence: best reduction leaves " + describe(residue_types)),
      residue_types_(std::move(residue_types)),
      residue_(std::move(residue)) {}

Derivation reduce(std::span<const TypedWord> words) {
  if (words.empty()) fail(ErrorCode::kInvalidArgument, "cannot reduce an empty word sequence");
  Derivation d = flatten(words);
  Reducer reducer(d.flat);
  std::vector<std::size_t> alive = d.residue;
  std::vector<Cup> cups;
  if (!reducer.search(alive, cups)) {
    std::vector<SimpleType> types;
    for (std::size_t p : reducer.best()) types.push_back(d.flat[p]);
    throw NotASentence(std::move(types), reducer.best());
  }
  d.cups = std::move(cups);
  d.residue = std::move(alive);
  return d;
}

nlohmann::json to_json(const Derivation& d) {
  using nlohmann::json;
  json words = json::array();
  for (const TypedWord& w : d.words) words.push_back({{"word", w.word}, {"type", to_string(w.type)}});
  json flat = json::array();
  for (std::size_t p = 0; p < d.flat.size(); ++p) {
    flat.push_back({{"pos", p}, {"type", to_string(d.flat[p])}, {"word", d.word_of[p]}});
  }
  json cups = json::array();
  for (const Cup& c : d.cups) cups.push_back({c.left, c.right});
  return {{"words", words}, {"flat", flat}, {"cups", cups}, {"residue", d.residue}};
}

}  // namespace qnlp::grammar
