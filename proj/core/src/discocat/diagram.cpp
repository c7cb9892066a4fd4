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

#include "qnlp/discocat/diagram.h"

#include <algorithm>

#include "qnlp/error.h"

namespace qnlp::discocat {

namespace {

bool joinable(const std::vector<Wire>& wires, std::size_t a, std::size_t b) {
  const std::size_t lo = std::min(a, b);
  const std::size_t hi = std::max(a, b);
  return grammar::contracts(wires[lo].type, wires[hi].type);
}

}  // namespace

void Diagram::validate() const {
  std::vector<int> produced(wires.size(), 0);
  std::vector<int> consumed(wires.size(), 0);
  auto check_id = [&](std::size_t w) {
    if (w >= wires.size()) fail(ErrorCode::kInvalidArgument, "wire id out of range");
  };
  for (std::size_t b = 0; b < boxes.size(); ++b) {
    const Box& box = boxes[b];
    if (box.wires.size() != box.origin.size()) {
      fail(ErrorCode::kInvalidArgument, "box '" + box.word + "' has mismatched wire lists");
    }
    for (std::size_t k = 0; k < box.wires.size(); ++k) {
      const std::size_t w = box.wires[k];
      check_id(w);
      if (box.kind == BoxKind::kState) {
        ++produced[w];
        if (wires[w].owner != b) fail(ErrorCode::kInvalidArgument, "wire owner mismatch");
      } else {
        ++consumed[w];
        check_id(box.origin[k]);
        if (!joinable(wires, w, box.origin[k])) {
          fail(ErrorCode::kInvalidArgument, "effect '" + box.word + "' does not contract");
        }
      }
    }
  }
  for (const grammar::Cup& cup : cups) {
    check_id(cup.left);
    check_id(cup.right);
    ++consumed[cup.left];
    ++consumed[cup.right];
    if (!joinable(wires, cup.left, cup.right)) {
      fail(ErrorCode::kInvalidArgument, "cup joins incompatible types");
    }
  }
  for (std::size_t w : open_wires) {
    check_id(w);
    ++consumed[w];
  }
  for (std::size_t w = 0; w < wires.size(); ++w) {
    const int want = wires[w].removed ? 0 : 1;
    if (produced[w] != want || consumed[w] != want) {
      fail(ErrorCode::kInvalidArgument,
           "wire " + std::to_string(w) + " is produced " + std::to_string(produced[w]) +
               " and consumed " + std::to_string(consumed[w]) + " times");
    }
  }
}

std::size_t Diagram::count(BoxKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(boxes.begin(), boxes.end(), [&](const Box& b) { return b.kind == kind; }));
}

Diagram build_diagram(const grammar::Derivation& derivation) {
  if (derivation.residue.size() != 1 ||
      derivation.flat[derivation.residue[0]] != grammar::types::s) {
    fail(ErrorCode::kNotASentence, "derivation does not reduce to a single s");
  }
  Diagram d;
  d.wires.reserve(derivation.flat.size());
  for (std::size_t p = 0; p < derivation.flat.size(); ++p) {
    d.wires.push_back({derivation.flat[p], derivation.word_of[p], false});
  }
  for (std::size_t w = 0; w < derivation.words.size(); ++w) {
    Box box{derivation.words[w].word, derivation.words[w].type, BoxKind::kState, {}, {}};
    for (std::size_t p = 0; p < derivation.flat.size(); ++p) {
      if (derivation.word_of[p] == w) box.wires.push_back(p);
    }
    box.origin = box.wires;
    d.boxes.push_back(std::move(box));
  }
  d.cups = derivation.cups;
  std::sort(d.cups.begin(), d.cups.end());
  d.open_wires = derivation.residue;
  d.validate();
  return d;
}

Diagram bend_rewrite(Diagram d) {
  for (Box& box : d.boxes) {
    if (box.kind != BoxKind::kState || box.wires.size() != 1) continue;
    const std::size_t own = box.wires[0];
    auto cup = std::find_if(d.cups.begin(), d.cups.end(), [&](const grammar::Cup& c) {
      return c.left == own || c.right == own;
    });
    if (cup == d.cups.end()) continue;
    const std::size_t partner = cup->left == own ? cup->right : cup->left;
    d.cups.erase(cup);
    d.wires[own].removed = true;
    box.kind = BoxKind::kEffect;
    box.origin = {own};
    box.wires = {partner};
  }
  d.validate();
  return d;
}

nlohmann::json to_json(const Diagram& d) {
  using nlohmann::json;
  json boxes = json::array();
  for (const Box& b : d.boxes) {
    boxes.push_back({{"word", b.word},
                     {"type", grammar::to_string(b.type)},
                     {"kind", b.kind == BoxKind::kState ? "state" : "effect"},
                     {"wires", b.wires}});
  }
  json wires = json::array();
  for (std::size_t w = 0; w < d.wires.size(); ++w) {
    if (d.wires[w].removed) continue;
    wires.push_back({{"id", w}, {"type", grammar::to_string(d.wires[w].type)}, {"owner", d.wires[w].owner}});
  }
  json cups = json::array();
  for (const auto& c : d.cups) cups.push_back({c.left, c.right});
  return {{"boxes", boxes}, {"wires", wires}, {"cups", cups}, {"open_wires", d.open_wires}};
}

}  // namespace qnlp::discocat
