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
#include <vector>

#include <nlohmann/json.hpp>

#include "qnlp/grammar/pregroup.h"
#include "qnlp/grammar/reduce.h"

namespace qnlp::discocat {

enum class BoxKind {
  kState,   // word meaning |psi>, produces its wires
  kEffect,  // bent word <psi|, consumes a partner wire
};

/// Wire ids are positions in the flattened type sequence of the derivation.
struct Wire {
  grammar::SimpleType type;
  /// Index of the state box that produces the wire.
  std::size_t owner = 0;
  /// Set when the wire was absorbed by bending its word into an effect.
  bool removed = false;
};

struct Box {
  std::string word;
  /// The word's own pregroup type (drives the ansatz and parameter names).
  grammar::PregroupType type;
  BoxKind kind = BoxKind::kState;
  /// State: produced wires. Effect: the partner wires it is applied to.
  std::vector<std::size_t> wires;
  /// The word's original wire ids (same as `wires` for states).
  std::vector<std::size_t> origin;
};

struct Diagram {
  std::vector<Wire> wires;
  std::vector<Box> boxes;
  /// Pairs of wire ids, left < right.
  std::vector<grammar::Cup> cups;
  std::vector<std::size_t> open_wires;

  /// Checks that every live wire is produced once and consumed exactly once
  /// (by a cup, an effect or as an open wire) and that all joined types
  /// contract. Throws InvalidArgument.
  void validate() const;

  std::size_t count(BoxKind kind) const;
};

/// One state box per word, cups copied from the derivation, residue wires
/// left open. The derivation must reduce to a single s.
Diagram build_diagram(const grammar::Derivation& derivation);

/// Bends every single-wire state box whose wire enters a cup into an effect
/// on the partner wire and drops that cup. Diagrams without such boxes are
/// returned unchanged.
Diagram bend_rewrite(Diagram diagram);

nlohmann::json to_json(const Diagram& diagram);

}  // namespace qnlp::discocat
