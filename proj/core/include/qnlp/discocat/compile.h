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

#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qnlp/discocat/diagram.h"
#include "qnlp/grammar/lexicon.h"
#include "qnlp/qsim/circuit.h"
#include "qnlp/qsim/simulator.h"
#include "qnlp/rng.h"

namespace qnlp::discocat {

/// Qubits per atomic type. A word box spanning d qubits is embedded with the
/// Euler rotation RX RZ RX when d == 1 and with d IQP layers otherwise.
struct AnsatzConfig {
  std::map<grammar::Atom, int> qubits_per_atom{{grammar::Atom::kNoun, 1},
                                               {grammar::Atom::kSentence, 1}};

  /// Throws MissingAnsatz for atoms without a positive count.
  int qubits(grammar::Atom atom) const;
  int qubits(const grammar::PregroupType& type) const;
};

struct CompiledSentence {
  qsim::Circuit circuit;
  /// Every postselected qubit must read 0.
  qsim::PostselectPattern postselect;
  /// Qubits carrying the open sentence wire.
  std::vector<int> s_qubits;
  /// Word-embedding symbols, first-appearance order.
  std::vector<std::string> param_names;
};

/// "word/type/index", e.g. "loves/n.r@s@n.l/0". Scoped by (word, type) so a
/// word reused with a different type gets independent parameters.
std::string param_name(const std::string& word, const grammar::PregroupType& type, int index);

/// Gate list of a word's embedding unitary on the given register.
std::vector<qsim::Gate> word_ansatz(const std::string& word, const grammar::PregroupType& type,
                                    const std::vector<int>& qubits);

/// The transpose of a gate sequence: reversed order, each gate transposed.
/// H, RX, RZ, CNOT and CRZ are symmetric; RY needs a literal angle (negated).
std::vector<qsim::Gate> transpose(const std::vector<qsim::Gate>& gates);

/// Lowers a diagram to a postselected circuit.
///   state box  -> its ansatz on fresh |0> registers
///   effect box -> transposed ansatz on the partner wire, postselect to 0
///   cup        -> per qubit pair CNOT(left, right), H(left), postselect 00
CompiledSentence compile(const Diagram& diagram, const AnsatzConfig& ansatz);

/// tokens -> types -> reduction -> diagram -> (bend) -> circuit. Throws
/// UnknownWord and NotASentence.
CompiledSentence compile_tokens(std::span<const std::string> tokens, const grammar::Lexicon& lexicon,
                                const AnsatzConfig& ansatz, bool bend = true);

/// Adds every parameter of `compiled` missing from `params`, drawn uniformly
/// from [0, 2 pi). Existing values are kept.
void init_params(const CompiledSentence& compiled, qsim::ParamStore& params, Rng& rng);

/// Sidecar {"postselect": {...}, "s_qubits": [...]} that accompanies the circuit JSON.
nlohmann::json sidecar_json(const CompiledSentence& compiled);

}  // namespace qnlp::discocat
