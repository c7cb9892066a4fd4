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

#include "qnlp/discocat/compile.h"

#include <algorithm>
#include <numbers>
#include <unordered_set>

#include "qnlp/error.h"
#include "qnlp/grammar/reduce.h"

namespace qnlp::discocat {

using qsim::Gate;
using qsim::Symbol;

int AnsatzConfig::qubits(grammar::Atom atom) const {
  auto it = qubits_per_atom.find(atom);
  if (it == qubits_per_atom.end() || it->second < 1) {
    fail(ErrorCode::kMissingAnsatz,
         "no qubit count for atom '" + std::string(grammar::to_string(atom)) + "'");
  }
  return it->second;
}

int AnsatzConfig::qubits(const grammar::PregroupType& type) const {
  int total = 0;
  for (const auto& t : type.simples) total += qubits(t.atom);
  return total;
}

std::string param_name(const std::string& word, const grammar::PregroupType& type, int index) {
  std::string compact;
  for (char ch : grammar::to_string(type)) {
    if (ch != ' ') compact += ch;
  }
  return word + "/" + compact + "/" + std::to_string(index);
}

std::vector<Gate> word_ansatz(const std::string& word, const grammar::PregroupType& type,
                              const std::vector<int>& qubits) {
  std::vector<Gate> gates;
  const int d = static_cast<int>(qubits.size());
  if (d == 1) {
    const int q = qubits[0];
    gates.push_back(Gate::rx(q, Symbol{param_name(word, type, 0)}));
    gates.push_back(Gate::rz(q, Symbol{param_name(word, type, 1)}));
    gates.push_back(Gate::rx(q, Symbol{param_name(word, type, 2)}));
    return gates;
  }
  int next = 0;
  for (int layer = 0; layer < d; ++layer) {
    for (int q : qubits) gates.push_back(Gate::h(q));
    for (int i = 0; i + 1 < d; ++i) {
      gates.push_back(Gate::crz(qubits[i], qubits[i + 1], Symbol{param_name(word, type, next++)}));
    }
  }
  return gates;
}

std::vector<Gate> transpose(const std::vector<Gate>& gates) {
  std::vector<Gate> out(gates.rbegin(), gates.rend());
  for (Gate& g : out) {
    if (g.kind != qsim::GateKind::kRY) continue;
    const double* lit = std::get_if<double>(&*g.param);
    if (lit == nullptr) {
      fail(ErrorCode::kInvalidArgument, "cannot transpose a symbolic RY rotation");
    }
    g.param = -*lit;
  }
  return out;
}

CompiledSentence compile(const Diagram& diagram, const AnsatzConfig& ansatz) {
  diagram.validate();
  CompiledSentence out;
  std::vector<std::vector<int>> register_of(diagram.wires.size());
  int next_qubit = 0;

  std::vector<Gate> gates;
  for (const Box& box : diagram.boxes) {
    if (box.kind != BoxKind::kState) continue;
    std::vector<int> reg;
    for (std::size_t w : box.wires) {
      const int width = ansatz.qubits(diagram.wires[w].type.atom);
      for (int k = 0; k < width; ++k) {
        register_of[w].push_back(next_qubit);
        reg.push_back(next_qubit++);
      }
    }
    auto word_gates = word_ansatz(box.word, box.type, reg);
    gates.insert(gates.end(), word_gates.begin(), word_gates.end());
  }

  for (const Box& box : diagram.boxes) {
    if (box.kind != BoxKind::kEffect) continue;
    std::vector<int> reg;
    for (std::size_t w : box.wires) reg.insert(reg.end(), register_of[w].begin(), register_of[w].end());
    if (ansatz.qubits(box.type) != static_cast<int>(reg.size())) {
      fail(ErrorCode::kInvalidArgument, "effect '" + box.word + "' does not fit its partner wire");
    }
    auto effect = transpose(word_ansatz(box.word, box.type, reg));
    gates.insert(gates.end(), effect.begin(), effect.end());
    for (int q : reg) out.postselect[q] = 0;
  }

  for (const grammar::Cup& cup : diagram.cups) {
    const auto& left = register_of[cup.left];
    const auto& right = register_of[cup.right];
    for (std::size_t k = 0; k < left.size(); ++k) {
      gates.push_back(Gate::cnot(left[k], right[k]));
      gates.push_back(Gate::h(left[k]));
      out.postselect[left[k]] = 0;
      out.postselect[right[k]] = 0;
    }
  }

  for (std::size_t w : diagram.open_wires) {
    out.s_qubits.insert(out.s_qubits.end(), register_of[w].begin(), register_of[w].end());
  }
  out.circuit.n_qubits = next_qubit;
  out.circuit.gates = std::move(gates);
  out.circuit.validate();
  out.param_names = out.circuit.symbols();
  return out;
}

void init_params(const CompiledSentence& compiled, qsim::ParamStore& params, Rng& rng) {
  for (const std::string& name : compiled.param_names) {
    if (!params.contains(name)) params.set(name, rng.uniform(0.0, 2.0 * std::numbers::pi));
  }
}

nlohmann::json sidecar_json(const CompiledSentence& compiled) {
  nlohmann::json post = nlohmann::json::object();
  for (const auto& [q, bit] : compiled.postselect) post[std::to_string(q)] = bit;
  return {{"postselect", post}, {"s_qubits", compiled.s_qubits}};
}

CompiledSentence compile_tokens(std::span<const std::string> tokens, const grammar::Lexicon& lexicon,
                                const AnsatzConfig& ansatz, bool bend) {
  const auto typed = grammar::assign_types(tokens, lexicon);
  Diagram d = build_diagram(grammar::reduce(typed));
  if (bend) d = bend_rewrite(std::move(d));
  return compile(d, ansatz);
}

}  // namespace qnlp::discocat
