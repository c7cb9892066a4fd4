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

#include "qnlp/qsim/circuit_json.h"

#include "qnlp/error.h"

namespace qnlp::qsim {

using nlohmann::json;

json to_json(const Circuit& circuit) {
  json gates = json::array();
  for (const Gate& gate : circuit.gates) {
    json g;
    g["kind"] = std::string(to_string(gate.kind));
    auto qs = gate.qubits();
    g["targets"] = std::vector<int>(qs.begin(), qs.end());
    if (gate.param) {
      if (const auto* sym = std::get_if<Symbol>(&*gate.param)) {
        g["param"] = {{"sym", sym->name}};
      } else {
        g["param"] = {{"lit", std::get<double>(*gate.param)}};
      }
    }
    gates.push_back(std::move(g));
  }
  return {{"n_qubits", circuit.n_qubits}, {"gates", std::move(gates)}};
}

Circuit circuit_from_json(const json& j) {
  Circuit circuit;
  try {
    circuit.n_qubits = j.at("n_qubits").get<int>();
    for (const json& g : j.at("gates")) {
      const auto kind_name = g.at("kind").get<std::string>();
      auto kind = gate_kind_from_string(kind_name);
      if (!kind) fail(ErrorCode::kFormatError, "unknown gate kind '" + kind_name + "'");
      Gate gate;
      gate.kind = *kind;
      const auto targets = g.at("targets").get<std::vector<int>>();
      if (targets.size() != static_cast<std::size_t>(arity(*kind))) {
        fail(ErrorCode::kFormatError,
             kind_name + " expects " + std::to_string(arity(*kind)) + " targets");
      }
      for (std::size_t k = 0; k < targets.size(); ++k) gate.targets[k] = targets[k];
      if (g.contains("param")) {
        const json& p = g.at("param");
        if (p.contains("sym")) {
          gate.param = Symbol{p.at("sym").get<std::string>()};
        } else if (p.contains("lit")) {
          gate.param = p.at("lit").get<double>();
        } else {
          fail(ErrorCode::kFormatError, "param must be {\"sym\": ...} or {\"lit\": ...}");
        }
      }
      circuit.gates.push_back(std::move(gate));
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::kFormatError, std::string("circuit JSON: ") + e.what());
  }
  circuit.validate();
  return circuit;
}

}  // namespace qnlp::qsim
