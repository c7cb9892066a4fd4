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

#include "qnlp/qsim/circuit.h"

#include <algorithm>
#include <unordered_set>

#include "qnlp/error.h"

namespace qnlp::qsim {

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::kH: return "H";
    case GateKind::kRX: return "RX";
    case GateKind::kRY: return "RY";
    case GateKind::kRZ: return "RZ";
    case GateKind::kCNOT: return "CNOT";
    case GateKind::kCRZ: return "CRZ";
  }
  return "?";
}

std::optional<GateKind> gate_kind_from_string(std::string_view name) {
  for (GateKind k : {GateKind::kH, GateKind::kRX, GateKind::kRY, GateKind::kRZ,
                     GateKind::kCNOT, GateKind::kCRZ}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

void Circuit::validate() const {
  if (n_qubits < 0) fail(ErrorCode::kInvalidArgument, "negative qubit count");
  for (std::size_t g = 0; g < gates.size(); ++g) {
    const Gate& gate = gates[g];
    auto qs = gate.qubits();
    for (int q : qs) {
      if (q < 0 || q >= n_qubits) {
        fail(ErrorCode::kInvalidTarget,
             "gate " + std::to_string(g) + " (" + std::string(to_string(gate.kind)) +
                 ") targets qubit " + std::to_string(q) + " of a " +
                 std::to_string(n_qubits) + "-qubit circuit");
      }
    }
    if (qs.size() == 2 && qs[0] == qs[1]) {
      fail(ErrorCode::kInvalidTarget,
           "gate " + std::to_string(g) + " has repeated target " + std::to_string(qs[0]));
    }
    if (is_parameterized(gate.kind) != gate.param.has_value()) {
      fail(ErrorCode::kInvalidArgument,
           "gate " + std::to_string(g) + " (" + std::string(to_string(gate.kind)) +
               (gate.param ? ") must not carry a parameter" : ") requires a parameter"));
    }
  }
}

std::vector<std::string> Circuit::symbols() const {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const Gate& gate : gates) {
    if (!gate.param) continue;
    if (const auto* sym = std::get_if<Symbol>(&*gate.param)) {
      if (seen.insert(sym->name).second) out.push_back(sym->name);
    }
  }
  return out;
}

void ParamStore::set(const std::string& name, double value) {
  if (auto it = index_.find(name); it != index_.end()) {
    values_[it->second] = value;
    return;
  }
  index_.emplace(name, values_.size());
  names_.push_back(name);
  values_.push_back(value);
}

double ParamStore::get(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) {
    fail(ErrorCode::kUnresolvedParam, "no value for parameter '" + std::string(name) + "'");
  }
  return values_[it->second];
}

bool ParamStore::contains(std::string_view name) const {
  return index_.find(name) != index_.end();
}

std::optional<std::size_t> ParamStore::index_of(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double ParamStore::resolve(const Angle& angle) const {
  if (const double* lit = std::get_if<double>(&angle)) return *lit;
  return get(std::get<Symbol>(angle).name);
}

}  // namespace qnlp::qsim
