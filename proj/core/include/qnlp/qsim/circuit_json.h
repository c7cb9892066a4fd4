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

#include <nlohmann/json.hpp>

#include "qnlp/qsim/circuit.h"

namespace qnlp::qsim {

// {"n_qubits": 3,
//  "gates": [{"kind": "RY", "targets": [0], "param": {"sym": "loves_0"}},
//            {"kind": "CNOT", "targets": [0, 1]},
//            {"kind": "RZ", "targets": [2], "param": {"lit": 0.5}}]}
nlohmann::json to_json(const Circuit& circuit);

/// Throws FormatError on malformed input and validates the result.
Circuit circuit_from_json(const nlohmann::json& j);

}  // namespace qnlp::qsim
