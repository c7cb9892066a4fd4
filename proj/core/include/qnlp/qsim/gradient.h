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

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qnlp/qsim/circuit.h"
#include "qnlp/qsim/state_vector.h"

namespace qnlp::qsim {

/// Shift used for RX/RY/RZ occurrences: d f / d t = (f(t + s) - f(t - s)) / 2.
inline constexpr double kParamShift = 1.5707963267948966;  // pi / 2
/// Central finite-difference step used for CRZ occurrences.
inline constexpr double kCrzFiniteDifferenceStep = 1e-6;

using ScalarFn = std::function<double(const StateVector&)>;
using VectorFn = std::function<std::vector<double>(const StateVector&)>;

/// Derivatives of a vector-valued readout with respect to the angle of each
/// listed gate occurrence. Row k holds d readout / d angle(gates[k]).
/// Rotation gates use the two-term shift rule, CRZ uses central differences.
/// Every listed gate must be parameterized.
std::vector<std::vector<double>> gate_jacobian(
    const Circuit& circuit, const ParamStore& params,
    std::span<const std::size_t> gate_indices, const VectorFn& readout);

/// Gradient of scalar_fn(final state) for every entry of the store. A symbol
/// shared by several gates gets the sum of its per-occurrence derivatives;
/// entries absent from the circuit get 0.
std::map<std::string, double> param_shift_grad(const Circuit& circuit,
                                               const ParamStore& params,
                                               const ScalarFn& scalar_fn);

/// Vector-readout variant restricted to the circuit's own symbols.
std::map<std::string, std::vector<double>> param_shift_jacobian(
    const Circuit& circuit, const ParamStore& params, const VectorFn& readout);

}  // namespace qnlp::qsim
