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

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace qnlp::qsim {

// Gate conventions (bit-exact, shared with the circuit JSON format):
//   RX(t) = exp(-i t X / 2), RY(t) = exp(-i t Y / 2), RZ(t) = exp(-i t Z / 2)
//   CNOT(control, target)
//   CRZ(t)(control, target) = diag(1, 1, 1, e^{i t}) in control (x) target order
// Qubit 0 is the least significant bit of the basis index.
enum class GateKind { kH, kRX, kRY, kRZ, kCNOT, kCRZ };

std::string_view to_string(GateKind kind);
std::optional<GateKind> gate_kind_from_string(std::string_view name);

constexpr int arity(GateKind kind) {
  return (kind == GateKind::kCNOT || kind == GateKind::kCRZ) ? 2 : 1;
}

constexpr bool is_parameterized(GateKind kind) {
  return kind == GateKind::kRX || kind == GateKind::kRY ||
         kind == GateKind::kRZ || kind == GateKind::kCRZ;
}

/// Name of an entry in a ParamStore.
struct Symbol {
  std::string name;
  bool operator==(const Symbol&) const = default;
};

/// A rotation angle: a literal value in radians or a symbolic reference.
using Angle = std::variant<double, Symbol>;

struct Gate {
  GateKind kind = GateKind::kH;
  /// For two-qubit gates targets[0] is the control.
  std::array<int, 2> targets{0, 0};
  std::optional<Angle> param;

  std::span<const int> qubits() const {
    return {targets.data(), static_cast<std::size_t>(arity(kind))};
  }

  bool operator==(const Gate&) const = default;

  static Gate h(int q) { return {GateKind::kH, {q, 0}, std::nullopt}; }
  static Gate rx(int q, Angle a) { return {GateKind::kRX, {q, 0}, std::move(a)}; }
  static Gate ry(int q, Angle a) { return {GateKind::kRY, {q, 0}, std::move(a)}; }
  static Gate rz(int q, Angle a) { return {GateKind::kRZ, {q, 0}, std::move(a)}; }
  static Gate cnot(int control, int target) {
    return {GateKind::kCNOT, {control, target}, std::nullopt};
  }
  static Gate crz(int control, int target, Angle a) {
    return {GateKind::kCRZ, {control, target}, std::move(a)};
  }
};

struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;

  /// Throws InvalidTarget / InvalidArgument when a gate does not fit.
  void validate() const;

  /// Symbols referenced by the circuit, in first-appearance order.
  std::vector<std::string> symbols() const;

  bool operator==(const Circuit&) const = default;
};

/// Named angle table. Insertion order is preserved so the flat value array
/// can be handed to an optimizer directly.
class ParamStore {
 public:
  ParamStore() = default;

  /// Inserts or overwrites.
  void set(const std::string& name, double value);
  double get(std::string_view name) const;  // throws UnresolvedParam
  bool contains(std::string_view name) const;
  std::optional<std::size_t> index_of(std::string_view name) const;

  std::size_t size() const { return values_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  double resolve(const Angle& angle) const;

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::vector<std::string> names_;
  std::vector<double> values_;
  std::unordered_map<std::string, std::size_t, Hash, std::equal_to<>> index_;
};

}  // namespace qnlp::qsim
