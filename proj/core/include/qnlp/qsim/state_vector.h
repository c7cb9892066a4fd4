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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qnlp::qsim {

using Complex = std::complex<double>;

/// Dense amplitude vector over 2^n basis states; bit i of the basis index is
/// the state of qubit i.
class StateVector {
 public:
  StateVector() : StateVector(0) {}

  /// |0...0> on n qubits.
  explicit StateVector(int n_qubits);

  /// Takes ownership of amplitudes; the length must be a power of two.
  static StateVector from_amplitudes(std::vector<Complex> amplitudes);

  /// Computational basis state |index>.
  static StateVector basis(int n_qubits, std::size_t index);

  int n_qubits() const { return n_qubits_; }
  std::size_t size() const { return amps_.size(); }

  std::span<Complex> amplitudes() { return amps_; }
  std::span<const Complex> amplitudes() const { return amps_; }

  Complex& operator[](std::size_t i) { return amps_[i]; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const;

 private:
  int n_qubits_;
  std::vector<Complex> amps_;
};

}  // namespace qnlp::qsim
