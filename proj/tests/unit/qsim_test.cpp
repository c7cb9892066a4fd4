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

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "oracle.h"
#include "qnlp/error.h"
#include "qnlp/qsim/circuit.h"
#include "qnlp/qsim/simulator.h"
#include "qnlp/qsim/state_vector.h"
#include "qnlp/rng.h"

namespace qnlp::qsim {
namespace {

using testing::error_code_of;

StateVector random_state(Rng& rng, int n) {
  std::vector<Complex> a(std::size_t{1} << n);
  double norm = 0.0;
  for (auto& x : a) {
    x = {rng.normal(), rng.normal()};
    norm += std::norm(x);
  }
  for (auto& x : a) x /= std::sqrt(norm);
  return StateVector::from_amplitudes(std::move(a));
}

std::vector<Complex> to_vector(const StateVector& s) {
  return {s.amplitudes().begin(), s.amplitudes().end()};
}

std::vector<Complex> apply_matrix(const testing::Dense& m, const StateVector& s) {
  std::vector<Complex> out(m.dim);
  for (std::size_t r = 0; r < m.dim; ++r) {
    for (std::size_t c = 0; c < m.dim; ++c) out[r] += m.at(r, c) * s[c];
  }
  return out;
}

TEST(StateVector, ZeroStateAndBasis) {
  StateVector s(3);
  EXPECT_EQ(s.size(), 8u);
  EXPECT_EQ(s[0], Complex(1.0));
  EXPECT_DOUBLE_EQ(s.norm_squared(), 1.0);
  StateVector b = StateVector::basis(2, 3);
  EXPECT_EQ(b[3], Complex(1.0));
  EXPECT_EQ(b[0], Complex(0.0));
}

TEST(StateVector, RejectsNonPowerOfTwo) {
  EXPECT_EQ(error_code_of([] { StateVector::from_amplitudes(std::vector<Complex>(3)); }),
            ErrorCode::kDimensionMismatch);
}

TEST(ApplyGate, HadamardOnZero) {
  ParamStore p;
  StateVector s = apply_gate(StateVector(1), Gate::h(0), p);
  EXPECT_NEAR(s[0].real(), M_SQRT1_2, 1e-15);
  EXPECT_NEAR(s[1].real(), M_SQRT1_2, 1e-15);
  EXPECT_NEAR(s[0].imag(), 0.0, 1e-15);
}

TEST(ApplyGate, ZeroRzIsIdentical) {
  Rng rng(1);
  ParamStore p;
  const StateVector in = random_state(rng, 3);
  const StateVector out = apply_gate(in, Gate::rz(1, 0.0), p);
  for (std::size_t i = 0; i < in.size(); ++i) EXPECT_EQ(out[i], in[i]);
}

TEST(ApplyGate, CrzOnElevenMatchesMatrix) {
  ParamStore p;
  const double theta = 0.7;
  const Gate g = Gate::crz(1, 0, theta);
  const StateVector in = StateVector::basis(2, 3);
  const StateVector out = apply_gate(in, g, p);
  EXPECT_NEAR(std::abs(out[3] - std::exp(Complex(0, theta))), 0.0, 1e-15);
  const auto expected = apply_matrix(testing::gate_unitary(g, theta, 2), in);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(out[i] - expected[i]), 0.0, 1e-15);
}

TEST(ApplyGate, CrzOnlyPhasesControlAndTargetSet) {
  ParamStore p;
  Rng rng(4);
  const StateVector in = random_state(rng, 3);
  const StateVector out = apply_gate(in, Gate::crz(2, 0, 1.1), p);
  for (std::size_t i = 0; i < 8; ++i) {
    const bool both = (i & 1u) && (i & 4u);
    const Complex expected = both ? in[i] * std::exp(Complex(0, 1.1)) : in[i];
    EXPECT_NEAR(std::abs(out[i] - expected), 0.0, 1e-15);
  }
}

TEST(ApplyGate, SymbolicParamResolves) {
  ParamStore p;
  p.set("a", 0.4);
  const StateVector sym = apply_gate(StateVector(1), Gate::ry(0, Symbol{"a"}), p);
  const StateVector lit = apply_gate(StateVector(1), Gate::ry(0, 0.4), p);
  EXPECT_EQ(sym[0], lit[0]);
  EXPECT_EQ(sym[1], lit[1]);
}

TEST(ApplyGate, Errors) {
  ParamStore p;
  EXPECT_EQ(error_code_of([&] { apply_gate(StateVector(1), Gate::ry(0, Symbol{"missing"}), p); }),
            ErrorCode::kUnresolvedParam);
  EXPECT_EQ(error_code_of([&] { apply_gate(StateVector(2), Gate::h(2), p); }),
            ErrorCode::kInvalidTarget);
  EXPECT_EQ(error_code_of([&] { apply_gate(StateVector(2), Gate::cnot(1, 1), p); }),
            ErrorCode::kInvalidTarget);
  EXPECT_EQ(error_code_of([&] { apply_gate(StateVector(2), Gate::h(-1), p); }),
            ErrorCode::kInvalidTarget);
}

TEST(ApplyGate, PreservesNormForEveryGateKind) {
  Rng rng(2);
  ParamStore p;
  for (int trial = 0; trial < 200; ++trial) {
    const StateVector in = random_state(rng, 3);
    const auto kind = static_cast<GateKind>(trial % 6);
    Gate g;
    g.kind = kind;
    g.targets = {static_cast<int>(rng.index(3)), 0};
    if (arity(kind) == 2) g.targets[1] = (g.targets[0] + 1 + static_cast<int>(rng.index(2))) % 3;
    if (is_parameterized(kind)) g.param = rng.uniform(-6.0, 6.0);
    const StateVector out = apply_gate(in, g, p);
    EXPECT_NEAR(out.norm_squared(), 1.0, 1e-12) << to_string(kind);
  }
}

TEST(RunCircuit, EmptyCircuitKeepsInitial) {
  Circuit c;
  c.n_qubits = 3;
  const StateVector out = run_circuit(c, ParamStore{});
  EXPECT_EQ(out.n_qubits(), 3);
  EXPECT_EQ(out[0], Complex(1.0));
  Rng rng(5);
  const StateVector init = random_state(rng, 3);
  const StateVector same = run_circuit(c, ParamStore{}, init);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(same[i], init[i]);
}

TEST(RunCircuit, EulerPiFlipsToOne) {
  ParamStore p;
  p.set("t1", M_PI);
  p.set("t2", 0.0);
  p.set("t3", 0.0);
  Circuit c{1, {Gate::rx(0, Symbol{"t1"}), Gate::rz(0, Symbol{"t2"}), Gate::rx(0, Symbol{"t3"})}};
  const StateVector s = run_circuit(c, p);
  EXPECT_NEAR(std::abs(s[0]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s[1]), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(s[1] - Complex(0, -1)), 0.0, 1e-15);
}

TEST(RunCircuit, FourQubitTwentyGatesMatchesOracle) {
  Rng rng(11);
  int checked = 0;
  while (checked < 25) {
    ParamStore p;
    Circuit c = testing::random_circuit(rng, 4, 20, &p);
    if (c.n_qubits != 4 || c.gates.size() != 20) continue;
    const StateVector s = run_circuit(c, p);
    const auto oracle = testing::oracle_state(c, p);
    for (std::size_t i = 0; i < 16; ++i) EXPECT_NEAR(std::abs(s[i] - oracle[i]), 0.0, 1e-10);
    ++checked;
  }
}

TEST(RunCircuit, ThousandRandomCircuitsMatchOracle) {
  Rng rng(12);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    ParamStore p;
    const Circuit c = testing::random_circuit(rng, 5, 30, &p);
    const StateVector s = run_circuit(c, p);
    const auto oracle = testing::oracle_state(c, p);
    for (std::size_t i = 0; i < s.size(); ++i) worst = std::max(worst, std::abs(s[i] - oracle[i]));
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-10);
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(RunCircuit, DimensionMismatchOnInitial) {
  Circuit c{2, {Gate::h(0)}};
  EXPECT_EQ(error_code_of([&] { run_circuit(c, ParamStore{}, StateVector(3)); }),
            ErrorCode::kDimensionMismatch);
}

TEST(ExpectationZ, BasicValues) {
  ParamStore p;
  EXPECT_DOUBLE_EQ(expectation_z(StateVector(1), 0), 1.0);
  EXPECT_NEAR(expectation_z(apply_gate(StateVector(1), Gate::h(0), p), 0), 0.0, 1e-12);
  EXPECT_NEAR(expectation_z(apply_gate(StateVector(1), Gate::ry(0, 0.6), p), 0), std::cos(0.6),
              1e-15);
  EXPECT_DOUBLE_EQ(expectation_z(StateVector::basis(2, 2), 1), -1.0);
  EXPECT_DOUBLE_EQ(expectation_z(StateVector::basis(2, 2), 0), 1.0);
  EXPECT_EQ(error_code_of([] { expectation_z(StateVector(2), 2); }), ErrorCode::kInvalidTarget);
}

TEST(ExpectationZ, AllQubitsAgreesWithSingle) {
  Rng rng(6);
  const StateVector s = random_state(rng, 4);
  const auto all = expectation_z_all(s);
  ASSERT_EQ(all.size(), 4u);
  for (int q = 0; q < 4; ++q) EXPECT_NEAR(all[static_cast<std::size_t>(q)], expectation_z(s, q), 1e-14);
}

TEST(Postselect, QubitZeroOfZeroZero) {
  const auto r = postselect(StateVector(2), {{0, 0}});
  EXPECT_DOUBLE_EQ(r.success_prob, 1.0);
  ASSERT_FALSE(r.degenerate());
  EXPECT_EQ(r.conditional->n_qubits(), 1);
  EXPECT_NEAR(std::abs((*r.conditional)[0]), 1.0, 1e-15);
}

TEST(Postselect, BellStateMarginal) {
  const StateVector bell = StateVector::from_amplitudes({M_SQRT1_2, 0.0, 0.0, M_SQRT1_2});
  const auto r = postselect(bell, {{0, 0}});
  EXPECT_NEAR(r.success_prob, 0.5, 1e-15);
  ASSERT_FALSE(r.degenerate());
  EXPECT_NEAR(std::abs((*r.conditional)[0]), 1.0, 1e-15);
  EXPECT_NEAR(std::abs((*r.conditional)[1]), 0.0, 1e-15);
}

TEST(Postselect, DegenerateReturnsNoState) {
  const auto r = postselect(StateVector(2), {{1, 1}});
  EXPECT_DOUBLE_EQ(r.success_prob, 0.0);
  EXPECT_TRUE(r.degenerate());
}

TEST(Postselect, RandomStateMatchesEnumeration) {
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const StateVector s = random_state(rng, 4);
    const auto r = postselect(s, {{1, 0}, {3, 0}});
    double expected = 0.0;
    std::vector<Complex> kept;
    for (std::size_t i = 0; i < 16; ++i) {
      if (((i >> 1) & 1u) == 0 && ((i >> 3) & 1u) == 0) {
        expected += std::norm(s[i]);
        kept.push_back(s[i]);
      }
    }
    EXPECT_NEAR(r.success_prob, expected, 1e-12);
    ASSERT_FALSE(r.degenerate());
    ASSERT_EQ(r.conditional->size(), 4u);
    // Remaining qubits 0 and 2 become 0 and 1 of the conditional state.
    for (std::size_t k = 0; k < 4; ++k) {
      EXPECT_NEAR(std::abs((*r.conditional)[k] - kept[k] / std::sqrt(expected)), 0.0, 1e-12);
    }
  }
}

TEST(Postselect, OutcomesPartitionUnity) {
  Rng rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const StateVector s = random_state(rng, 5);
    const std::vector<int> qubits{0, 2, 4};
    double total = 0.0;
    for (int bits = 0; bits < 8; ++bits) {
      PostselectPattern pattern;
      for (std::size_t k = 0; k < qubits.size(); ++k) pattern[qubits[k]] = (bits >> k) & 1;
      const auto r = postselect(s, pattern);
      total += r.success_prob;
      if (!r.degenerate()) EXPECT_NEAR(r.conditional->norm_squared(), 1.0, 1e-12);
    }
    EXPECT_NEAR(total, 1.0, 1e-10);
  }
}

TEST(Postselect, InvalidPattern) {
  EXPECT_EQ(error_code_of([] { postselect(StateVector(2), {{2, 0}}); }), ErrorCode::kInvalidTarget);
  EXPECT_EQ(error_code_of([] { postselect(StateVector(2), {{0, 2}}); }),
            ErrorCode::kInvalidArgument);
}

TEST(ParamStore, InsertionOrderAndOverwrite) {
  ParamStore p;
  p.set("b", 1.0);
  p.set("a", 2.0);
  p.set("b", 3.0);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p.names()[0], "b");
  EXPECT_DOUBLE_EQ(p.values()[0], 3.0);
  EXPECT_EQ(p.index_of("a"), std::optional<std::size_t>(1));
  EXPECT_FALSE(p.index_of("c").has_value());
  EXPECT_EQ(error_code_of([&] { p.get("c"); }), ErrorCode::kUnresolvedParam);
}

TEST(Circuit, SymbolsInFirstAppearanceOrder) {
  Circuit c{2, {Gate::rz(0, Symbol{"y"}), Gate::h(1), Gate::crz(0, 1, Symbol{"x"}),
                Gate::rx(1, Symbol{"y"}), Gate::ry(0, 0.3)}};
  EXPECT_EQ(c.symbols(), (std::vector<std::string>{"y", "x"}));
}

TEST(Circuit, ValidateCatchesBadGates) {
  EXPECT_EQ(error_code_of([] { Circuit{1, {Gate::cnot(0, 1)}}.validate(); }),
            ErrorCode::kInvalidTarget);
  Gate h_with_param = Gate::h(0);
  h_with_param.param = 0.1;
  EXPECT_EQ(error_code_of([&] { Circuit{1, {h_with_param}}.validate(); }),
            ErrorCode::kInvalidArgument);
  Gate ry_no_param = Gate::ry(0, 0.0);
  ry_no_param.param.reset();
  EXPECT_EQ(error_code_of([&] { Circuit{1, {ry_no_param}}.validate(); }),
            ErrorCode::kInvalidArgument);
}

}  // namespace
}  // namespace qnlp::qsim
