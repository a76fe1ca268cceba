// Copyright 2026 The dexpr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dexpr/state.hpp"

namespace dexpr {

StateVector basis_state(unsigned qubits, std::uint64_t index) {
  if (qubits == 0 || qubits > 30)
    throw DimensionError("state needs between 1 and 30 qubits");
  const std::uint64_t dim = std::uint64_t{1} << qubits;
  if (index >= dim) throw DimensionError("basis index out of range");
  StateVector psi = StateVector::Zero(static_cast<Eigen::Index>(dim));
  psi(static_cast<Eigen::Index>(index)) = 1.0;
  return psi;
}

bool is_single_qubit(FixedKind kind) {
  return kind == FixedKind::X || kind == FixedKind::Y ||
         kind == FixedKind::Z || kind == FixedKind::H || kind == FixedKind::S;
}

std::string kind_name(FixedKind kind) {
  switch (kind) {
    case FixedKind::X: return "x";
    case FixedKind::Y: return "y";
    case FixedKind::Z: return "z";
    case FixedKind::H: return "h";
    case FixedKind::S: return "s";
    case FixedKind::CX: return "cx";
    case FixedKind::CZ: return "cz";
    case FixedKind::SWAP: return "swap";
    case FixedKind::ControlledPauli: return "cp";
  }
  return "?";
}

FixedGate FixedGate::single(FixedKind kind, unsigned q) {
  if (!is_single_qubit(kind))
    throw DimensionError(kind_name(kind) + " is not a single-qubit gate");
  FixedGate g;
  g.kind = kind;
  g.a = q;
  return g;
}

FixedGate FixedGate::two(FixedKind kind, unsigned a, unsigned b) {
  if (kind != FixedKind::CX && kind != FixedKind::CZ &&
      kind != FixedKind::SWAP)
    throw DimensionError(kind_name(kind) + " is not a two-qubit gate");
  FixedGate g;
  g.kind = kind;
  g.a = a;
  g.b = b;
  return g;
}

FixedGate FixedGate::controlled(
    unsigned control, int value, const PauliString& p) {
  FixedGate g;
  g.kind = FixedKind::ControlledPauli;
  g.a = control;
  g.control_value = value;
  g.pauli = p.unweighted();
  return g;
}

bool FixedGate::operator==(const FixedGate& o) const {
  if (kind != o.kind || a != o.a) return false;
  if (is_single_qubit(kind)) return true;
  if (kind == FixedKind::ControlledPauli)
    return control_value == o.control_value && pauli == o.pauli;
  return b == o.b;
}

void validate(const FixedGate& g, unsigned qubits) {
  if (g.a >= qubits)
    throw DimensionError(
        kind_name(g.kind) + " acts on qubit " + std::to_string(g.a) +
        " outside a " + std::to_string(qubits) + "-qubit register");
  if (is_single_qubit(g.kind)) return;
  if (g.kind == FixedKind::ControlledPauli) {
    if (g.control_value != 0 && g.control_value != 1)
      throw DimensionError("control value must be 0 or 1");
    if (g.pauli.qubits() != qubits)
      throw DimensionError("controlled Pauli spans the wrong register");
    if (g.pauli.letter(g.a) != Pauli::I)
      throw DimensionError("controlled Pauli acts on its own control");
    return;
  }
  if (g.b >= qubits)
    throw DimensionError(
        kind_name(g.kind) + " acts on qubit " + std::to_string(g.b) +
        " outside a " + std::to_string(qubits) + "-qubit register");
  if (g.a == g.b)
    throw DimensionError(kind_name(g.kind) + " needs two distinct qubits");
}

}  // namespace dexpr
