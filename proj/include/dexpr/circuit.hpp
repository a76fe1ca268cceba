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

#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "dexpr/pauli.hpp"
#include "dexpr/state.hpp"

namespace dexpr {

/** exp(-i theta_slot/2 G) with G a Pauli string or a sum of strings. */
struct Rotation {
  PauliSum generator;
  unsigned slot = 0;

  bool operator==(const Rotation& o) const = default;
};

using Gate = std::variant<FixedGate, Rotation>;

/** Point in parameter space, one angle per slot, in radians. */
using ParameterPoint = Eigen::VectorXd;

/**
 * Ordered gate list acting on a computational basis state.
 *
 * Several rotations may share a slot; that is how translation-invariant
 * layers are expressed. Every slot in [0, N) must be used by some gate
 * before the circuit is evaluated (see check_complete).
 */
class ParametricCircuit {
 public:
  ParametricCircuit() = default;
  ParametricCircuit(unsigned qubits, unsigned num_params);

  unsigned qubits() const { return qubits_; }
  unsigned num_params() const { return num_params_; }
  std::uint64_t initial_state() const { return initial_; }
  void set_initial_state(std::uint64_t index);
  const std::vector<Gate>& gates() const { return gates_; }

  void add(const FixedGate& g);
  void add_rotation(const PauliString& p, unsigned slot);
  void add_rotation(const PauliSum& h, unsigned slot);

  void rx(unsigned q, unsigned slot) { add_single(q, Pauli::X, slot); }
  void ry(unsigned q, unsigned slot) { add_single(q, Pauli::Y, slot); }
  void rz(unsigned q, unsigned slot) { add_single(q, Pauli::Z, slot); }
  void cx(unsigned control, unsigned target) {
    add(FixedGate::two(FixedKind::CX, control, target));
  }

  /** Throws DimensionError naming the first slot no gate uses. */
  void check_complete() const;

  /** Gate positions carrying the slot, in circuit order. */
  std::vector<std::size_t> gates_on_slot(unsigned slot) const;
  /** Number of insertion terms (Pauli terms over all gates) of the slot. */
  std::size_t num_insertions(unsigned slot) const;
  std::size_t num_rotations() const;

  bool operator==(const ParametricCircuit& o) const = default;

 private:
  void add_single(unsigned q, Pauli p, unsigned slot);

  unsigned qubits_ = 0;
  unsigned num_params_ = 0;
  std::uint64_t initial_ = 0;
  std::vector<Gate> gates_;
};

/**
 * The circuit output with one generator term inserted right after its gate.
 *
 * state has unit norm; coeff is the term weight, so the slot derivative is
 * (-i/2) sum coeff * state over the slot's terms.
 */
struct InsertionTerm {
  unsigned slot = 0;
  std::size_t gate_position = 0;
  std::size_t term_index = 0;
  double coeff = 1.0;
  StateVector state;
};

StateVector apply_gate(const StateVector& psi, const Gate& g,
                       const ParameterPoint& theta, bool adjoint = false);

StateVector evaluate(const ParametricCircuit& c, const ParameterPoint& theta);

std::vector<InsertionTerm> insertion_terms(
    const ParametricCircuit& c, const ParameterPoint& theta, unsigned slot);

/** Insertion terms of every slot from one forward sweep; index = slot. */
std::vector<std::vector<InsertionTerm>> all_insertion_terms(
    const ParametricCircuit& c, const ParameterPoint& theta);

/** d C / d theta_slot, including the -i/2 factor and all shared gates. */
StateVector derivative_state(
    const ParametricCircuit& c, const ParameterPoint& theta, unsigned slot);

StateVector combine_terms(const std::vector<InsertionTerm>& terms);

/**
 * Prepends one rotation per probe generator on fresh slots 0..p-1; the
 * original slots move up by p. At probe angle 0 the output is unchanged.
 */
ParametricCircuit prepend_probe(
    const ParametricCircuit& c, const std::vector<PauliSum>& probes);

/** Zero probe angles followed by theta. */
ParameterPoint probed_point(const ParameterPoint& theta, std::size_t probes);

/**
 * Relabels slots: old slot i becomes slot perm[i]. The gate list is kept.
 */
ParametricCircuit reorder_parameters(
    const ParametricCircuit& c, const std::vector<unsigned>& perm);

/** Moves theta along with reorder_parameters: out[perm[i]] = theta[i]. */
ParameterPoint permute_point(
    const ParameterPoint& theta, const std::vector<unsigned>& perm);

/**
 * EfficientSU2 with full entanglement: reps + 1 blocks of R_Y then R_Z on
 * every qubit, separated by CX(i, j) for all i < j. Block b binds slots
 * 2Qb + q (R_Y) and 2Qb + Q + q (R_Z).
 */
ParametricCircuit efficient_su2(unsigned qubits, unsigned reps);

void check_point(const ParametricCircuit& c, const ParameterPoint& theta);

}  // namespace dexpr
