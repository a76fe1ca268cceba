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

#include "dexpr/circuit.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace dexpr {

ParametricCircuit::ParametricCircuit(unsigned qubits, unsigned num_params)
    : qubits_(qubits), num_params_(num_params) {
  if (qubits == 0 || qubits > 30)
    throw DimensionError("circuit needs between 1 and 30 qubits");
}

void ParametricCircuit::set_initial_state(std::uint64_t index) {
  if (index >= (std::uint64_t{1} << qubits_))
    throw DimensionError("initial state index out of range");
  initial_ = index;
}

void ParametricCircuit::add(const FixedGate& g) {
  validate(g, qubits_);
  gates_.emplace_back(g);
}

void ParametricCircuit::add_rotation(const PauliString& p, unsigned slot) {
  add_rotation(PauliSum{p}, slot);
}

void ParametricCircuit::add_rotation(const PauliSum& h, unsigned slot) {
  if (slot >= num_params_)
    throw DimensionError(
        "parameter slot " + std::to_string(slot) + " out of range for " +
        std::to_string(num_params_) + " parameters");
  if (h.terms.empty()) throw DimensionError("rotation without generator");
  if (h.qubits != qubits_)
    throw DimensionError("rotation generator spans the wrong register");
  gates_.emplace_back(Rotation{h, slot});
}

void ParametricCircuit::add_single(unsigned q, Pauli p, unsigned slot) {
  if (q >= qubits_) throw DimensionError("qubit index out of range");
  add_rotation(PauliString::single(qubits_, q, p), slot);
}

void ParametricCircuit::check_complete() const {
  std::vector<bool> used(num_params_, false);
  for (const auto& g : gates_)
    if (const auto* r = std::get_if<Rotation>(&g)) used[r->slot] = true;
  for (unsigned s = 0; s < num_params_; ++s)
    if (!used[s])
      throw DimensionError(
          "parameter slot " + std::to_string(s) + " is not used by any gate");
}

std::vector<std::size_t> ParametricCircuit::gates_on_slot(unsigned slot) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < gates_.size(); ++k)
    if (const auto* r = std::get_if<Rotation>(&gates_[k]); r && r->slot == slot)
      out.push_back(k);
  return out;
}

std::size_t ParametricCircuit::num_insertions(unsigned slot) const {
  std::size_t n = 0;
  for (std::size_t k : gates_on_slot(slot))
    n += std::get<Rotation>(gates_[k]).generator.terms.size();
  return n;
}

std::size_t ParametricCircuit::num_rotations() const {
  return static_cast<std::size_t>(std::count_if(
      gates_.begin(), gates_.end(),
      [](const Gate& g) { return std::holds_alternative<Rotation>(g); }));
}

void check_point(const ParametricCircuit& c, const ParameterPoint& theta) {
  if (theta.size() != static_cast<Eigen::Index>(c.num_params()))
    throw DimensionError(
        "parameter point has " + std::to_string(theta.size()) +
        " entries, circuit has " + std::to_string(c.num_params()) + " slots");
}

StateVector apply_gate(const StateVector& psi, const Gate& g,
                       const ParameterPoint& theta, bool adjoint) {
  if (const auto* f = std::get_if<FixedGate>(&g))
    return apply_fixed(psi, *f, adjoint);
  const auto& r = std::get<Rotation>(g);
  const double angle = theta(r.slot);
  return apply_rotation(psi, r.generator, adjoint ? -angle : angle);
}

StateVector evaluate(const ParametricCircuit& c, const ParameterPoint& theta) {
  check_point(c, theta);
  StateVector psi = basis_state(c.qubits(), c.initial_state());
  for (const auto& g : c.gates()) psi = apply_gate(psi, g, theta);
  return psi;
}

namespace {

/** Applies gates[from, end) to psi. */
StateVector finish(const ParametricCircuit& c, const ParameterPoint& theta,
                   StateVector psi, std::size_t from) {
  const auto& gates = c.gates();
  for (std::size_t k = from; k < gates.size(); ++k)
    psi = apply_gate(psi, gates[k], theta);
  return psi;
}

}  // namespace

std::vector<std::vector<InsertionTerm>> all_insertion_terms(
    const ParametricCircuit& c, const ParameterPoint& theta) {
  check_point(c, theta);
  std::vector<std::vector<InsertionTerm>> out(c.num_params());
  StateVector psi = basis_state(c.qubits(), c.initial_state());
  const auto& gates = c.gates();
  for (std::size_t k = 0; k < gates.size(); ++k) {
    psi = apply_gate(psi, gates[k], theta);
    const auto* r = std::get_if<Rotation>(&gates[k]);
    if (!r) continue;
    const auto& terms = r->generator.terms;
    for (std::size_t a = 0; a < terms.size(); ++a) {
      InsertionTerm t;
      t.slot = r->slot;
      t.gate_position = k;
      t.term_index = a;
      t.coeff = terms[a].coeff();
      t.state = finish(c, theta, apply_pauli(psi, terms[a].unweighted()), k + 1);
      out[r->slot].push_back(std::move(t));
    }
  }
  return out;
}

std::vector<InsertionTerm> insertion_terms(
    const ParametricCircuit& c, const ParameterPoint& theta, unsigned slot) {
  check_point(c, theta);
  if (slot >= c.num_params()) throw DimensionError("slot out of range");
  std::vector<InsertionTerm> out;
  const auto positions = c.gates_on_slot(slot);
  if (positions.empty()) return out;
  StateVector psi = basis_state(c.qubits(), c.initial_state());
  const auto& gates = c.gates();
  std::size_t next = 0;
  for (std::size_t k = 0; k <= positions.back(); ++k) {
    psi = apply_gate(psi, gates[k], theta);
    if (k != positions[next]) continue;
    const auto& terms = std::get<Rotation>(gates[k]).generator.terms;
    for (std::size_t a = 0; a < terms.size(); ++a) {
      InsertionTerm t;
      t.slot = slot;
      t.gate_position = k;
      t.term_index = a;
      t.coeff = terms[a].coeff();
      t.state = finish(c, theta, apply_pauli(psi, terms[a].unweighted()), k + 1);
      out.push_back(std::move(t));
    }
    ++next;
  }
  return out;
}

StateVector combine_terms(const std::vector<InsertionTerm>& terms) {
  if (terms.empty()) throw DimensionError("slot without insertion terms");
  StateVector d = StateVector::Zero(terms.front().state.size());
  for (const auto& t : terms) d += t.coeff * t.state;
  return Complex(0, -0.5) * d;
}

StateVector derivative_state(
    const ParametricCircuit& c, const ParameterPoint& theta, unsigned slot) {
  return combine_terms(insertion_terms(c, theta, slot));
}

ParametricCircuit prepend_probe(
    const ParametricCircuit& c, const std::vector<PauliSum>& probes) {
  const auto p = static_cast<unsigned>(probes.size());
  ParametricCircuit out(c.qubits(), c.num_params() + p);
  out.set_initial_state(c.initial_state());
  for (unsigned k = 0; k < p; ++k) out.add_rotation(probes[k], k);
  for (const auto& g : c.gates()) {
    if (const auto* r = std::get_if<Rotation>(&g))
      out.add_rotation(r->generator, r->slot + p);
    else
      out.add(std::get<FixedGate>(g));
  }
  return out;
}

ParameterPoint probed_point(const ParameterPoint& theta, std::size_t probes) {
  ParameterPoint out = ParameterPoint::Zero(
      theta.size() + static_cast<Eigen::Index>(probes));
  out.tail(theta.size()) = theta;
  return out;
}

namespace {

void check_permutation(const std::vector<unsigned>& perm, unsigned n) {
  if (perm.size() != n) throw DimensionError("permutation has the wrong length");
  std::vector<bool> seen(n, false);
  for (unsigned v : perm) {
    if (v >= n || seen[v]) throw DimensionError("not a permutation");
    seen[v] = true;
  }
}

}  // namespace

ParametricCircuit reorder_parameters(
    const ParametricCircuit& c, const std::vector<unsigned>& perm) {
  check_permutation(perm, c.num_params());
  ParametricCircuit out(c.qubits(), c.num_params());
  out.set_initial_state(c.initial_state());
  for (const auto& g : c.gates()) {
    if (const auto* r = std::get_if<Rotation>(&g))
      out.add_rotation(r->generator, perm[r->slot]);
    else
      out.add(std::get<FixedGate>(g));
  }
  return out;
}

ParameterPoint permute_point(
    const ParameterPoint& theta, const std::vector<unsigned>& perm) {
  check_permutation(perm, static_cast<unsigned>(theta.size()));
  ParameterPoint out(theta.size());
  for (std::size_t i = 0; i < perm.size(); ++i)
    out(perm[i]) = theta(static_cast<Eigen::Index>(i));
  return out;
}

ParametricCircuit efficient_su2(unsigned qubits, unsigned reps) {
  const unsigned per_block = 2 * qubits;
  ParametricCircuit c(qubits, per_block * (reps + 1));
  for (unsigned b = 0; b <= reps; ++b) {
    if (b > 0)
      for (unsigned i = 0; i < qubits; ++i)
        for (unsigned j = i + 1; j < qubits; ++j) c.cx(i, j);
    for (unsigned q = 0; q < qubits; ++q) c.ry(q, per_block * b + q);
    for (unsigned q = 0; q < qubits; ++q) c.rz(q, per_block * b + qubits + q);
  }
  return c;
}

}  // namespace dexpr
