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

#include "dexpr/gram.hpp"

#include "dexpr/parallel.hpp"

namespace dexpr {

Eigen::VectorXd realify(const StateVector& psi) {
  Eigen::VectorXd out(2 * psi.size());
  out << psi.real(), psi.imag();
  return out;
}

RealJacobian real_jacobian(
    const ParametricCircuit& c, const ParameterPoint& theta,
    const std::vector<unsigned>& slots) {
  const auto terms = all_insertion_terms(c, theta);
  RealJacobian j;
  j.column_slots = slots;
  j.matrix.resize(Eigen::Index{2} << c.qubits(),
                  static_cast<Eigen::Index>(slots.size()));
  for (std::size_t k = 0; k < slots.size(); ++k) {
    if (slots[k] >= c.num_params()) throw DimensionError("slot out of range");
    j.matrix.col(static_cast<Eigen::Index>(k)) =
        realify(combine_terms(terms[slots[k]]));
  }
  return j;
}

RealJacobian real_jacobian(const ParametricCircuit& c, const ParameterPoint& theta) {
  std::vector<unsigned> slots(c.num_params());
  for (unsigned s = 0; s < c.num_params(); ++s) slots[s] = s;
  return real_jacobian(c, theta, slots);
}

double gram_entry(const std::vector<InsertionTerm>& m,
                  const std::vector<InsertionTerm>& n) {
  double sum = 0;
  for (const auto& a : m)
    for (const auto& b : n)
      sum += a.coeff * b.coeff * inner_product(a.state, b.state).real();
  return sum / 4;
}

double gram_diagonal(const std::vector<InsertionTerm>& m) {
  if (m.size() == 1) return m.front().coeff * m.front().coeff / 4;
  return gram_entry(m, m);
}

double gram_entry(const ParametricCircuit& c, const ParameterPoint& theta,
                  unsigned m, unsigned n) {
  const auto tm = insertion_terms(c, theta, m);
  if (m == n) return gram_diagonal(tm);
  return gram_entry(tm, insertion_terms(c, theta, n));
}

GramMatrix gram_matrix(
    const std::vector<std::vector<InsertionTerm>>& terms,
    const std::vector<unsigned>& slots, unsigned jobs) {
  const auto k = static_cast<Eigen::Index>(slots.size());
  for (unsigned s : slots)
    if (s >= terms.size()) throw DimensionError("slot out of range");
  GramMatrix g;
  g.column_slots = slots;
  g.matrix.resize(k, k);
  // Upper triangle in row-major order, one task per entry.
  std::vector<std::pair<Eigen::Index, Eigen::Index>> cells;
  for (Eigen::Index r = 0; r < k; ++r)
    for (Eigen::Index col = r; col < k; ++col) cells.emplace_back(r, col);
  parallel_for(cells.size(), jobs, [&](std::size_t i) {
    const auto [r, col] = cells[i];
    const auto& tr = terms[slots[static_cast<std::size_t>(r)]];
    const auto& tc = terms[slots[static_cast<std::size_t>(col)]];
    g.matrix(r, col) = r == col ? gram_diagonal(tr) : gram_entry(tr, tc);
  });
  for (Eigen::Index r = 0; r < k; ++r)
    for (Eigen::Index col = 0; col < r; ++col) g.matrix(r, col) = g.matrix(col, r);
  return g;
}

GramMatrix gram_matrix(
    const ParametricCircuit& c, const ParameterPoint& theta,
    const std::vector<unsigned>& slots, unsigned jobs) {
  return gram_matrix(all_insertion_terms(c, theta), slots, jobs);
}

}  // namespace dexpr
