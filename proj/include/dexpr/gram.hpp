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

#include <vector>

#include "dexpr/circuit.hpp"

namespace dexpr {

/**
 * Real Jacobian: column m is Re dC/dtheta_{slot m} stacked over
 * Im dC/dtheta_{slot m}, so it has 2^{Q+1} rows.
 */
struct RealJacobian {
  Eigen::MatrixXd matrix;
  std::vector<unsigned> column_slots;
};

enum class Provenance { Exact, Measured };

struct GramMatrix {
  Eigen::MatrixXd matrix;
  std::vector<unsigned> column_slots;
  Provenance provenance = Provenance::Exact;
};

RealJacobian real_jacobian(
    const ParametricCircuit& c, const ParameterPoint& theta,
    const std::vector<unsigned>& slots);

/** Jacobian over all slots in order. */
RealJacobian real_jacobian(const ParametricCircuit& c, const ParameterPoint& theta);

/** Stacks Re over Im. */
Eigen::VectorXd realify(const StateVector& psi);

/** (1/4) sum_{a,b} c_a c_b Re<gamma_{m,a}, gamma_{n,b}>. */
double gram_entry(const std::vector<InsertionTerm>& m,
                  const std::vector<InsertionTerm>& n);

/**
 * As above, but a slot owning a single unit-norm term uses c^2/4 on the
 * diagonal without an inner product.
 */
double gram_diagonal(const std::vector<InsertionTerm>& m);

double gram_entry(const ParametricCircuit& c, const ParameterPoint& theta,
                  unsigned m, unsigned n);

GramMatrix gram_matrix(
    const ParametricCircuit& c, const ParameterPoint& theta,
    const std::vector<unsigned>& slots, unsigned jobs = 1);

/** Gram matrix from precomputed insertion terms indexed by slot. */
GramMatrix gram_matrix(
    const std::vector<std::vector<InsertionTerm>>& terms,
    const std::vector<unsigned>& slots, unsigned jobs = 1);

}  // namespace dexpr
