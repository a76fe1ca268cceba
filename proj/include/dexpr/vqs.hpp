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

#include <string>
#include <string_view>
#include <vector>

#include "dexpr/circuit.hpp"

namespace dexpr {

/** J sum_q X_q X_{q+1} + B sum_q Z_q; the bond Q-1 -> 0 when periodic. */
PauliSum ising_hamiltonian(unsigned qubits, double J, double B, bool periodic = true);

/** (1 - x) H0 + x H1 with H0 = -sum Z, H1 = sum XX - sum Z on four qubits. */
PauliSum continuation_hamiltonian(double x, unsigned qubits = 4);

Eigen::MatrixXcd dense_matrix(const PauliSum& h);

struct Eigenpair {
  double energy = 0;
  StateVector state;
};

/** Lowest `levels` eigenpairs of the dense operator, ascending. */
std::vector<Eigenpair> exact_spectrum(const PauliSum& h, unsigned levels);

double expectation(const PauliSum& h, const StateVector& psi);

struct EnergyGradient {
  double energy = 0;
  Eigen::VectorXd gradient;
};

/** E = <C|H|C> and g_j = 2 Re<d_j C, H C> by a reverse sweep. */
EnergyGradient energy_and_gradient(const ParametricCircuit& c,
                                   const ParameterPoint& theta, const PauliSum& h);

enum class AnsatzKind { Original, Custom11, Custom10 };

AnsatzKind parse_ansatz_kind(std::string_view name);
std::string ansatz_name(AnsatzKind kind);

/**
 * Appends prod_q R_{P_q}(theta_slot) for the translates P_q of `pattern`,
 * whose k-th letter acts on qubit q + k (mod Q). Translates that commute
 * become separate gates on the shared slot; otherwise the layer is one
 * rotation about their sum.
 */
void add_ti_layer(ParametricCircuit& c, std::string_view pattern, unsigned slot);

/** Number of slots of an ansatz. */
unsigned ansatz_slots(AnsatzKind kind, unsigned layers);

/**
 * Original: L_Z(t1) L_X(t0) then, per layer, L_XX, L_X, L_Z, L_Y on four new
 * slots. Custom11 applies L_X, L_Z, L_Y, L_XX, L_XY, L_XIX, L_XIY, L_XXX,
 * L_YYY, L_XXXX, L_XXXY; custom10 drops L_Y.
 */
ParametricCircuit build_ti_ansatz(AnsatzKind kind, unsigned layers = 1,
                                  unsigned qubits = 4);

/** Slots of the L_XX layers of the original ansatz. */
std::vector<unsigned> entangler_slots(AnsatzKind kind, unsigned layers);

struct OptimizerOptions {
  double eta = 0.05;
  unsigned max_iters = 2000;
  double grad_tol = 1e-6;
};

struct ContinuationRecord {
  double x = 0;
  ParameterPoint theta;
  double energy = 0;
  double ground = 0;
  double first_excited = 0;
  double grad_norm = 0;
  unsigned steps = 0;

  double relative_error() const;
};

struct ContinuationTrace {
  std::vector<ContinuationRecord> records;
};

/**
 * Gradient descent along H(x_i), x_i = i / (M - 1), warm started from the
 * previous point; theta starts at 0 plus `spread` times a seeded uniform
 * perturbation in [-1, 1].
 */
ContinuationTrace continuation_vqs(const ParametricCircuit& ansatz, unsigned steps,
                                   const OptimizerOptions& optimizer,
                                   std::uint64_t seed = 0, double spread = 0.0);

/** x, E_vqs, E0, E1, rel_err, grad_norm, steps with a versioned header. */
std::string trace_csv(const ContinuationTrace& trace);

}  // namespace dexpr
