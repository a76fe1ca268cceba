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

#include <cstdint>
#include <vector>

#include "dexpr/state.hpp"

namespace dexpr {

/** Left cyclic shift of the Q-bit string of j: b_{Q-2} ... b_0 b_{Q-1}. */
std::uint64_t translate_index(std::uint64_t j, unsigned qubits);

/** tau|j> = |translate_index(j)>, extended linearly. */
StateVector translate_state(const StateVector& psi);

struct TranslationClass {
  std::uint64_t representative = 0;
  /** Orbit members in ascending order; the first is the representative. */
  std::vector<std::uint64_t> members;
  unsigned order = 0;
};

/** Orbits of tau on [0, 2^Q), sorted by representative. */
std::vector<TranslationClass> equivalence_classes(unsigned qubits);

struct OrderCount {
  unsigned d = 0;
  /** Number of indices with orbit size d. */
  std::uint64_t count = 0;
  /** Number of classes with orbit size d, count / d. */
  std::uint64_t classes = 0;
};

/** Counts by the divisor recursion #(d) = 2^d - sum_{d' | d, d' < d} #(d'). */
std::vector<OrderCount> order_counts(unsigned qubits);

std::vector<unsigned> divisors(unsigned n);

/** omega = exp(2 pi i index / order). */
struct RootOfUnity {
  unsigned order = 1;
  unsigned index = 0;

  Complex value() const;
  bool operator==(const RootOfUnity& o) const = default;
};

/** Every eigenvalue of tau_Q: all (d, n) with d | Q and gcd(n, d) = 1. */
std::vector<RootOfUnity> translation_eigenvalues(unsigned qubits);

/** Sum of [#](k) over d | k | Q. Throws PreconditionError when d does not divide Q. */
std::uint64_t sector_dimension(unsigned qubits, RootOfUnity omega);

/**
 * One vector per class whose orbit size is a multiple of d:
 * e = ord^{-1/2} sum_k omega^{-k} |tau^k j0>, so that tau e = omega e.
 */
std::vector<StateVector> sector_basis(unsigned qubits, RootOfUnity omega);

struct SectorSpec {
  unsigned qubits = 0;
  RootOfUnity omega;
  std::uint64_t dim = 0;
  std::uint64_t real_sphere_dim = 0;
  std::vector<StateVector> basis;
};

SectorSpec sector(unsigned qubits, RootOfUnity omega, bool with_basis = false);

struct EigenPath {
  std::vector<StateVector> samples;
  /** Arc length to psi, arcsin sqrt(1 - |<phi,psi>|^2). */
  double t_psi = 0;
  /** Phase multiplied onto psi so that <phi, psi> >= 0. */
  Complex applied_phase{1, 0};
  /** Inputs differ by a phase only; the path is constant. */
  bool phase_only = false;
};

/**
 * Great-circle path from phi to the re-phased psi inside their span. Every
 * sample lies in any eigenspace containing both endpoints.
 */
EigenPath eigen_path(const StateVector& phi, const StateVector& psi,
                     unsigned samples);

}  // namespace dexpr
