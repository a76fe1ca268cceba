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

#include <optional>
#include <string>
#include <vector>

#include "dexpr/dea.hpp"

namespace dexpr {

/** One or more generators prepended on fresh slots; identity at angle 0. */
struct SymmetryProbe {
  std::string description;
  std::vector<PauliSum> generators;
};

/** R_Z on one qubit. */
SymmetryProbe phase_probe(unsigned qubits, unsigned qubit = 0);
/** Rotation about the identity string: an exact global phase. */
SymmetryProbe global_phase_probe(unsigned qubits);
/** Rotation about an arbitrary Pauli word. */
SymmetryProbe word_probe(std::string_view word);

struct SymmetryFinding {
  SymmetryProbe probe;
  bool generated = false;
  /** A probe slot was itself dependent, so the symmetry is unreachable. */
  bool probe_ineffective = false;
  /** Original-circuit slots that flip to dependent once probed. */
  std::vector<unsigned> culprits;
  /** Probed RREF column of the first culprit: rows of probe pivots... */
  Eigen::VectorXd a_entries;
  /** ...and rows of original-slot pivots, with their slots. */
  Eigen::VectorXd b_vector;
  std::vector<unsigned> b_slots;
  bool b_is_zero = true;
  AnalysisReport base;
  AnalysisReport probed;

  std::optional<unsigned> culprit_slot() const {
    if (!generated || culprits.empty()) return std::nullopt;
    return culprits.front();
  }
};

/**
 * Compares the analysis of c at theta with that of the probed circuit at
 * (0, theta). Slots independent before and dependent after reproduce the
 * probed symmetry; there must be exactly one per probe generator.
 */
SymmetryFinding detect_symmetry(
    const ParametricCircuit& c, const ParameterPoint& theta,
    const SymmetryProbe& probe, const AnalysisOptions& options = {},
    double b_tol = 1e-9);

struct SymmetryRemoval {
  AnalysisReport reduced;
  SymmetryFinding finding;
};

/**
 * Report over the original slots with the culprits moved to the redundant
 * set (reason "symmetry"). Their gates stay in the circuit at the current
 * angles; only the parameters are frozen.
 */
SymmetryRemoval remove_symmetry(
    const ParametricCircuit& c, const ParameterPoint& theta,
    const SymmetryProbe& probe, const AnalysisOptions& options = {});

}  // namespace dexpr
