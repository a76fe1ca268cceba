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
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "dexpr/dea.hpp"

namespace dexpr {

struct ShotModel {
  std::uint64_t shots = 1000;
  /** Confidence multiplier in epsilon = z * max sigma. */
  double z = 3.0;
  std::uint64_t seed = 0;
};

void validate(const ShotModel& m);

/** Insertion term `term` (circuit order) of a slot. */
struct TermRef {
  unsigned slot = 0;
  std::size_t term = 0;
};

/** Hadamard-test circuit; the ancilla is the highest qubit. */
struct AncillaProgram {
  ParametricCircuit circuit;
  unsigned ancilla = 0;
  std::vector<unsigned> measured;
};

/**
 * H on the ancilla, the original gates with X.CP(m).X after m's gate (m
 * acts on the ancilla-|0> branch) and CP(n) after n's gate, then H.
 * p(ancilla = 0) = (1 + Re<gamma_m, gamma_n>) / 2.
 */
AncillaProgram ancilla_program(const ParametricCircuit& c, TermRef m, TermRef n);

/** Exact probability of reading 0 on the ancilla. */
double ancilla_zero_probability(const AncillaProgram& prog,
                                const ParameterPoint& theta);

struct OverlapEstimate {
  double exact = 0;
  double p_exact = 0;
  double p_hat = 0;
  double estimate = 0;
  /** Plug-in 2 sqrt(p_hat(1 - p_hat)/shots), floored at 1/(2 shots). */
  double sigma = 0;
  /** Same formula at the exact p. */
  double sigma_true = 0;
  std::uint64_t shots = 0;
  std::uint64_t count = 0;
};

/** Optional distortion of p before sampling, for device error models. */
using ProbabilityHook = std::function<double(double)>;

/** Binomial draw of `shots` ancilla readouts of the Hadamard test. */
OverlapEstimate measure_overlap(
    const ParametricCircuit& c, const ParameterPoint& theta, TermRef m,
    TermRef n, std::uint64_t shots, std::mt19937_64& rng,
    const ProbabilityHook& hook = {});

/** As above, with the stream for (m, n) split from the model seed. */
OverlapEstimate measure_overlap(
    const ParametricCircuit& c, const ParameterPoint& theta, TermRef m,
    TermRef n, const ShotModel& model);

struct MeasuredGram {
  GramMatrix gram;
  Eigen::MatrixXd sigma;
  Eigen::MatrixXd sigma_true;
  /** Quantum measurements (distinct term pairs) behind each entry. */
  Eigen::MatrixXi pairs;
  double epsilon = 0;
};

struct HybridOptions {
  ShotModel shots;
  /** Replaces the k * epsilon rule with a fixed threshold. */
  std::optional<double> threshold;
  unsigned jobs = 1;
  ProbabilityHook hook;
};

struct HybridReport {
  AnalysisReport report;
  /** Measured Gram matrix over the accepted slots. */
  MeasuredGram gram;
  std::uint64_t circuit_runs = 0;
  std::uint64_t total_shots = 0;
};

/**
 * Algorithm 1 with measured Gram entries: slot k is accepted iff the
 * smallest eigenvalue of the measured candidate matrix exceeds k * epsilon,
 * k being the candidate size and epsilon = z * max entry sigma.
 */
HybridReport hybrid_analyze(const ParametricCircuit& c, const ParameterPoint& theta,
                            const HybridOptions& options);

}  // namespace dexpr
