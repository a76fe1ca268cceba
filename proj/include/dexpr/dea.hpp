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
#include <limits>
#include <string>
#include <vector>

#include "dexpr/gram.hpp"

namespace dexpr {

/** Minimum-eigenvalue threshold for accepting a slot in exact mode. */
struct TolerancePolicy {
  double threshold = 1e-10;
  double at(std::size_t /*k*/) const { return threshold; }
};

struct AnalysisStep {
  unsigned slot = 0;
  double min_eigenvalue = 0;
  double threshold = 0;
  bool accepted = false;
  /** independent, dependent, rejected-at-threshold or symmetry. */
  std::string reason;
  /**
   * Measured mode only: z * max entry sigma from the estimates and from the
   * exact probabilities, and the exact eigenvalue of the same matrix.
   */
  double epsilon = std::numeric_limits<double>::quiet_NaN();
  double epsilon_true = std::numeric_limits<double>::quiet_NaN();
  double exact_min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
};

struct AnalysisReport {
  std::vector<unsigned> independent;
  std::vector<unsigned> redundant;
  std::vector<AnalysisStep> steps;
  std::size_t rank = 0;
  /** 2^{Q+1} - 1, the real dimension of the unit sphere. */
  std::uint64_t ambient_dim = 0;
  Provenance provenance = Provenance::Exact;
};

struct AnalysisOptions {
  TolerancePolicy tol;
  /** Slot order to analyse; empty means 0, 1, ..., N-1. */
  std::vector<unsigned> order;
  unsigned jobs = 1;
};

/**
 * Greedy identification of independent slots: slot k joins I when the
 * Gram matrix of I plus k has minimum eigenvalue above the threshold.
 * Throws PreconditionError when the first slot has a vanishing tangent.
 */
AnalysisReport analyze_exact(const ParametricCircuit& c, const ParameterPoint& theta,
                             const AnalysisOptions& options = {});

/** Smallest eigenvalue of a symmetric matrix; +inf for an empty one. */
double min_eigenvalue(const Eigen::MatrixXd& s);

struct PivotResult {
  std::size_t rank = 0;
  std::vector<unsigned> pivots;
};

/**
 * Ordered Gram-Schmidt: column k is a pivot when its residual against the
 * earlier pivots exceeds tol times the largest column norm, so earlier
 * columns win among dependent ones.
 */
PivotResult rank_and_pivots(const RealJacobian& j, double tol = 1e-6);

struct RrefResult {
  Eigen::MatrixXd matrix;
  std::vector<Eigen::Index> pivot_columns;
};

/** Gauss-Jordan elimination with partial pivoting and zero snapping. */
RrefResult rref(const Eigen::MatrixXd& m, double tol = 1e-9);
RrefResult rref(const RealJacobian& j, double tol = 1e-9);

/** Rounds entries within tol of an integer; used for display and goldens. */
Eigen::MatrixXd snap_integers(const Eigen::MatrixXd& m, double tol = 1e-9);

struct ValidityOptions {
  double R0 = 1.0;
  unsigned samples = 32;
  double fd_step = 1e-4;
  std::uint64_t seed = 0;
};

struct ValidityEstimate {
  double D = 0;
  double grad_norm = 0;
  double R0 = 0;
  double delta = 0;
  double R_first_order = 0;
  double R_sampled = 0;
  unsigned sample_count = 0;
};

double gram_determinant(const ParametricCircuit& c, const ParameterPoint& theta,
                        const std::vector<unsigned>& slots);

Eigen::VectorXd gram_determinant_gradient(
    const ParametricCircuit& c, const ParameterPoint& theta,
    const std::vector<unsigned>& slots, double step = 1e-4);

/**
 * Lower estimates of how far theta may move before the slots lose
 * independence: |D| / |grad D| and min(R0, |D| / delta) where delta is the
 * largest sampled gradient norm in the ball of radius R0 (center included).
 */
ValidityEstimate radius_of_validity(
    const ParametricCircuit& c, const ParameterPoint& theta,
    const std::vector<unsigned>& independent, const ValidityOptions& options = {});

struct SemicontinuityResult {
  std::size_t base_rank = 0;
  std::vector<ParameterPoint> points;
  std::vector<std::size_t> ranks;
  /** True when no perturbed rank fell below base_rank. */
  bool holds = true;
};

SemicontinuityResult semicontinuity_probe(
    const ParametricCircuit& c, const ParameterPoint& theta,
    const AnalysisReport& report, double scale, unsigned trials,
    std::uint64_t seed, const AnalysisOptions& options = {});

}  // namespace dexpr
