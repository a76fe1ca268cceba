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

#include "dexpr/dea.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "dexpr/parallel.hpp"

namespace dexpr {

double min_eigenvalue(const Eigen::MatrixXd& s) {
  if (s.size() == 0) return std::numeric_limits<double>::infinity();
  if (s.rows() == 1) return s(0, 0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

namespace {

std::vector<unsigned> natural_order(unsigned n) {
  std::vector<unsigned> order(n);
  for (unsigned s = 0; s < n; ++s) order[s] = s;
  return order;
}

}  // namespace

AnalysisReport analyze_exact(const ParametricCircuit& c, const ParameterPoint& theta,
                             const AnalysisOptions& options) {
  check_point(c, theta);
  if (c.num_params() == 0) throw PreconditionError("circuit has no parameters");
  const auto order =
      options.order.empty() ? natural_order(c.num_params()) : options.order;
  for (unsigned s : order)
    if (s >= c.num_params()) throw DimensionError("slot out of range in order");
  const auto terms = all_insertion_terms(c, theta);

  AnalysisReport report;
  report.ambient_dim = (std::uint64_t{2} << c.qubits()) - 1;

  const unsigned first = order.front();
  const double d0 = gram_diagonal(terms[first]);
  if (!(d0 > options.tol.at(1)))
    throw PreconditionError(
        "first analysed slot " + std::to_string(first) +
        " has a vanishing tangent vector; reorder or drop the trivial gate");
  report.independent.push_back(first);
  report.steps.push_back({first, d0, options.tol.at(1), true, "independent"});
  Eigen::MatrixXd s(1, 1);
  s(0, 0) = d0;

  for (std::size_t pos = 1; pos < order.size(); ++pos) {
    const unsigned k = order[pos];
    const auto n = static_cast<Eigen::Index>(report.independent.size());
    Eigen::MatrixXd cand(n + 1, n + 1);
    cand.topLeftCorner(n, n) = s;
    parallel_for(static_cast<std::size_t>(n), options.jobs, [&](std::size_t i) {
      cand(static_cast<Eigen::Index>(i), n) =
          gram_entry(terms[report.independent[i]], terms[k]);
    });
    cand.row(n).head(n) = cand.col(n).head(n).transpose();
    cand(n, n) = gram_diagonal(terms[k]);
    const double lambda = min_eigenvalue(cand);
    const double thr = options.tol.at(static_cast<std::size_t>(n + 1));
    const bool accepted = lambda > thr;
    report.steps.push_back(
        {k, lambda, thr, accepted, accepted ? "independent" : "dependent"});
    if (accepted) {
      report.independent.push_back(k);
      s = cand;
    } else {
      report.redundant.push_back(k);
    }
  }
  report.rank = report.independent.size();
  return report;
}

PivotResult rank_and_pivots(const RealJacobian& j, double tol) {
  PivotResult out;
  const Eigen::MatrixXd& m = j.matrix;
  if (m.cols() == 0) return out;
  const double scale = m.colwise().norm().maxCoeff();
  if (scale == 0) return out;
  Eigen::MatrixXd basis(m.rows(), m.cols());
  Eigen::Index used = 0;
  for (Eigen::Index k = 0; k < m.cols(); ++k) {
    Eigen::VectorXd v = m.col(k);
    for (int pass = 0; pass < 2; ++pass) {
      if (used == 0) break;
      const auto q = basis.leftCols(used);
      v -= q * (q.transpose() * v);
    }
    const double r = v.norm();
    if (r > tol * scale) {
      basis.col(used++) = v / r;
      out.pivots.push_back(j.column_slots.empty()
                               ? static_cast<unsigned>(k)
                               : j.column_slots[static_cast<std::size_t>(k)]);
    }
  }
  out.rank = out.pivots.size();
  return out;
}

RrefResult rref(const Eigen::MatrixXd& m, double tol) {
  RrefResult out;
  Eigen::MatrixXd a = m;
  const Eigen::Index rows = a.rows();
  Eigen::Index r = 0;
  for (Eigen::Index col = 0; col < a.cols() && r < rows; ++col) {
    Eigen::Index p = r;
    a.col(col).tail(rows - r).cwiseAbs().maxCoeff(&p);
    p += r;
    if (std::abs(a(p, col)) <= tol) {
      a.col(col).tail(rows - r).setZero();
      continue;
    }
    a.row(p).swap(a.row(r));
    a.row(r) /= a(r, col);
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || a(i, col) == 0.0) continue;
      a.row(i) -= a(i, col) * a.row(r);
    }
    out.pivot_columns.push_back(col);
    ++r;
  }
  a = a.unaryExpr([tol](double x) { return std::abs(x) <= tol ? 0.0 : x; });
  out.matrix = std::move(a);
  return out;
}

RrefResult rref(const RealJacobian& j, double tol) { return rref(j.matrix, tol); }

Eigen::MatrixXd snap_integers(const Eigen::MatrixXd& m, double tol) {
  return m.unaryExpr([tol](double x) {
    const double r = std::round(x);
    return std::abs(x - r) <= tol ? r + 0.0 : x;
  });
}

double gram_determinant(const ParametricCircuit& c, const ParameterPoint& theta,
                        const std::vector<unsigned>& slots) {
  return gram_matrix(c, theta, slots).matrix.determinant();
}

Eigen::VectorXd gram_determinant_gradient(
    const ParametricCircuit& c, const ParameterPoint& theta,
    const std::vector<unsigned>& slots, double step) {
  Eigen::VectorXd g(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    ParameterPoint plus = theta;
    ParameterPoint minus = theta;
    plus(i) += step;
    minus(i) -= step;
    g(i) = (gram_determinant(c, plus, slots) -
            gram_determinant(c, minus, slots)) / (2 * step);
  }
  return g;
}

ValidityEstimate radius_of_validity(
    const ParametricCircuit& c, const ParameterPoint& theta,
    const std::vector<unsigned>& independent, const ValidityOptions& options) {
  check_point(c, theta);
  if (independent.empty())
    throw PreconditionError("radius of validity needs a nonempty slot set");
  if (!(options.R0 > 0) || options.fd_step <= 0)
    throw PreconditionError("radius of validity needs R0 > 0 and fd_step > 0");
  const auto gram = gram_matrix(c, theta, independent);
  if (!(min_eigenvalue(gram.matrix) > TolerancePolicy{}.threshold))
    throw PreconditionError("analyze first; I not independent at theta");

  ValidityEstimate v;
  v.R0 = options.R0;
  v.D = gram.matrix.determinant();
  v.grad_norm =
      gram_determinant_gradient(c, theta, independent, options.fd_step).norm();
  const double inf = std::numeric_limits<double>::infinity();
  v.R_first_order = v.grad_norm > 0 ? std::abs(v.D) / v.grad_norm : inf;

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit;
  const auto n = static_cast<double>(theta.size());
  v.delta = v.grad_norm;
  for (unsigned s = 0; s < options.samples; ++s) {
    Eigen::VectorXd dir(theta.size());
    for (Eigen::Index i = 0; i < dir.size(); ++i) dir(i) = normal(rng);
    const double radius = options.R0 * std::pow(unit(rng), 1.0 / n);
    const double len = dir.norm();
    const ParameterPoint p = len > 0 ? ParameterPoint(theta + radius / len * dir) : theta;
    v.delta = std::max(
        v.delta,
        gram_determinant_gradient(c, p, independent, options.fd_step).norm());
  }
  v.sample_count = options.samples;
  v.R_sampled =
      v.delta > 0 ? std::min(options.R0, std::abs(v.D) / v.delta) : options.R0;
  return v;
}

SemicontinuityResult semicontinuity_probe(
    const ParametricCircuit& c, const ParameterPoint& theta,
    const AnalysisReport& report, double scale, unsigned trials,
    std::uint64_t seed, const AnalysisOptions& options) {
  check_point(c, theta);
  SemicontinuityResult out;
  out.base_rank = report.rank;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (unsigned t = 0; t < trials; ++t) {
    ParameterPoint p = theta;
    for (Eigen::Index i = 0; i < p.size(); ++i) p(i) += scale * u(rng);
    const std::size_t r = analyze_exact(c, p, options).rank;
    out.points.push_back(p);
    out.ranks.push_back(r);
    if (r < out.base_rank) out.holds = false;
  }
  return out;
}

}  // namespace dexpr
