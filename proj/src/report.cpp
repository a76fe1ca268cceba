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

#include "dexpr/report.hpp"

#include <cmath>

namespace dexpr {

using nlohmann::json;

json real_json(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return nullptr;
  return x;
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(real_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json state_json(const StateVector& psi) {
  json amps = json::array();
  for (Eigen::Index j = 0; j < psi.size(); ++j)
    amps.push_back({psi(j).real(), psi(j).imag()});
  return amps;
}

json to_json(const AnalysisReport& r) {
  json steps = json::array();
  for (const auto& s : r.steps) {
    json e = {{"slot", s.slot},
              {"min_eigenvalue", real_json(s.min_eigenvalue)},
              {"threshold", real_json(s.threshold)},
              {"accepted", s.accepted},
              {"reason", s.reason}};
    if (r.provenance == Provenance::Measured) {
      e["epsilon"] = real_json(s.epsilon);
      e["epsilon_true"] = real_json(s.epsilon_true);
      e["exact_min_eigenvalue"] = real_json(s.exact_min_eigenvalue);
    }
    steps.push_back(e);
  }
  return {{"provenance", r.provenance == Provenance::Exact ? "exact" : "measured"},
          {"independent", r.independent},
          {"redundant", r.redundant},
          {"rank", r.rank},
          {"ambient_dim", r.ambient_dim},
          {"codimension", r.ambient_dim - r.rank},
          {"steps", steps}};
}

json to_json(const ValidityEstimate& v) {
  return {{"D", real_json(v.D)},
          {"grad_norm", real_json(v.grad_norm)},
          {"R0", real_json(v.R0)},
          {"delta", real_json(v.delta)},
          {"R_first_order", real_json(v.R_first_order)},
          {"R_sampled", real_json(v.R_sampled)},
          {"sample_count", v.sample_count}};
}

namespace {

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(real_json(v(i)));
  return out;
}

}  // namespace

json to_json(const SymmetryFinding& f) {
  json gens = json::array();
  for (const auto& g : f.probe.generators) {
    json terms = json::array();
    for (const auto& t : g.terms) terms.push_back({{"pauli", t.word()}, {"coeff", t.coeff()}});
    gens.push_back(terms);
  }
  json out = {{"probe", f.probe.description},
              {"generators", gens},
              {"generated", f.generated},
              {"probe_ineffective", f.probe_ineffective},
              {"culprits", f.culprits},
              {"a_entries", vector_json(f.a_entries)},
              {"b_vector", vector_json(f.b_vector)},
              {"b_slots", f.b_slots},
              {"b_is_zero", f.b_is_zero},
              {"base_rank", f.base.rank},
              {"probed_rank", f.probed.rank}};
  out["culprit_slot"] = f.culprit_slot() ? json(*f.culprit_slot()) : json(nullptr);
  return out;
}

json to_json(const MeasuredGram& g) {
  json pairs = json::array();
  for (Eigen::Index i = 0; i < g.pairs.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < g.pairs.cols(); ++j) row.push_back(g.pairs(i, j));
    pairs.push_back(row);
  }
  return {{"slots", g.gram.column_slots},
          {"matrix", matrix_json(g.gram.matrix)},
          {"sigma", matrix_json(g.sigma)},
          {"sigma_true", matrix_json(g.sigma_true)},
          {"pairs", pairs},
          {"epsilon", real_json(g.epsilon)}};
}

json to_json(const HybridReport& h) {
  json out = to_json(h.report);
  out["measured_gram"] = to_json(h.gram);
  out["circuit_runs"] = h.circuit_runs;
  out["total_shots"] = h.total_shots;
  return out;
}

json to_json(const SectorSpec& s) {
  json out = {{"qubits", s.qubits},
              {"order", s.omega.order},
              {"index", s.omega.index},
              {"dim", s.dim},
              {"real_sphere_dim", s.real_sphere_dim}};
  if (!s.basis.empty()) {
    json basis = json::array();
    for (const auto& e : s.basis) basis.push_back(state_json(e));
    out["basis"] = basis;
  }
  return out;
}

json to_json(const RrefResult& r, const std::vector<unsigned>& slots) {
  json pivots = json::array();
  for (auto c : r.pivot_columns)
    pivots.push_back(slots.empty() ? static_cast<unsigned>(c)
                                   : slots[static_cast<std::size_t>(c)]);
  return {{"columns", slots}, {"pivot_slots", pivots}, {"matrix", matrix_json(r.matrix)}};
}

json to_json(const ContinuationTrace& t) {
  json recs = json::array();
  for (const auto& r : t.records)
    recs.push_back({{"x", r.x},
                    {"E_vqs", r.energy},
                    {"E0", r.ground},
                    {"E1", r.first_excited},
                    {"rel_err", r.relative_error()},
                    {"grad_norm", r.grad_norm},
                    {"steps", r.steps},
                    {"theta", vector_json(r.theta)}});
  return {{"records", recs}};
}

}  // namespace dexpr
