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

#include "dexpr/symmetry.hpp"

#include <algorithm>

namespace dexpr {

SymmetryProbe phase_probe(unsigned qubits, unsigned qubit) {
  return {"rz(q" + std::to_string(qubit) + ")",
          {PauliSum{PauliString::single(qubits, qubit, Pauli::Z)}}};
}

SymmetryProbe global_phase_probe(unsigned qubits) {
  return {"global phase", {PauliSum{PauliString(qubits)}}};
}

SymmetryProbe word_probe(std::string_view word) {
  return {"rp(" + std::string(word) + ")",
          {PauliSum{PauliString::from_word(word)}}};
}

namespace {

bool contains(const std::vector<unsigned>& v, unsigned x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

AnalysisOptions shifted(const AnalysisOptions& options, unsigned p) {
  AnalysisOptions out = options;
  if (!options.order.empty()) {
    out.order.clear();
    for (unsigned k = 0; k < p; ++k) out.order.push_back(k);
    for (unsigned s : options.order) out.order.push_back(s + p);
  }
  return out;
}

}  // namespace

SymmetryFinding detect_symmetry(
    const ParametricCircuit& c, const ParameterPoint& theta,
    const SymmetryProbe& probe, const AnalysisOptions& options, double b_tol) {
  const auto p = static_cast<unsigned>(probe.generators.size());
  if (p == 0) throw PreconditionError("probe without generators");
  SymmetryFinding f;
  f.probe = probe;
  f.base = analyze_exact(c, theta, options);
  const auto probed = prepend_probe(c, probe.generators);
  const auto point = probed_point(theta, p);
  f.probed = analyze_exact(probed, point, shifted(options, p));

  for (unsigned k = 0; k < p; ++k)
    if (!contains(f.probed.independent, k)) f.probe_ineffective = true;
  if (f.probe_ineffective) return f;

  for (unsigned s : f.base.independent)
    if (contains(f.probed.redundant, s + p)) f.culprits.push_back(s);
  f.generated = f.culprits.size() == p;
  if (f.culprits.empty()) return f;

  const auto jac = real_jacobian(probed, point);
  const auto red = rref(jac);
  const Eigen::Index col = f.culprits.front() + p;
  std::vector<double> a;
  std::vector<double> b;
  for (std::size_t r = 0; r < red.pivot_columns.size(); ++r) {
    const Eigen::Index pc = red.pivot_columns[r];
    const double v = red.matrix(static_cast<Eigen::Index>(r), col);
    if (pc < static_cast<Eigen::Index>(p)) {
      a.push_back(v);
    } else if (pc < col) {
      b.push_back(v);
      f.b_slots.push_back(static_cast<unsigned>(pc) - p);
    }
  }
  f.a_entries = Eigen::Map<Eigen::VectorXd>(a.data(), static_cast<Eigen::Index>(a.size()));
  f.b_vector = Eigen::Map<Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size()));
  f.b_is_zero = b.empty() || f.b_vector.cwiseAbs().maxCoeff() <= b_tol;
  return f;
}

SymmetryRemoval remove_symmetry(
    const ParametricCircuit& c, const ParameterPoint& theta,
    const SymmetryProbe& probe, const AnalysisOptions& options) {
  SymmetryRemoval out;
  out.finding = detect_symmetry(c, theta, probe, options);
  if (!out.finding.generated)
    throw PreconditionError(
        "probe '" + probe.description + "' is not generated by the circuit");
  const auto p = static_cast<unsigned>(probe.generators.size());
  AnalysisReport& r = out.reduced;
  r.ambient_dim = out.finding.base.ambient_dim;
  for (const auto& step : out.finding.probed.steps) {
    if (step.slot < p) continue;
    AnalysisStep s = step;
    s.slot -= p;
    if (contains(out.finding.culprits, s.slot)) s.reason = "symmetry";
    r.steps.push_back(s);
    (s.accepted ? r.independent : r.redundant).push_back(s.slot);
  }
  r.rank = r.independent.size();
  return out;
}

}  // namespace dexpr
