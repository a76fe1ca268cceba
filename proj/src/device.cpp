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

#include "dexpr/device.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "dexpr/parallel.hpp"
#include "dexpr/random.hpp"

namespace dexpr {

void validate(const ShotModel& m) {
  if (m.shots < 1) throw PreconditionError("shot count must be at least 1");
  if (!(m.z > 0)) throw PreconditionError("z must be positive");
}

namespace {

struct ResolvedTerm {
  std::size_t gate = 0;
  PauliString pauli;
};

ResolvedTerm resolve(const ParametricCircuit& c, TermRef t) {
  if (t.slot >= c.num_params()) throw DimensionError("slot out of range");
  std::size_t seen = 0;
  for (std::size_t k : c.gates_on_slot(t.slot)) {
    const auto& terms = std::get<Rotation>(c.gates()[k]).generator.terms;
    if (t.term < seen + terms.size())
      return {k, terms[t.term - seen].unweighted()};
    seen += terms.size();
  }
  throw DimensionError(
      "slot " + std::to_string(t.slot) + " has no insertion term " +
      std::to_string(t.term));
}

}  // namespace

AncillaProgram ancilla_program(const ParametricCircuit& c, TermRef m, TermRef n) {
  if (m.slot == n.slot && m.term == n.term)
    throw PreconditionError(
        "diagonal overlaps are not measured; their exact value is 1");
  const auto rm = resolve(c, m);
  const auto rn = resolve(c, n);
  const unsigned q = c.qubits();
  AncillaProgram prog;
  prog.ancilla = q;
  prog.measured = {q};
  prog.circuit = ParametricCircuit(q + 1, c.num_params());
  prog.circuit.set_initial_state(c.initial_state());
  auto& out = prog.circuit;
  out.add(FixedGate::single(FixedKind::H, q));
  for (std::size_t k = 0; k < c.gates().size(); ++k) {
    const auto& g = c.gates()[k];
    if (const auto* r = std::get_if<Rotation>(&g)) {
      PauliSum h(q + 1);
      for (const auto& t : r->generator.terms) h.add(t.extended(q + 1));
      out.add_rotation(h, r->slot);
    } else {
      FixedGate f = std::get<FixedGate>(g);
      if (f.kind == FixedKind::ControlledPauli) f.pauli = f.pauli.extended(q + 1);
      out.add(f);
    }
    if (k == rm.gate) {
      out.add(FixedGate::single(FixedKind::X, q));
      out.add(FixedGate::controlled(q, 1, rm.pauli.extended(q + 1)));
      out.add(FixedGate::single(FixedKind::X, q));
    }
    if (k == rn.gate) out.add(FixedGate::controlled(q, 1, rn.pauli.extended(q + 1)));
  }
  out.add(FixedGate::single(FixedKind::H, q));
  return prog;
}

double ancilla_zero_probability(const AncillaProgram& prog,
                                const ParameterPoint& theta) {
  const StateVector psi = evaluate(prog.circuit, theta);
  const std::uint64_t bit = std::uint64_t{1} << prog.ancilla;
  double p = 0;
  for (Eigen::Index j = 0; j < psi.size(); ++j)
    if (!(static_cast<std::uint64_t>(j) & bit)) p += std::norm(psi(j));
  return std::clamp(p, 0.0, 1.0);
}

namespace {

double shot_sigma(double p, std::uint64_t shots) {
  const double n = static_cast<double>(shots);
  return std::max(2 * std::sqrt(p * (1 - p) / n), 1 / (2 * n));
}

}  // namespace

OverlapEstimate measure_overlap(
    const ParametricCircuit& c, const ParameterPoint& theta, TermRef m,
    TermRef n, std::uint64_t shots, std::mt19937_64& rng,
    const ProbabilityHook& hook) {
  if (shots < 1) throw PreconditionError("shot count must be at least 1");
  const auto prog = ancilla_program(c, m, n);
  OverlapEstimate e;
  e.shots = shots;
  e.p_exact = ancilla_zero_probability(prog, theta);
  e.exact = 2 * e.p_exact - 1;
  const double p = hook ? std::clamp(hook(e.p_exact), 0.0, 1.0) : e.p_exact;
  std::binomial_distribution<std::uint64_t> draw(shots, p);
  e.count = draw(rng);
  e.p_hat = static_cast<double>(e.count) / static_cast<double>(shots);
  e.estimate = 2 * e.p_hat - 1;
  e.sigma = shot_sigma(e.p_hat, shots);
  e.sigma_true = shot_sigma(e.p_exact, shots);
  return e;
}

OverlapEstimate measure_overlap(
    const ParametricCircuit& c, const ParameterPoint& theta, TermRef m,
    TermRef n, const ShotModel& model) {
  validate(model);
  std::mt19937_64 rng(stream_seed(model.seed, {m.slot, m.term, n.slot, n.term}));
  return measure_overlap(c, theta, m, n, model.shots, rng);
}

namespace {

struct Entry {
  double value = 0;
  double exact = 0;
  double sigma = 0;
  double sigma_true = 0;
  int pairs = 0;
};

class EntryMeter {
 public:
  EntryMeter(const ParametricCircuit& c, const ParameterPoint& theta,
             const HybridOptions& options)
      : c_(c), theta_(theta), options_(options),
        terms_(all_insertion_terms(c, theta)) {}

  const std::vector<std::vector<InsertionTerm>>& terms() const { return terms_; }

  /** One Gram entry; `step` keys the random streams. */
  Entry measure(unsigned l, unsigned k, std::size_t step) const {
    const auto& tl = terms_[l];
    const auto& tk = terms_[k];
    Entry e;
    double var = 0;
    double var_true = 0;
    auto add = [&](std::size_t a, std::size_t b, double weight) {
      std::mt19937_64 rng(stream_seed(options_.shots.seed, {step, l, k, a, b}));
      const auto o = measure_overlap(c_, theta_, {l, a}, {k, b},
                                     options_.shots.shots, rng, options_.hook);
      e.value += weight * o.estimate;
      e.exact += weight * o.exact;
      var += weight * weight * o.sigma * o.sigma;
      var_true += weight * weight * o.sigma_true * o.sigma_true;
      ++e.pairs;
    };
    if (l == k) {
      for (std::size_t a = 0; a < tl.size(); ++a) {
        e.value += tl[a].coeff * tl[a].coeff;
        e.exact += tl[a].coeff * tl[a].coeff;
        for (std::size_t b = a + 1; b < tl.size(); ++b)
          add(a, b, 2 * tl[a].coeff * tl[b].coeff);
      }
    } else {
      for (std::size_t a = 0; a < tl.size(); ++a)
        for (std::size_t b = 0; b < tk.size(); ++b)
          add(a, b, tl[a].coeff * tk[b].coeff);
    }
    e.value /= 4;
    e.exact /= 4;
    e.sigma = std::sqrt(var) / 4;
    e.sigma_true = std::sqrt(var_true) / 4;
    return e;
  }

 private:
  const ParametricCircuit& c_;
  const ParameterPoint& theta_;
  const HybridOptions& options_;
  std::vector<std::vector<InsertionTerm>> terms_;
};

}  // namespace

HybridReport hybrid_analyze(const ParametricCircuit& c, const ParameterPoint& theta,
                            const HybridOptions& options) {
  check_point(c, theta);
  validate(options.shots);
  if (c.num_params() == 0) throw PreconditionError("circuit has no parameters");
  const EntryMeter meter(c, theta, options);
  const double z = options.shots.z;

  HybridReport out;
  AnalysisReport& report = out.report;
  report.provenance = Provenance::Measured;
  report.ambient_dim = (std::uint64_t{2} << c.qubits()) - 1;

  const Entry first = meter.measure(0, 0, 0);
  if (!(first.exact > TolerancePolicy{}.threshold))
    throw PreconditionError("first slot has a vanishing tangent vector");
  if (!(first.value > 0))
    throw PreconditionError(
        "first slot's measured norm is not positive; increase the shot count");
  out.circuit_runs += static_cast<std::uint64_t>(first.pairs);

  Eigen::MatrixXd s(1, 1), s_exact(1, 1), sig(1, 1), sig_true(1, 1);
  Eigen::MatrixXi pairs(1, 1);
  s(0, 0) = first.value;
  s_exact(0, 0) = first.exact;
  sig(0, 0) = first.sigma;
  sig_true(0, 0) = first.sigma_true;
  pairs(0, 0) = first.pairs;
  report.independent.push_back(0);
  {
    AnalysisStep st{0, first.value, 0.0, true, "independent"};
    st.epsilon = z * first.sigma;
    st.epsilon_true = z * first.sigma_true;
    st.exact_min_eigenvalue = first.exact;
    report.steps.push_back(st);
  }

  for (unsigned k = 1; k < c.num_params(); ++k) {
    const auto n = static_cast<Eigen::Index>(report.independent.size());
    std::vector<Entry> border(static_cast<std::size_t>(n) + 1);
    parallel_for(border.size(), options.jobs, [&](std::size_t i) {
      const unsigned l = i < static_cast<std::size_t>(n) ? report.independent[i] : k;
      border[i] = meter.measure(l, k, k);
    });
    auto grow = [&](const Eigen::MatrixXd& m, auto field) {
      Eigen::MatrixXd g(n + 1, n + 1);
      g.topLeftCorner(n, n) = m;
      for (Eigen::Index i = 0; i <= n; ++i) {
        g(i, n) = field(border[static_cast<std::size_t>(i)]);
        g(n, i) = g(i, n);
      }
      return g;
    };
    const auto cand = grow(s, [](const Entry& e) { return e.value; });
    const auto cand_exact = grow(s_exact, [](const Entry& e) { return e.exact; });
    const auto cand_sig = grow(sig, [](const Entry& e) { return e.sigma; });
    const auto cand_sig_true = grow(sig_true, [](const Entry& e) { return e.sigma_true; });

    const double eps = z * cand_sig.maxCoeff();
    const double dim = static_cast<double>(n + 1);
    AnalysisStep st;
    st.slot = k;
    st.min_eigenvalue = min_eigenvalue(cand);
    st.threshold = options.threshold ? *options.threshold : dim * eps;
    st.accepted = st.min_eigenvalue > st.threshold;
    st.epsilon = eps;
    st.epsilon_true = z * cand_sig_true.maxCoeff();
    st.exact_min_eigenvalue = min_eigenvalue(cand_exact);
    if (st.accepted)
      st.reason = "independent";
    else if (!options.threshold && st.min_eigenvalue > eps)
      st.reason = "rejected-at-threshold";
    else
      st.reason = "dependent";
    report.steps.push_back(st);
    for (const auto& e : border) out.circuit_runs += static_cast<std::uint64_t>(e.pairs);

    if (st.accepted) {
      report.independent.push_back(k);
      s = cand;
      s_exact = cand_exact;
      sig = cand_sig;
      sig_true = cand_sig_true;
      Eigen::MatrixXi p(n + 1, n + 1);
      p.topLeftCorner(n, n) = pairs;
      for (Eigen::Index i = 0; i <= n; ++i) {
        p(i, n) = border[static_cast<std::size_t>(i)].pairs;
        p(n, i) = p(i, n);
      }
      pairs = p;
    } else {
      report.redundant.push_back(k);
    }
  }
  report.rank = report.independent.size();
  out.total_shots = out.circuit_runs * options.shots.shots;
  out.gram.gram.matrix = s;
  out.gram.gram.column_slots = report.independent;
  out.gram.gram.provenance = Provenance::Measured;
  out.gram.sigma = sig;
  out.gram.sigma_true = sig_true;
  out.gram.pairs = pairs;
  out.gram.epsilon = z * sig.maxCoeff();
  return out;
}

}  // namespace dexpr
