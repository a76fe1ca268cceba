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

#include "dexpr/vqs.hpp"

#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

namespace dexpr {

PauliSum ising_hamiltonian(unsigned qubits, double J, double B, bool periodic) {
  if (qubits < 2) throw DimensionError("Ising chain needs at least two qubits");
  PauliSum h(qubits);
  const unsigned bonds = periodic ? qubits : qubits - 1;
  for (unsigned q = 0; q < bonds; ++q) {
    PauliString p(qubits, J);
    p.set(q, Pauli::X);
    p.set((q + 1) % qubits, Pauli::X);
    h.add(p);
  }
  for (unsigned q = 0; q < qubits; ++q)
    h.add(PauliString::single(qubits, q, Pauli::Z, B));
  return simplified(h);
}

PauliSum continuation_hamiltonian(double x, unsigned qubits) {
  return simplified((1 - x) * ising_hamiltonian(qubits, 0, -1) +
                    x * ising_hamiltonian(qubits, 1, -1));
}

Eigen::MatrixXcd dense_matrix(const PauliSum& h) {
  if (h.qubits == 0 || h.qubits > 12)
    throw DimensionError("dense operators are limited to 12 qubits");
  const Eigen::Index dim = Eigen::Index{1} << h.qubits;
  Eigen::MatrixXcd m(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    m.col(j) = apply_pauli_sum(basis_state(h.qubits, static_cast<std::uint64_t>(j)), h);
  return m;
}

std::vector<Eigenpair> exact_spectrum(const PauliSum& h, unsigned levels) {
  const Eigen::MatrixXcd m = dense_matrix(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("dense eigensolver failed");
  std::vector<Eigenpair> out;
  const auto n = std::min<Eigen::Index>(levels, m.rows());
  for (Eigen::Index k = 0; k < n; ++k)
    out.push_back({es.eigenvalues()(k), es.eigenvectors().col(k)});
  return out;
}

double expectation(const PauliSum& h, const StateVector& psi) {
  return inner_product(psi, apply_pauli_sum(psi, h)).real();
}

EnergyGradient energy_and_gradient(const ParametricCircuit& c,
                                   const ParameterPoint& theta, const PauliSum& h) {
  check_point(c, theta);
  if (h.qubits != c.qubits())
    throw DimensionError("Hamiltonian and circuit registers differ");
  EnergyGradient out;
  out.gradient = Eigen::VectorXd::Zero(c.num_params());
  StateVector psi = evaluate(c, theta);
  StateVector lambda = apply_pauli_sum(psi, h);
  out.energy = inner_product(psi, lambda).real();
  const auto& gates = c.gates();
  for (std::size_t k = gates.size(); k-- > 0;) {
    // psi is the state right after gate k; lambda is U_{>k}^dagger H C.
    if (const auto* r = std::get_if<Rotation>(&gates[k])) {
      double g = 0;
      for (const auto& t : r->generator.terms)
        g -= t.coeff() * inner_product(apply_pauli(psi, t.unweighted()), lambda).imag();
      out.gradient(r->slot) += g;
    }
    psi = apply_gate(psi, gates[k], theta, true);
    lambda = apply_gate(lambda, gates[k], theta, true);
  }
  return out;
}

AnsatzKind parse_ansatz_kind(std::string_view name) {
  if (name == "original") return AnsatzKind::Original;
  if (name == "custom11") return AnsatzKind::Custom11;
  if (name == "custom10") return AnsatzKind::Custom10;
  throw ParseError("unknown ansatz '" + std::string(name) +
                   "' (expected original, custom11 or custom10)");
}

std::string ansatz_name(AnsatzKind kind) {
  switch (kind) {
    case AnsatzKind::Original: return "original";
    case AnsatzKind::Custom11: return "custom11";
    case AnsatzKind::Custom10: return "custom10";
  }
  return "?";
}

void add_ti_layer(ParametricCircuit& c, std::string_view pattern, unsigned slot) {
  const unsigned q = c.qubits();
  if (pattern.empty() || pattern.size() > q)
    throw DimensionError("layer pattern longer than the register");
  PauliSum translates(q);
  for (unsigned s = 0; s < q; ++s) {
    PauliString p(q);
    for (unsigned k = 0; k < pattern.size(); ++k)
      p.set((s + k) % q, pauli_from_char(pattern[k]));
    translates.add(p);
  }
  if (all_commute(translates)) {
    for (const auto& p : translates.terms) c.add_rotation(p, slot);
  } else {
    c.add_rotation(translates, slot);
  }
}

namespace {

const std::vector<std::string_view>& custom_patterns() {
  static const std::vector<std::string_view> p = {
      "X", "Z", "Y", "XX", "XY", "XIX", "XIY", "XXX", "YYY", "XXXX", "XXXY"};
  return p;
}

}  // namespace

unsigned ansatz_slots(AnsatzKind kind, unsigned layers) {
  switch (kind) {
    case AnsatzKind::Original: return 2 + 4 * layers;
    case AnsatzKind::Custom11: return 11;
    case AnsatzKind::Custom10: return 10;
  }
  return 0;
}

ParametricCircuit build_ti_ansatz(AnsatzKind kind, unsigned layers, unsigned qubits) {
  if (kind != AnsatzKind::Original && qubits != 4)
    throw PreconditionError("the custom ansaetze are defined on four qubits");
  if (qubits < 2) throw DimensionError("translation-invariant ansatz needs Q >= 2");
  ParametricCircuit c(qubits, ansatz_slots(kind, layers));
  if (kind == AnsatzKind::Original) {
    add_ti_layer(c, "X", 0);
    add_ti_layer(c, "Z", 1);
    for (unsigned j = 1; j <= layers; ++j) {
      add_ti_layer(c, "XX", 4 * j - 2);
      add_ti_layer(c, "X", 4 * j - 1);
      add_ti_layer(c, "Z", 4 * j);
      add_ti_layer(c, "Y", 4 * j + 1);
    }
    return c;
  }
  unsigned slot = 0;
  for (auto p : custom_patterns()) {
    if (kind == AnsatzKind::Custom10 && p == "Y") continue;
    add_ti_layer(c, p, slot++);
  }
  return c;
}

std::vector<unsigned> entangler_slots(AnsatzKind kind, unsigned layers) {
  std::vector<unsigned> out;
  if (kind != AnsatzKind::Original) return out;
  for (unsigned j = 1; j <= layers; ++j) out.push_back(4 * j - 2);
  return out;
}

double ContinuationRecord::relative_error() const {
  return std::abs(energy - ground) / std::abs(ground);
}

ContinuationTrace continuation_vqs(const ParametricCircuit& ansatz, unsigned steps,
                                   const OptimizerOptions& optimizer,
                                   std::uint64_t seed, double spread) {
  if (steps < 2) throw PreconditionError("continuation needs at least two points");
  if (!(optimizer.eta > 0)) throw PreconditionError("learning rate must be positive");
  ParameterPoint theta = ParameterPoint::Zero(ansatz.num_params());
  if (spread != 0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (Eigen::Index i = 0; i < theta.size(); ++i) theta(i) = spread * u(rng);
  }
  ContinuationTrace trace;
  for (unsigned i = 0; i < steps; ++i) {
    ContinuationRecord rec;
    rec.x = static_cast<double>(i) / (steps - 1);
    const PauliSum h = continuation_hamiltonian(rec.x, ansatz.qubits());
    auto eg = energy_and_gradient(ansatz, theta, h);
    unsigned it = 0;
    while (it < optimizer.max_iters && eg.gradient.norm() >= optimizer.grad_tol) {
      theta -= optimizer.eta * eg.gradient;
      eg = energy_and_gradient(ansatz, theta, h);
      ++it;
    }
    const auto spectrum = exact_spectrum(h, 2);
    rec.theta = theta;
    rec.energy = eg.energy;
    rec.ground = spectrum[0].energy;
    rec.first_excited = spectrum[1].energy;
    rec.grad_norm = eg.gradient.norm();
    rec.steps = it;
    trace.records.push_back(std::move(rec));
  }
  return trace;
}

std::string trace_csv(const ContinuationTrace& trace) {
  std::ostringstream os;
  os << "# dexpr vqs trace v1\n";
  os << "x,E_vqs,E0,E1,rel_err,grad_norm,steps\n";
  os << std::setprecision(12);
  for (const auto& r : trace.records)
    os << r.x << ',' << r.energy << ',' << r.ground << ',' << r.first_excited
       << ',' << r.relative_error() << ',' << r.grad_norm << ',' << r.steps << '\n';
  return os.str();
}

}  // namespace dexpr
