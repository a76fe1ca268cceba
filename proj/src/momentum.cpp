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

#include "dexpr/momentum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

namespace dexpr {

namespace {

void check_register(unsigned qubits, unsigned limit) {
  if (qubits == 0 || qubits > limit)
    throw DimensionError(
        "qubit count must be between 1 and " + std::to_string(limit));
}

}  // namespace

std::uint64_t translate_index(std::uint64_t j, unsigned qubits) {
  check_register(qubits, 63);
  const std::uint64_t mask = (std::uint64_t{1} << qubits) - 1;
  if (j > mask) throw DimensionError("basis index out of range");
  return ((j << 1) | (j >> (qubits - 1))) & mask;
}

StateVector translate_state(const StateVector& psi) {
  const unsigned q = num_qubits(psi);
  StateVector out(psi.size());
  for (Eigen::Index j = 0; j < psi.size(); ++j)
    out(static_cast<Eigen::Index>(translate_index(static_cast<std::uint64_t>(j), q))) =
        psi(j);
  return out;
}

std::vector<TranslationClass> equivalence_classes(unsigned qubits) {
  check_register(qubits, 20);
  const std::uint64_t dim = std::uint64_t{1} << qubits;
  std::vector<bool> seen(dim, false);
  std::vector<TranslationClass> out;
  for (std::uint64_t j = 0; j < dim; ++j) {
    if (seen[j]) continue;
    TranslationClass c;
    c.representative = j;
    std::uint64_t k = j;
    do {
      seen[k] = true;
      c.members.push_back(k);
      k = translate_index(k, qubits);
    } while (k != j);
    std::sort(c.members.begin(), c.members.end());
    c.order = static_cast<unsigned>(c.members.size());
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<unsigned> divisors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

std::vector<OrderCount> order_counts(unsigned qubits) {
  check_register(qubits, 62);
  std::map<unsigned, std::uint64_t> count;
  for (unsigned d : divisors(qubits)) {
    std::uint64_t c = std::uint64_t{1} << d;
    for (unsigned e : divisors(d))
      if (e < d) c -= count[e];
    count[d] = c;
  }
  std::vector<OrderCount> out;
  for (const auto& [d, c] : count) out.push_back({d, c, c / d});
  return out;
}

Complex RootOfUnity::value() const {
  return std::polar(1.0, 2 * std::numbers::pi * index / order);
}

std::vector<RootOfUnity> translation_eigenvalues(unsigned qubits) {
  check_register(qubits, 62);
  std::vector<RootOfUnity> out;
  for (unsigned d : divisors(qubits))
    for (unsigned n = 0; n < d; ++n)
      if (std::gcd(n, d) == 1) out.push_back({d, n});
  return out;
}

namespace {

void check_omega(unsigned qubits, RootOfUnity omega) {
  if (omega.order == 0 || omega.index >= omega.order ||
      std::gcd(omega.index, omega.order) != 1)
    throw PreconditionError(
        "root of unity " + std::to_string(omega.order) + ":" +
        std::to_string(omega.index) +
        " needs index < order and gcd(index, order) = 1");
  if (qubits % omega.order != 0)
    throw PreconditionError(
        "omega of order " + std::to_string(omega.order) +
        " is not an eigenvalue of the translation on " +
        std::to_string(qubits) + " qubits (order does not divide Q)");
}

}  // namespace

std::uint64_t sector_dimension(unsigned qubits, RootOfUnity omega) {
  check_register(qubits, 62);
  check_omega(qubits, omega);
  std::uint64_t dim = 0;
  for (const auto& oc : order_counts(qubits))
    if (oc.d % omega.order == 0) dim += oc.classes;
  return dim;
}

std::vector<StateVector> sector_basis(unsigned qubits, RootOfUnity omega) {
  check_register(qubits, 12);
  check_omega(qubits, omega);
  std::vector<StateVector> out;
  for (const auto& c : equivalence_classes(qubits)) {
    if (c.order % omega.order != 0) continue;
    StateVector e = StateVector::Zero(Eigen::Index{1} << qubits);
    std::uint64_t j = c.representative;
    const double norm = 1 / std::sqrt(static_cast<double>(c.order));
    for (unsigned k = 0; k < c.order; ++k) {
      const unsigned turns = (omega.index * k) % omega.order;
      e(static_cast<Eigen::Index>(j)) = std::polar(
          norm, -2 * std::numbers::pi * turns / omega.order);
      j = translate_index(j, qubits);
    }
    out.push_back(std::move(e));
  }
  return out;
}

SectorSpec sector(unsigned qubits, RootOfUnity omega, bool with_basis) {
  SectorSpec s;
  s.qubits = qubits;
  s.omega = omega;
  s.dim = sector_dimension(qubits, omega);
  s.real_sphere_dim = 2 * s.dim - 1;
  if (with_basis) s.basis = sector_basis(qubits, omega);
  return s;
}

EigenPath eigen_path(const StateVector& phi, const StateVector& psi,
                     unsigned samples) {
  if (phi.size() != psi.size())
    throw DimensionError("path endpoints have different lengths");
  if (std::abs(phi.norm() - 1) > 1e-10 || std::abs(psi.norm() - 1) > 1e-10)
    throw PreconditionError("path endpoints must have unit norm");
  if (samples == 0) throw PreconditionError("path needs at least one sample");
  EigenPath path;
  const Complex overlap = inner_product(phi, psi);
  const double c = std::abs(overlap);
  path.applied_phase = c > 0 ? std::conj(overlap) / c : Complex(1, 0);
  if (c > 1 - 1e-12) {
    path.phase_only = true;
    path.samples.assign(samples, phi);
    return path;
  }
  const StateVector aligned = path.applied_phase * psi;
  const double s = std::sqrt(1 - c * c);
  const double alpha = -c / s;
  const double beta = 1 / s;
  const StateVector xi = alpha * phi + beta * aligned;
  path.t_psi = std::asin(s);
  for (unsigned i = 0; i < samples; ++i) {
    const double t =
        samples == 1 ? 0.0 : path.t_psi * i / static_cast<double>(samples - 1);
    path.samples.push_back(std::cos(t) * phi + std::sin(t) * xi);
  }
  return path;
}

}  // namespace dexpr
