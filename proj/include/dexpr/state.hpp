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

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>

#include "dexpr/errors.hpp"
#include "dexpr/pauli.hpp"

namespace dexpr {

/**
 * Dense amplitude vector of a Q-qubit register.
 *
 * Basis index j is little endian: qubit q is bit q of j, so the ket
 * |b_{Q-1} ... b_0> is written with qubit 0 rightmost.
 */
template <typename Real>
using BasicState = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

using StateVector = BasicState<double>;
using Complex = std::complex<double>;

StateVector basis_state(unsigned qubits, std::uint64_t index);

template <typename Derived>
unsigned num_qubits(const Eigen::MatrixBase<Derived>& psi) {
  const auto n = static_cast<std::uint64_t>(psi.size());
  if (n < 2 || !std::has_single_bit(n))
    throw DimensionError("state length is not a power of two");
  return static_cast<unsigned>(std::countr_zero(n));
}

namespace detail {

template <typename Derived>
void check_register(const Eigen::MatrixBase<Derived>& psi, unsigned qubits) {
  if (num_qubits(psi) != qubits)
    throw DimensionError(
        "operator on " + std::to_string(qubits) + " qubits applied to a " +
        std::to_string(num_qubits(psi)) + "-qubit state");
}

/** i^k for the Y count of a string. */
template <typename Real>
std::complex<Real> i_power(unsigned k) {
  switch (k % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

}  // namespace detail

/** coeff * P|psi>, as a signed permutation of amplitudes. */
template <typename Derived>
typename Derived::PlainObject apply_pauli(
    const Eigen::MatrixBase<Derived>& psi, const PauliString& p) {
  using Scalar = typename Derived::Scalar;
  using Real = typename Scalar::value_type;
  detail::check_register(psi, p.qubits());
  const std::uint64_t x = p.x_mask();
  const std::uint64_t z = p.z_mask();
  const Scalar base =
      detail::i_power<Real>(p.num_y()) * static_cast<Real>(p.coeff());
  typename Derived::PlainObject out(psi.size());
  const auto n = static_cast<std::uint64_t>(psi.size());
  for (std::uint64_t j = 0; j < n; ++j) {
    const Scalar amp = psi(static_cast<Eigen::Index>(j));
    out(static_cast<Eigen::Index>(j ^ x)) =
        (std::popcount(j & z) & 1) ? -base * amp : base * amp;
  }
  return out;
}

/** sum_a c_a P_a |psi>. */
template <typename Derived>
typename Derived::PlainObject apply_pauli_sum(
    const Eigen::MatrixBase<Derived>& psi, const PauliSum& h) {
  typename Derived::PlainObject out =
      Derived::PlainObject::Zero(psi.size());
  for (const auto& t : h.terms) out += apply_pauli(psi, t);
  return out;
}

/** exp(-i c theta/2 P)|psi> = cos(c theta/2)|psi> - i sin(c theta/2) P|psi>. */
template <typename Derived>
typename Derived::PlainObject apply_rotation(
    const Eigen::MatrixBase<Derived>& psi, const PauliString& p, double angle) {
  using Scalar = typename Derived::Scalar;
  using Real = typename Scalar::value_type;
  const Real half = static_cast<Real>(p.coeff() * angle / 2);
  const auto flipped = apply_pauli(psi, p.unweighted());
  return std::cos(half) * psi + Scalar(0, -std::sin(half)) * flipped;
}

/**
 * exp(-i theta/2 H)|psi> for H = sum_a c_a P_a.
 *
 * Commuting terms factorise into closed-form rotations. Otherwise the
 * exponential is applied by a truncated Taylor series on substeps with
 * |theta/2| sum|c_a| <= 1/2 each, which converges to rounding level.
 */
template <typename Derived>
typename Derived::PlainObject apply_rotation(
    const Eigen::MatrixBase<Derived>& psi, const PauliSum& h, double angle) {
  using Scalar = typename Derived::Scalar;
  using Real = typename Scalar::value_type;
  detail::check_register(psi, h.qubits);
  typename Derived::PlainObject out = psi;
  if (all_commute(h)) {
    for (const auto& t : h.terms) out = apply_rotation(out, t, angle);
    return out;
  }
  double weight = 0;
  for (const auto& t : h.terms) weight += std::abs(t.coeff());
  const double span = std::abs(angle) / 2 * weight;
  const int substeps = std::max(1, static_cast<int>(std::ceil(span / 0.5)));
  const Scalar step(0, static_cast<Real>(-angle / 2 / substeps));
  for (int s = 0; s < substeps; ++s) {
    typename Derived::PlainObject term = out;
    typename Derived::PlainObject acc = out;
    for (int k = 1; k < 40; ++k) {
      term = apply_pauli_sum(term, h) * (step / static_cast<Real>(k));
      acc += term;
      if (term.norm() <= std::numeric_limits<Real>::epsilon() * 1e-2 * acc.norm())
        break;
    }
    out = acc;
  }
  return out;
}

enum class FixedKind { X, Y, Z, H, S, CX, CZ, SWAP, ControlledPauli };

/**
 * Parameter-free gate. For CX, a is the control and b the target. For
 * ControlledPauli, a is the control qubit, control_value selects the branch
 * and pauli (identity on a) acts on that branch only.
 */
struct FixedGate {
  FixedKind kind = FixedKind::X;
  unsigned a = 0;
  unsigned b = 0;
  int control_value = 1;
  PauliString pauli;

  static FixedGate single(FixedKind kind, unsigned q);
  static FixedGate two(FixedKind kind, unsigned a, unsigned b);
  static FixedGate controlled(
      unsigned control, int value, const PauliString& p);

  bool operator==(const FixedGate& o) const;
};

bool is_single_qubit(FixedKind kind);
std::string kind_name(FixedKind kind);
/** Throws DimensionError when indices clash or leave the register. */
void validate(const FixedGate& g, unsigned qubits);

template <typename Derived>
typename Derived::PlainObject apply_fixed(
    const Eigen::MatrixBase<Derived>& psi, const FixedGate& g,
    bool adjoint = false) {
  using Scalar = typename Derived::Scalar;
  using Real = typename Scalar::value_type;
  const unsigned qubits = num_qubits(psi);
  validate(g, qubits);
  const auto n = static_cast<std::uint64_t>(psi.size());
  const std::uint64_t ma = std::uint64_t{1} << g.a;
  const std::uint64_t mb = std::uint64_t{1} << g.b;
  typename Derived::PlainObject out = psi;
  auto at = [](std::uint64_t j) { return static_cast<Eigen::Index>(j); };
  switch (g.kind) {
    case FixedKind::X:
      return apply_pauli(psi, PauliString::single(qubits, g.a, Pauli::X));
    case FixedKind::Y:
      return apply_pauli(psi, PauliString::single(qubits, g.a, Pauli::Y));
    case FixedKind::Z:
      return apply_pauli(psi, PauliString::single(qubits, g.a, Pauli::Z));
    case FixedKind::H: {
      const Real r = static_cast<Real>(1 / std::sqrt(2.0));
      for (std::uint64_t j = 0; j < n; ++j) {
        if (j & ma) continue;
        const Scalar u = psi(at(j));
        const Scalar v = psi(at(j | ma));
        out(at(j)) = r * (u + v);
        out(at(j | ma)) = r * (u - v);
      }
      return out;
    }
    case FixedKind::S: {
      const Scalar phase(0, adjoint ? -1 : 1);
      for (std::uint64_t j = 0; j < n; ++j)
        if (j & ma) out(at(j)) *= phase;
      return out;
    }
    case FixedKind::CX:
      for (std::uint64_t j = 0; j < n; ++j)
        if (j & ma) out(at(j ^ mb)) = psi(at(j));
      return out;
    case FixedKind::CZ:
      for (std::uint64_t j = 0; j < n; ++j)
        if ((j & ma) && (j & mb)) out(at(j)) = -psi(at(j));
      return out;
    case FixedKind::SWAP:
      for (std::uint64_t j = 0; j < n; ++j) {
        const bool ba = j & ma;
        const bool bb = j & mb;
        if (ba != bb) out(at(j ^ ma ^ mb)) = psi(at(j));
      }
      return out;
    case FixedKind::ControlledPauli: {
      const auto flipped = apply_pauli(psi, g.pauli.unweighted());
      const std::uint64_t want = g.control_value ? ma : 0;
      for (std::uint64_t j = 0; j < n; ++j)
        if ((j & ma) == want) out(at(j)) = flipped(at(j));
      return out;
    }
  }
  return out;
}

/** <a|b>, conjugating the first argument. */
template <typename DA, typename DB>
typename DA::Scalar inner_product(
    const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  if (a.size() != b.size())
    throw DimensionError("inner product of states of different length");
  return a.dot(b);
}

}  // namespace dexpr
