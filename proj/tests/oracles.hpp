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

// Brute-force references for the tests. Nothing here calls the library's
// state kernels: matrices are built from 2x2 Kronecker products and
// rotations from a dense matrix exponential.

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <string>

#include "dexpr/circuit.hpp"

namespace dexpr::test {

using Mat = Eigen::MatrixXcd;
using M2 = Eigen::Matrix2cd;

inline M2 sigma(char p) {
  const std::complex<double> i(0, 1);
  M2 m;
  switch (p) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    case '0': m << 1, 0, 0, 0; break;  // |0><0|
    case '1': m << 0, 0, 0, 1; break;  // |1><1|
    case 'H': m << 1, 1, 1, -1; m /= std::sqrt(2.0); break;
    case 'S': m << 1, 0, 0, i; break;
    default: m.setIdentity();
  }
  return m;
}

// Tensor product with per-qubit factors; qubit q is bit q of the index, so
// the highest qubit is the leftmost Kronecker factor.
inline Mat embed(unsigned qubits, const std::map<unsigned, M2>& ops) {
  Mat out = Mat::Identity(1, 1);
  for (unsigned q = qubits; q-- > 0;) {
    auto it = ops.find(q);
    M2 f = it == ops.end() ? M2::Identity() : it->second;
    Mat next = Eigen::kroneckerProduct(out, f).eval();
    out = next;
  }
  return out;
}

// Word in ket order: word[0] acts on the highest qubit.
inline Mat word_matrix(const std::string& word) {
  unsigned n = static_cast<unsigned>(word.size());
  std::map<unsigned, M2> ops;
  for (unsigned k = 0; k < n; ++k) ops[n - 1 - k] = sigma(word[k]);
  return embed(n, ops);
}

inline Mat pauli_matrix(const PauliString& p) {
  return p.coeff() * word_matrix(p.word());
}

inline Mat sum_matrix(const PauliSum& h) {
  Mat m = Mat::Zero(std::int64_t{1} << h.qubits, std::int64_t{1} << h.qubits);
  for (const auto& t : h.terms) m += pauli_matrix(t);
  return m;
}

inline Mat rotation_matrix(const PauliSum& h, double angle) {
  Mat a = std::complex<double>(0, -angle / 2) * sum_matrix(h);
  return a.exp();
}

inline Mat fixed_matrix(const FixedGate& g, unsigned qubits) {
  auto one = [&](char p) { return embed(qubits, {{g.a, sigma(p)}}); };
  switch (g.kind) {
    case FixedKind::X: return one('X');
    case FixedKind::Y: return one('Y');
    case FixedKind::Z: return one('Z');
    case FixedKind::H: return one('H');
    case FixedKind::S: return one('S');
    case FixedKind::CX:
      return embed(qubits, {{g.a, sigma('0')}}) +
             embed(qubits, {{g.a, sigma('1')}, {g.b, sigma('X')}});
    case FixedKind::CZ:
      return embed(qubits, {{g.a, sigma('0')}}) +
             embed(qubits, {{g.a, sigma('1')}, {g.b, sigma('Z')}});
    case FixedKind::SWAP:
      return 0.5 * (embed(qubits, {}) +
                    embed(qubits, {{g.a, sigma('X')}, {g.b, sigma('X')}}) +
                    embed(qubits, {{g.a, sigma('Y')}, {g.b, sigma('Y')}}) +
                    embed(qubits, {{g.a, sigma('Z')}, {g.b, sigma('Z')}}));
    case FixedKind::ControlledPauli: {
      char on = g.control_value ? '1' : '0';
      char off = g.control_value ? '0' : '1';
      return embed(qubits, {{g.a, sigma(on)}}) * pauli_matrix(g.pauli) +
             embed(qubits, {{g.a, sigma(off)}});
    }
  }
  return Mat();
}

inline Mat gate_matrix(const Gate& g, const ParameterPoint& theta, unsigned qubits) {
  if (const auto* f = std::get_if<FixedGate>(&g)) return fixed_matrix(*f, qubits);
  const auto& r = std::get<Rotation>(g);
  return rotation_matrix(r.generator, theta(r.slot));
}

inline Eigen::VectorXcd dense_evaluate(const ParametricCircuit& c,
                                       const ParameterPoint& theta) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(std::int64_t{1} << c.qubits());
  psi(static_cast<Eigen::Index>(c.initial_state())) = 1;
  for (const auto& g : c.gates()) psi = gate_matrix(g, theta, c.qubits()) * psi;
  return psi;
}

inline Eigen::VectorXcd fd_derivative(const ParametricCircuit& c,
                                      const ParameterPoint& theta, unsigned slot,
                                      double h = 1e-5) {
  ParameterPoint p = theta, m = theta;
  p(slot) += h;
  m(slot) -= h;
  return (dense_evaluate(c, p) - dense_evaluate(c, m)) / (2 * h);
}

// Real Jacobian from finite differences, Re over Im.
inline Eigen::MatrixXd fd_jacobian(const ParametricCircuit& c, const ParameterPoint& theta,
                                   double h = 1e-5) {
  Eigen::Index dim = Eigen::Index{1} << c.qubits();
  Eigen::MatrixXd j(2 * dim, c.num_params());
  for (unsigned s = 0; s < c.num_params(); ++s) {
    Eigen::VectorXcd d = fd_derivative(c, theta, s, h);
    j.col(s) << d.real(), d.imag();
  }
  return j;
}

// Singular values above tol times the largest.
inline Eigen::Index svd_rank(const Eigen::MatrixXd& m, double tol = 1e-6) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0) return 0;
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * s(0)) ++r;
  return r;
}

inline std::string random_word(unsigned qubits, std::mt19937_64& rng) {
  static const char letters[] = {'I', 'X', 'Y', 'Z'};
  std::uniform_int_distribution<int> d(0, 3);
  std::string w;
  do {
    w.clear();
    for (unsigned q = 0; q < qubits; ++q) w += letters[d(rng)];
  } while (w.find_first_not_of('I') == std::string::npos);
  return w;
}

// Random circuit with Pauli-word rotations, CX/CZ/H gates and some shared
// slots. Every slot is used.
inline ParametricCircuit random_circuit(unsigned qubits, unsigned params,
                                        std::uint64_t seed, bool shared = true) {
  std::mt19937_64 rng(seed);
  ParametricCircuit c(qubits, params);
  std::uniform_int_distribution<unsigned> q(0, qubits - 1);
  std::uniform_int_distribution<unsigned> s(0, params - 1);
  std::uniform_real_distribution<double> coin(0, 1);
  for (unsigned slot = 0; slot < params; ++slot) {
    if (qubits > 1 && coin(rng) < 0.4) {
      unsigned a = q(rng), b = q(rng);
      while (b == a) b = q(rng);
      c.add(FixedGate::two(coin(rng) < 0.5 ? FixedKind::CX : FixedKind::CZ, a, b));
    }
    if (coin(rng) < 0.2) c.add(FixedGate::single(FixedKind::H, q(rng)));
    c.add_rotation(PauliString::from_word(random_word(qubits, rng)), slot);
    if (shared && coin(rng) < 0.3)
      c.add_rotation(PauliString::from_word(random_word(qubits, rng)), s(rng));
  }
  return c;
}

}  // namespace dexpr::test
