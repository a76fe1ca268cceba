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

#include "dexpr/pauli.hpp"

#include <bit>
#include <cmath>

#include "dexpr/errors.hpp"

namespace dexpr {

namespace {

constexpr unsigned kMaxQubits = 63;

void check_qubits(unsigned qubits) {
  if (qubits == 0 || qubits > kMaxQubits)
    throw DimensionError(
        "Pauli string needs between 1 and 63 qubits, got " +
        std::to_string(qubits));
}

}  // namespace

char to_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': case 'i': return Pauli::I;
    case 'X': case 'x': return Pauli::X;
    case 'Y': case 'y': return Pauli::Y;
    case 'Z': case 'z': return Pauli::Z;
    default:
      throw ParseError(std::string("invalid Pauli letter '") + c + "'");
  }
}

PauliString::PauliString(unsigned qubits, double coeff)
    : qubits_(qubits), coeff_(coeff) {
  check_qubits(qubits);
}

PauliString PauliString::from_word(std::string_view word, double coeff) {
  PauliString p(static_cast<unsigned>(word.size()), coeff);
  const unsigned n = p.qubits_;
  for (unsigned k = 0; k < n; ++k) p.set(n - 1 - k, pauli_from_char(word[k]));
  return p;
}

PauliString PauliString::single(
    unsigned qubits, unsigned qubit, Pauli letter, double coeff) {
  PauliString p(qubits, coeff);
  p.set(qubit, letter);
  return p;
}

Pauli PauliString::letter(unsigned qubit) const {
  if (qubit >= qubits_) throw DimensionError("qubit index out of range");
  const bool x = (x_ >> qubit) & 1U;
  const bool z = (z_ >> qubit) & 1U;
  if (x && z) return Pauli::Y;
  if (x) return Pauli::X;
  if (z) return Pauli::Z;
  return Pauli::I;
}

void PauliString::set(unsigned qubit, Pauli p) {
  if (qubit >= qubits_) throw DimensionError("qubit index out of range");
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  x_ &= ~bit;
  z_ &= ~bit;
  if (p == Pauli::X || p == Pauli::Y) x_ |= bit;
  if (p == Pauli::Z || p == Pauli::Y) z_ |= bit;
}

unsigned PauliString::num_y() const {
  return static_cast<unsigned>(std::popcount(x_ & z_));
}

std::string PauliString::word() const {
  std::string w(qubits_, 'I');
  for (unsigned q = 0; q < qubits_; ++q) w[qubits_ - 1 - q] = to_char(letter(q));
  return w;
}

PauliString PauliString::unweighted() const {
  PauliString p = *this;
  p.coeff_ = 1.0;
  return p;
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (qubits_ != other.qubits_)
    throw DimensionError("Pauli strings on different registers");
  return std::popcount((x_ & other.z_) ^ (z_ & other.x_)) % 2 == 0;
}

PauliString PauliString::translated(int shift) const {
  PauliString p(qubits_, coeff_);
  const int n = static_cast<int>(qubits_);
  for (int q = 0; q < n; ++q) {
    const int target = ((q + shift) % n + n) % n;
    p.set(static_cast<unsigned>(target), letter(static_cast<unsigned>(q)));
  }
  return p;
}

PauliString PauliString::extended(unsigned qubits) const {
  if (qubits < qubits_) throw DimensionError("cannot shrink a Pauli string");
  PauliString p(qubits, coeff_);
  p.x_ = x_;
  p.z_ = z_;
  return p;
}

PauliSum::PauliSum(std::initializer_list<PauliString> ts) {
  for (const auto& t : ts) add(t);
}

void PauliSum::add(const PauliString& p) {
  if (terms.empty() && qubits == 0) qubits = p.qubits();
  if (p.qubits() != qubits)
    throw DimensionError("Pauli sum terms must share one register");
  terms.push_back(p);
}

bool all_commute(const PauliSum& h) {
  for (std::size_t a = 0; a < h.terms.size(); ++a)
    for (std::size_t b = a + 1; b < h.terms.size(); ++b)
      if (!h.terms[a].commutes_with(h.terms[b])) return false;
  return true;
}

PauliSum simplified(const PauliSum& h) {
  PauliSum out(h.qubits);
  for (const auto& t : h.terms) {
    bool merged = false;
    for (auto& o : out.terms) {
      if (o.same_operator(t)) {
        o.set_coeff(o.coeff() + t.coeff());
        merged = true;
        break;
      }
    }
    if (!merged) out.terms.push_back(t);
  }
  std::erase_if(out.terms, [](const PauliString& p) { return p.coeff() == 0.0; });
  return out;
}

PauliSum operator*(double s, const PauliSum& h) {
  PauliSum out = h;
  for (auto& t : out.terms) t.set_coeff(s * t.coeff());
  return out;
}

PauliSum operator+(const PauliSum& a, const PauliSum& b) {
  if (a.terms.empty()) return b;
  if (b.terms.empty()) return a;
  PauliSum out = a;
  for (const auto& t : b.terms) out.add(t);
  return out;
}

}  // namespace dexpr
