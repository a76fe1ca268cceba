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
#include <string>
#include <string_view>
#include <vector>

namespace dexpr {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/**
 * Weighted tensor product of single-qubit Paulis.
 *
 * Stored as X and Z bit masks (Y sets both), so qubit q is bit q of the
 * masks. Text words are written in ket order: the leftmost letter acts on
 * the highest qubit, e.g. "YI" on two qubits is Y on qubit 1.
 */
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(unsigned qubits, double coeff = 1.0);

  static PauliString from_word(std::string_view word, double coeff = 1.0);
  static PauliString single(
      unsigned qubits, unsigned qubit, Pauli p, double coeff = 1.0);

  unsigned qubits() const { return qubits_; }
  double coeff() const { return coeff_; }
  void set_coeff(double c) { coeff_ = c; }

  Pauli letter(unsigned qubit) const;
  void set(unsigned qubit, Pauli p);

  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }
  unsigned num_y() const;

  bool is_identity() const { return x_ == 0 && z_ == 0; }
  std::string word() const;

  PauliString unweighted() const;
  bool commutes_with(const PauliString& other) const;

  /** Cyclic relabelling of qubits q -> (q + shift) mod Q. */
  PauliString translated(int shift) const;
  /** Same operator on a larger register, identity on the new qubits. */
  PauliString extended(unsigned qubits) const;

  bool same_operator(const PauliString& other) const {
    return qubits_ == other.qubits_ && x_ == other.x_ && z_ == other.z_;
  }
  bool operator==(const PauliString& other) const {
    return same_operator(other) && coeff_ == other.coeff_;
  }

 private:
  unsigned qubits_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  double coeff_ = 1.0;
};

/** Real linear combination of Pauli strings on a common register. */
struct PauliSum {
  unsigned qubits = 0;
  std::vector<PauliString> terms;

  PauliSum() = default;
  explicit PauliSum(unsigned q) : qubits(q) {}
  PauliSum(std::initializer_list<PauliString> ts);

  void add(const PauliString& p);
  bool operator==(const PauliSum& other) const = default;
};

bool all_commute(const PauliSum& h);
/** Merges duplicate strings and drops zero coefficients. */
PauliSum simplified(const PauliSum& h);
PauliSum operator*(double s, const PauliSum& h);
PauliSum operator+(const PauliSum& a, const PauliSum& b);

char to_char(Pauli p);
Pauli pauli_from_char(char c);

}  // namespace dexpr
