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
#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>
#include <map>
#include <numbers>

#include "dexpr/errors.hpp"
#include "dexpr/momentum.hpp"
#include "oracles.hpp"

namespace dexpr {
namespace {

using Catch::Matchers::WithinAbs;

// rotate the printed bit string one place to the left
std::uint64_t rotate_string(std::uint64_t j, unsigned q) {
  std::string s;
  for (int b = static_cast<int>(q) - 1; b >= 0; --b) s += ((j >> b) & 1) ? '1' : '0';
  std::rotate(s.begin(), s.begin() + 1, s.end());
  return std::stoull(s, nullptr, 2);
}

std::map<unsigned, std::uint64_t> orbit_sizes(unsigned q) {
  std::map<unsigned, std::uint64_t> out;
  for (std::uint64_t j = 0; j < (std::uint64_t{1} << q); ++j) {
    std::uint64_t k = rotate_string(j, q);
    unsigned n = 1;
    while (k != j) {
      k = rotate_string(k, q);
      ++n;
    }
    ++out[n];
  }
  return out;
}

Eigen::MatrixXcd translation_matrix(unsigned q) {
  const Eigen::Index n = Eigen::Index{1} << q;
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) t(rotate_string(j, q), j) = 1;
  return t;
}

StateVector combo(unsigned q, std::initializer_list<std::uint64_t> idx) {
  StateVector v = StateVector::Zero(std::int64_t{1} << q);
  for (auto j : idx) v(j) = 1;
  return v.normalized();
}

TEST_CASE("translate_index") {
  CHECK(translate_index(2, 2) == 1);
  CHECK(translate_index(8, 4) == 1);
  CHECK(translate_index(5, 4) == 10);
  CHECK_THROWS(translate_index(16, 4));
  for (unsigned q = 1; q <= 10; ++q)
    for (std::uint64_t j = 0; j < (std::uint64_t{1} << q); j += 1 + q) {
      CHECK(translate_index(j, q) == rotate_string(j, q));
      std::uint64_t k = j;
      for (unsigned t = 0; t < q; ++t) k = translate_index(k, q);
      CHECK(k == j);
    }
}

TEST_CASE("Equivalence classes") {
  GIVEN("four qubits") {
    auto cl = equivalence_classes(4);
    REQUIRE(cl.size() == 6);
    std::vector<std::uint64_t> reps;
    std::vector<unsigned> orders;
    for (const auto& c : cl) {
      reps.push_back(c.representative);
      orders.push_back(c.order);
    }
    CHECK(reps == std::vector<std::uint64_t>{0, 1, 3, 5, 7, 15});
    CHECK(orders == std::vector<unsigned>{1, 4, 4, 2, 4, 1});
    CHECK(cl[1].members == std::vector<std::uint64_t>{1, 2, 4, 8});
    CHECK(cl[3].members == std::vector<std::uint64_t>{5, 10});
  }
  GIVEN("one and three qubits") {
    CHECK(equivalence_classes(1).size() == 2);
    auto c3 = equivalence_classes(3);
    REQUIRE(c3.size() == 4);
    CHECK(c3[0].order == 1);
    CHECK(c3[1].order == 3);
    CHECK(c3[2].order == 3);
    CHECK(c3[3].order == 1);
  }
  GIVEN("partition and orbit oracle up to 14 qubits") {
    for (unsigned q = 1; q <= 14; ++q) {
      auto cl = equivalence_classes(q);
      std::uint64_t total = 0;
      std::map<unsigned, std::uint64_t> sizes;
      for (const auto& c : cl) {
        total += c.members.size();
        CHECK(c.members.size() == c.order);
        CHECK(q % c.order == 0);
        CHECK(c.members.front() == c.representative);
        sizes[c.order] += c.order;
      }
      CHECK(total == (std::uint64_t{1} << q));
      if (q <= 10) CHECK(sizes == orbit_sizes(q));
    }
  }
}

TEST_CASE("Order counts") {
  auto four = order_counts(4);
  REQUIRE(four.size() == 3);
  CHECK(four[0].d == 1);
  CHECK(four[0].count == 2);
  CHECK(four[1].count == 2);
  CHECK(four[2].count == 12);
  CHECK(four[2].classes == 3);
  CHECK(four[1].classes == 1);
  auto one = order_counts(1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].count == 2);
  auto six = order_counts(6);
  auto oracle = orbit_sizes(6);
  std::vector<std::uint64_t> want_classes{2, 1, 2, 9};
  REQUIRE(six.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(six[i].count == oracle[six[i].d]);
    CHECK(six[i].classes == want_classes[i]);
  }
  CHECK(six[3].count == 54);
}

TEST_CASE("Sector dimensions") {
  GIVEN("four qubits") {
    CHECK(sector_dimension(4, {1, 0}) == 6);
    CHECK(sector_dimension(4, {2, 1}) == 4);
    CHECK(sector_dimension(4, {4, 1}) == 3);
    CHECK(sector_dimension(4, {4, 3}) == 3);
    CHECK_THROWS_AS(sector_dimension(4, {3, 1}), PreconditionError);
    CHECK(sector(4, {2, 1}).real_sphere_dim == 7);
  }
  GIVEN("six qubits, order three") {
    CHECK(sector_dimension(6, {3, 1}) == 11);
    CHECK(sector_dimension(6, {3, 2}) == 11);
  }
  GIVEN("the dense permutation spectrum up to eight qubits") {
    for (unsigned q = 1; q <= 8; ++q) {
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(translation_matrix(q), false);
      std::uint64_t total = 0;
      for (auto w : translation_eigenvalues(q)) {
        std::uint64_t mult = 0;
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
          if (std::abs(es.eigenvalues()(i) - w.value()) < 1e-8) ++mult;
        CHECK(sector_dimension(q, w) == mult);
        total += sector_dimension(q, w);
      }
      CHECK(total == (std::uint64_t{1} << q));
    }
  }
  GIVEN("the trivial sector dominates") {
    for (unsigned q = 2; q <= 14; ++q) {
      auto top = sector_dimension(q, {1, 0});
      std::uint64_t total = 0;
      for (auto w : translation_eigenvalues(q)) {
        total += sector_dimension(q, w);
        if (w.order != 1) CHECK(top >= sector_dimension(q, w) + 2);
      }
      CHECK(total == (std::uint64_t{1} << q));
      if ((q & (q - 1)) == 0) CHECK(top == sector_dimension(q, {2, 1}) + 2);
    }
  }
}

TEST_CASE("Sector bases") {
  GIVEN("every sector up to eight qubits") {
    for (unsigned q = 1; q <= 8; ++q) {
      for (auto w : translation_eigenvalues(q)) {
        auto basis = sector_basis(q, w);
        REQUIRE(basis.size() == sector_dimension(q, w));
        Eigen::MatrixXcd b(basis.front().size(), basis.size());
        for (std::size_t i = 0; i < basis.size(); ++i) {
          b.col(i) = basis[i];
          CHECK((translate_state(basis[i]) - w.value() * basis[i]).norm() < 1e-12);
        }
        auto gram = b.adjoint() * b;
        CHECK((gram - Eigen::MatrixXcd::Identity(b.cols(), b.cols())).cwiseAbs().maxCoeff() <
              1e-12);
      }
    }
  }
  GIVEN("two qubits, omega = 1") {
    auto b = sector_basis(2, {1, 0});
    bool found = false;
    for (const auto& e : b) found |= (e - combo(2, {1, 2})).norm() < 1e-14;
    CHECK(found);
  }
  GIVEN("four qubits, omega = 1") {
    auto b = sector_basis(4, {1, 0});
    std::vector<StateVector> want = {combo(4, {0}),          combo(4, {1, 2, 4, 8}),
                                     combo(4, {3, 6, 12, 9}), combo(4, {5, 10}),
                                     combo(4, {7, 14, 13, 11}), combo(4, {15})};
    REQUIRE(b.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) CHECK((b[i] - want[i]).norm() < 1e-14);
  }
  GIVEN("translate_state matches the permutation matrix") {
    StateVector psi = StateVector::LinSpaced(32, 0, 1).cast<Complex>();
    CHECK((translate_state(psi) - translation_matrix(5) * psi).norm() == 0);
  }
}

TEST_CASE("Eigenspace paths") {
  GIVEN("identical endpoints") {
    auto phi = combo(3, {1, 2, 4});
    auto p = eigen_path(phi, Complex(0, 1) * phi, 5);
    CHECK(p.phase_only);
    for (const auto& s : p.samples) CHECK((s - phi).norm() < 1e-12);
  }
  GIVEN("orthogonal endpoints") {
    auto p = eigen_path(combo(2, {0}), combo(2, {3}), 11);
    CHECK_THAT(p.t_psi, WithinAbs(std::numbers::pi / 2, 1e-12));
    REQUIRE(p.samples.size() == 11);
    CHECK((p.samples[5] - combo(2, {0, 3})).norm() < 1e-12);
  }
  GIVEN("random pairs in the -1 sector on four qubits") {
    auto basis = sector_basis(4, {2, 1});
    std::mt19937_64 rng(12);
    std::normal_distribution<double> g;
    for (int t = 0; t < 20; ++t) {
      StateVector phi = StateVector::Zero(16), psi = StateVector::Zero(16);
      for (const auto& e : basis) {
        phi += Complex(g(rng), g(rng)) * e;
        psi += Complex(g(rng), g(rng)) * e;
      }
      phi.normalize();
      psi.normalize();
      auto p = eigen_path(phi, psi, 33);
      CHECK((p.samples.front() - phi).norm() < 1e-10);
      CHECK((p.samples.back() - p.applied_phase * psi).norm() < 1e-10);
      CHECK(std::abs(std::abs(p.applied_phase) - 1) < 1e-14);
      CHECK(inner_product(phi, p.applied_phase * psi).real() >= 0);
      for (const auto& s : p.samples) {
        CHECK_THAT(s.norm(), WithinAbs(1.0, 1e-10));
        CHECK((translate_state(s) + s).norm() < 1e-10);
      }
    }
  }
}

}  // namespace
}  // namespace dexpr
