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

#include <numbers>

#include "dexpr/circuit.hpp"
#include "dexpr/errors.hpp"
#include "dexpr/random.hpp"
#include "dexpr/vqs.hpp"
#include "oracles.hpp"

namespace dexpr {
namespace {

using Catch::Matchers::WithinAbs;

const Complex I1(0, 1);

ParametricCircuit rz_rx() {
  ParametricCircuit c(1, 2);
  c.rx(0, 0);
  c.rz(0, 1);
  return c;
}

TEST_CASE("Circuit construction checks") {
  CHECK_THROWS_AS(ParametricCircuit(0, 1), DimensionError);
  ParametricCircuit c(2, 3);
  c.rx(0, 0);
  c.rz(1, 2);
  CHECK_THROWS_AS(c.check_complete(), DimensionError);
  CHECK_THROWS_AS(c.rx(2, 1), DimensionError);
  CHECK_THROWS_AS(c.rx(0, 3), DimensionError);
  c.ry(1, 1);
  CHECK_NOTHROW(c.check_complete());
  CHECK_THROWS_AS(evaluate(c, ParameterPoint::Zero(2)), DimensionError);
}

TEST_CASE("EfficientSU2 layout") {
  auto c = efficient_su2(3, 2);
  CHECK(c.num_params() == 18);
  CHECK(c.gates().size() == 24);
  std::size_t cx = 0;
  for (const auto& g : c.gates())
    if (const auto* f = std::get_if<FixedGate>(&g); f && f->kind == FixedKind::CX) ++cx;
  CHECK(cx == 6);
  // slot 3 is the first R_Z on qubit 0, slot 6 the second-block R_Y on qubit 0
  const auto& r3 = std::get<Rotation>(c.gates()[3]);
  CHECK(r3.slot == 3);
  CHECK(r3.generator.terms[0].word() == "IIZ");
  auto two = efficient_su2(2, 1);
  CHECK(two.num_params() == 8);
  CHECK(two.gates().size() == 9);
}

TEST_CASE("evaluate") {
  GIVEN("R_X at zero") {
    ParametricCircuit c(1, 1);
    c.rx(0, 0);
    CHECK((evaluate(c, ParameterPoint::Zero(1)) - basis_state(1, 0)).norm() == 0);
  }
  GIVEN("R_Z(t2) R_X(t1)|0>") {
    auto c = rz_rx();
    for (auto [a, b] : {std::pair{0.4, 1.1}, {2.5, -0.7}, {5.0, 3.3}}) {
      ParameterPoint th(2);
      th << a, b;
      auto psi = evaluate(c, th);
      double c1 = std::cos(a / 2), s1 = std::sin(a / 2);
      double c2 = std::cos(b / 2), s2 = std::sin(b / 2);
      Complex want0 = c1 * c2 - I1 * c1 * s2;
      Complex want1 = -I1 * s1 * c2 + s1 * s2;
      CHECK(std::abs(psi(0) - want0) < 1e-15);
      CHECK(std::abs(psi(1) - want1) < 1e-15);
    }
  }
  GIVEN("EfficientSU2(3,2) at zero") {
    auto psi = evaluate(efficient_su2(3, 2), ParameterPoint::Zero(18));
    CHECK((psi - basis_state(3, 0)).norm() == 0);
  }
  GIVEN("random circuits against the dense oracle") {
    for (std::uint64_t s = 0; s < 10; ++s) {
      unsigned q = 1 + s % 4;
      auto c = test::random_circuit(q, 6, s);
      auto th = random_point(6, s + 100);
      CHECK((evaluate(c, th) - test::dense_evaluate(c, th)).norm() < 1e-12);
    }
  }
}

TEST_CASE("Derivative states") {
  GIVEN("R_X(theta)|0>") {
    ParametricCircuit c(1, 1);
    c.rx(0, 0);
    for (double t : {0.0, 0.9, 4.0}) {
      ParameterPoint th(1);
      th << t;
      auto d = derivative_state(c, th, 0);
      CHECK(std::abs(d(0) - Complex(-0.5 * std::sin(t / 2), 0)) < 1e-15);
      CHECK(std::abs(d(1) - Complex(0, -0.5 * std::cos(t / 2))) < 1e-15);
    }
  }
  GIVEN("the L_X slot of the original translation-invariant circuit at zero") {
    auto c = build_ti_ansatz(AnsatzKind::Original, 1);
    auto d = derivative_state(c, ParameterPoint::Zero(c.num_params()), 0);
    StateVector want = StateVector::Zero(16);
    for (unsigned q = 0; q < 4; ++q) want(std::int64_t{1} << q) = Complex(0, -0.5);
    CHECK((d - want).norm() < 1e-15);
  }
  GIVEN("random circuits against central differences") {
    for (std::uint64_t s = 0; s < 10; ++s) {
      unsigned q = 1 + s % 4;
      auto c = test::random_circuit(q, 12, 40 + s);
      auto th = random_point(12, s);
      for (unsigned k = 0; k < 12; ++k) {
        Eigen::VectorXcd fd = test::fd_derivative(c, th, k);
        CHECK((derivative_state(c, th, k) - fd).cwiseAbs().maxCoeff() < 1e-8);
      }
    }
  }
}

TEST_CASE("Insertion terms") {
  auto c = rz_rx();
  ParameterPoint th(2);
  th << 0.8, 2.1;
  GIVEN("slot 0: gamma_1 = R_Z(t2) X R_X(t1)|0>") {
    auto t = insertion_terms(c, th, 0);
    REQUIRE(t.size() == 1);
    Eigen::VectorXcd want = test::rotation_matrix(PauliSum{PauliString::from_word("Z")}, 2.1) *
                            test::word_matrix("X") *
                            test::rotation_matrix(PauliSum{PauliString::from_word("X")}, 0.8) *
                            Eigen::VectorXcd(basis_state(1, 0));
    CHECK((t[0].state - want).norm() < 1e-12);
  }
  GIVEN("slot 1: gamma_2 = Z R_Z(t2) R_X(t1)|0>") {
    auto t = insertion_terms(c, th, 1);
    REQUIRE(t.size() == 1);
    Eigen::VectorXcd want = test::word_matrix("Z") * test::dense_evaluate(c, th);
    CHECK((t[0].state - want).norm() < 1e-12);
  }
  GIVEN("a translation-invariant layer") {
    auto ti = build_ti_ansatz(AnsatzKind::Original, 1);
    auto th4 = random_point(ti.num_params(), 3);
    auto terms = insertion_terms(ti, th4, 2);  // L_XX
    CHECK(terms.size() == 4);
    for (const auto& t : terms) CHECK_THAT(t.state.norm(), WithinAbs(1.0, 1e-12));
  }
  GIVEN("any circuit") {
    for (std::uint64_t s = 0; s < 10; ++s) {
      auto rc = test::random_circuit(3, 8, s);
      auto p = random_point(8, s);
      auto all = all_insertion_terms(rc, p);
      for (unsigned k = 0; k < 8; ++k) {
        auto one = insertion_terms(rc, p, k);
        REQUIRE(one.size() == all[k].size());
        CHECK(one.size() == rc.num_insertions(k));
        StateVector sum = StateVector::Zero(8);
        for (const auto& t : all[k]) sum += Complex(0, -0.5) * t.coeff * t.state;
        CHECK((sum - derivative_state(rc, p, k)).norm() < 1e-12);
      }
    }
  }
}

TEST_CASE("Probes and reordering") {
  GIVEN("a phase probe on EfficientSU2(3,1)") {
    auto c = efficient_su2(3, 1);
    auto probed = prepend_probe(c, {PauliSum{PauliString::from_word("IIZ")}});
    CHECK(probed.num_params() == 13);
    auto th = random_point(12, 9);
    CHECK((evaluate(probed, probed_point(th, 1)) - evaluate(c, th)).norm() < 1e-14);
  }
  GIVEN("a two-qubit probe") {
    auto c = efficient_su2(2, 1);
    auto probed = prepend_probe(c, {PauliSum{PauliString::from_word("ZI")}});
    CHECK(probed.num_params() == c.num_params() + 1);
  }
  GIVEN("permutations") {
    auto c = test::random_circuit(3, 7, 5);
    auto th = random_point(7, 6);
    std::vector<unsigned> id{0, 1, 2, 3, 4, 5, 6};
    CHECK(reorder_parameters(c, id) == c);
    std::vector<unsigned> perm{3, 0, 6, 1, 5, 2, 4};
    auto r = reorder_parameters(c, perm);
    CHECK(evaluate(r, permute_point(th, perm)) == evaluate(c, th));
    std::vector<unsigned> swap{0, 4, 2, 3, 1, 5, 6};
    CHECK(reorder_parameters(reorder_parameters(c, swap), swap) == c);
    CHECK_THROWS_AS(reorder_parameters(c, {0, 0, 1, 2, 3, 4, 5}), DimensionError);
  }
}

}  // namespace
}  // namespace dexpr
