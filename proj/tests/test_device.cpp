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

#include <cmath>
#include <numbers>

#include "dexpr/circuit_io.hpp"
#include "dexpr/device.hpp"
#include "dexpr/errors.hpp"
#include "dexpr/random.hpp"
#include "oracles.hpp"

namespace dexpr {
namespace {

using Catch::Matchers::WithinAbs;
using Slots = std::vector<unsigned>;

ParametricCircuit single_qubit(const std::string& axes) {
  ParametricCircuit c(1, static_cast<unsigned>(axes.size()));
  for (unsigned k = 0; k < axes.size(); ++k) {
    if (axes[k] == 'x') c.rx(0, k);
    if (axes[k] == 'y') c.ry(0, k);
    if (axes[k] == 'z') c.rz(0, k);
  }
  return c;
}

// gamma for the term-th Pauli string of `slot`, built from dense gate matrices
Eigen::VectorXcd insertion_oracle(const ParametricCircuit& c, const ParameterPoint& th,
                                  unsigned slot, std::size_t term) {
  const unsigned q = c.qubits();
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(Eigen::Index{1} << q);
  psi(static_cast<Eigen::Index>(c.initial_state())) = 1;
  std::size_t seen = 0;
  for (const auto& g : c.gates()) {
    psi = test::gate_matrix(g, th, q) * psi;
    const auto* r = std::get_if<Rotation>(&g);
    if (!r || r->slot != slot) continue;
    for (const auto& t : r->generator.terms) {
      if (seen++ == term) psi = test::word_matrix(t.word()) * psi;
    }
  }
  return psi;
}

TEST_CASE("Ancilla programs") {
  GIVEN("the two-parameter circuit") {
    auto c = single_qubit("xz");
    auto prog = ancilla_program(c, {1, 0}, {0, 0});
    CHECK(prog.ancilla == 1);
    CHECK(prog.measured == Slots{1});
    CHECK(prog.circuit.qubits() == 2);
    CHECK(prog.circuit.gates().size() == c.gates().size() + 6);
    const auto& first = std::get<FixedGate>(prog.circuit.gates().front());
    const auto& last = std::get<FixedGate>(prog.circuit.gates().back());
    CHECK(first.kind == FixedKind::H);
    CHECK(first.a == 1);
    CHECK(last.kind == FixedKind::H);
  }
  GIVEN("a diagonal request") {
    CHECK_THROWS_AS(ancilla_program(single_qubit("xz"), {0, 0}, {0, 0}), PreconditionError);
    CHECK_THROWS_AS(ancilla_program(single_qubit("xz"), {0, 1}, {1, 0}), DimensionError);
  }
  GIVEN("random circuits against the dense overlap") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      auto c = test::random_circuit(1 + s % 3, 5, 1300 + s);
      auto th = random_point(5, s);
      for (unsigned m = 0; m < 5; ++m)
        for (unsigned n = 0; n < 5; ++n) {
          if (m == n) continue;
          auto prog = ancilla_program(c, {m, 0}, {n, 0});
          double re = insertion_oracle(c, th, m, 0).dot(insertion_oracle(c, th, n, 0)).real();
          CHECK_THAT(ancilla_zero_probability(prog, th), WithinAbs((1 + re) / 2, 1e-12));
        }
    }
  }
  GIVEN("a shared slot") {
    auto c = parse_circuit(read_file(DEXPR_DATA_DIR "/circuits/layered.circ"));
    auto th = random_point(3, 2);
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 2; ++b) {
        double re = insertion_oracle(c, th, 0, a).dot(insertion_oracle(c, th, 1, b)).real();
        CHECK_THAT(ancilla_zero_probability(ancilla_program(c, {0, a}, {1, b}), th),
                   WithinAbs((1 + re) / 2, 1e-12));
      }
  }
  GIVEN("export") {
    auto c = single_qubit("zxzy");
    auto prog = ancilla_program(c, {1, 0}, {2, 0});
    auto doc = parse_circuit_document(serialize_circuit(prog.circuit, prog.measured));
    CHECK(doc.circuit == prog.circuit);
    CHECK(doc.measure == prog.measured);
  }
}

TEST_CASE("Overlap sampling") {
  GIVEN("identical branches") {
    // X commutes with both R_X gates, so both insertions give the same state
    auto c = single_qubit("xx");
    auto th = random_point(2, 1);
    for (std::uint64_t shots : {1ull, 10ull, 1000ull}) {
      auto o = measure_overlap(c, th, {0, 0}, {1, 0}, ShotModel{shots, 3.0, 4});
      CHECK_THAT(o.p_exact, WithinAbs(1.0, 1e-14));
      CHECK(o.estimate == 1.0);
      CHECK(o.sigma == 1.0 / (2.0 * static_cast<double>(shots)));
    }
  }
  GIVEN("orthogonal branches at many shots") {
    auto c = single_qubit("zxzy");
    auto th = random_point(4, 6);
    auto o = measure_overlap(c, th, {0, 0}, {1, 0}, ShotModel{10'000'000, 3.0, 9});
    CHECK_THAT(o.exact, WithinAbs(0, 1e-14));
    CHECK_THAT(o.p_exact, WithinAbs(0.5, 1e-14));
    CHECK(std::abs(o.estimate) <= 3 * o.sigma);
  }
  GIVEN("seeded repetitions") {
    auto c = test::random_circuit(2, 4, 77, false);
    auto th = random_point(4, 3);
    double sum = 0, sigma = 0, exact = 0;
    for (std::uint64_t s = 0; s < 1000; ++s) {
      auto o = measure_overlap(c, th, {0, 0}, {3, 0}, ShotModel{1000, 3.0, s});
      CHECK(o.p_hat >= 0);
      CHECK(o.p_hat <= 1);
      CHECK(std::abs(o.estimate) <= 1);
      sum += o.estimate;
      sigma = o.sigma_true;
      exact = o.exact;
    }
    CHECK(std::abs(sum / 1000 - exact) <= 4 * sigma / std::sqrt(1000.0));
    double re = insertion_oracle(c, th, 0, 0).dot(insertion_oracle(c, th, 3, 0)).real();
    CHECK_THAT(exact, WithinAbs(re, 1e-12));
  }
  GIVEN("quadrupled shots") {
    auto c = test::random_circuit(2, 4, 78, false);
    auto th = random_point(4, 5);
    for (std::uint64_t s = 0; s < 10; ++s) {
      auto a = measure_overlap(c, th, {1, 0}, {2, 0}, ShotModel{4000, 3.0, s});
      auto b = measure_overlap(c, th, {1, 0}, {2, 0}, ShotModel{16000, 3.0, s});
      double ratio = b.sigma / a.sigma;
      CHECK(ratio >= 0.4);
      CHECK(ratio <= 0.6);
    }
  }
  GIVEN("a fixed seed") {
    auto c = single_qubit("zxzy");
    auto th = random_point(4, 6);
    auto a = measure_overlap(c, th, {1, 0}, {2, 0}, ShotModel{500, 3.0, 42});
    auto b = measure_overlap(c, th, {1, 0}, {2, 0}, ShotModel{500, 3.0, 42});
    CHECK(a.count == b.count);
  }
  GIVEN("an invalid model") {
    CHECK_THROWS_AS(validate(ShotModel{0, 3.0, 0}), PreconditionError);
    CHECK_THROWS_AS(validate(ShotModel{10, 0.0, 0}), PreconditionError);
  }
}

TEST_CASE("Hybrid analysis") {
  auto c = single_qubit("zxzy");
  GIVEN("the single-qubit four-rotation circuit with s3 = 0.132") {
    for (std::uint64_t shots : {8000ull, 1000ull}) {
      for (std::uint64_t s = 0; s < 5; ++s) {
        ParameterPoint th = random_point(4, 20 + s);
        th(1) = std::acos(0.472);
        HybridOptions o;
        o.shots = {shots, 3.0, s};
        auto h = hybrid_analyze(c, th, o);
        CHECK_THAT(h.report.steps[2].exact_min_eigenvalue, WithinAbs(0.132, 1e-12));
        CHECK(h.report.redundant == Slots{3});
        CHECK(h.report.provenance == Provenance::Measured);
        const auto& last = h.report.steps.back();
        CHECK(last.threshold == 4 * last.epsilon);
        CHECK(last.min_eigenvalue <= last.threshold);
        CHECK(last.min_eigenvalue >= -last.threshold);
        CHECK(std::abs(last.exact_min_eigenvalue) < 1e-12);
      }
    }
  }
  GIVEN("any point") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      HybridOptions o;
      o.shots = {1000, 3.0, s};
      auto h = hybrid_analyze(c, random_point(4, s), o);
      std::size_t accepted = 0;
      for (const auto& st : h.report.steps) {
        CHECK(st.threshold == static_cast<double>(accepted + 1) * st.epsilon);
        CHECK(st.accepted == (st.min_eigenvalue > st.threshold));
        if (st.accepted) ++accepted;
      }
      CHECK(accepted <= 3);
    }
  }
  GIVEN("eigenvalue stability") {
    unsigned within = 0, total = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
      HybridOptions o;
      o.shots = {1000, 3.0, s};
      auto h = hybrid_analyze(c, random_point(4, s), o);
      for (std::size_t k = 1; k < h.report.steps.size(); ++k) {
        const auto& st = h.report.steps[k];
        ++total;
        if (std::abs(st.min_eigenvalue - st.exact_min_eigenvalue) <=
            static_cast<double>(k + 1) * st.epsilon_true)
          ++within;
      }
    }
    CHECK(within >= 0.99 * total);
  }
  GIVEN("worker count and reruns") {
    HybridOptions one, three;
    one.shots = three.shots = {2000, 3.0, 8};
    three.jobs = 3;
    auto th = random_point(4, 8);
    auto a = hybrid_analyze(c, th, one);
    auto b = hybrid_analyze(c, th, three);
    CHECK(a.report.independent == b.report.independent);
    CHECK(a.gram.gram.matrix == b.gram.gram.matrix);
    CHECK(a.total_shots == b.total_shots);
  }
  GIVEN("shared slots") {
    auto lay = parse_circuit(read_file(DEXPR_DATA_DIR "/circuits/layered.circ"));
    HybridOptions o;
    o.shots = {4000, 3.0, 1};
    auto h = hybrid_analyze(lay, random_point(3, 4), o);
    REQUIRE(h.report.independent == Slots{0, 1, 2});
    Eigen::Matrix3i want;
    want << 3, 6, 9, 6, 1, 6, 9, 6, 3;
    CHECK(h.gram.pairs == want);
    CHECK(h.circuit_runs == 3 + 1 + 3 + 6 + 9 + 6);
    CHECK(h.total_shots == h.circuit_runs * 4000);
  }
  GIVEN("a fixed threshold") {
    HybridOptions o;
    o.shots = {1000, 3.0, 0};
    o.threshold = 10.0;
    auto h = hybrid_analyze(c, random_point(4, 1), o);
    CHECK(h.report.independent == Slots{0});
  }
}

}  // namespace
}  // namespace dexpr
