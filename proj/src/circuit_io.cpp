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

#include "dexpr/circuit_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "dexpr/errors.hpp"

namespace dexpr {

using nlohmann::json;

namespace {

std::string location(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ParseError(field + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing field");
  return *it;
}

long long as_int(const json& v, const std::string& path, long long lo, long long hi) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  const auto x = v.get<long long>();
  if (x < lo || x > hi)
    fail(path, "value " + std::to_string(x) + " outside [" + std::to_string(lo) +
                   ", " + std::to_string(hi) + "]");
  return x;
}

double as_real(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

PauliString as_word(const json& v, const std::string& path, unsigned qubits,
                    double coeff) {
  if (!v.is_string()) fail(path, "expected a Pauli word");
  const auto w = v.get<std::string>();
  if (w.size() != qubits)
    fail(path, "word '" + w + "' has " + std::to_string(w.size()) +
                   " letters for " + std::to_string(qubits) + " qubits");
  try {
    return PauliString::from_word(w, coeff);
  } catch (const ParseError& e) {
    fail(path, e.what());
  }
}

}  // namespace

CircuitDocument parse_circuit_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("syntax error at " + location(text, e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) fail("document", "expected an object");
  const auto q = static_cast<unsigned>(as_int(require(doc, "qubits", "document"),
                                              "qubits", 1, 30));
  const auto n = static_cast<unsigned>(
      as_int(require(doc, "parameters", "document"), "parameters", 0, 1 << 20));
  const json& gates = require(doc, "gates", "document");
  if (!gates.is_array()) fail("gates", "expected a list");

  CircuitDocument out;
  ParametricCircuit& c = out.circuit;
  c = ParametricCircuit(q, n);
  if (doc.contains("initial_state"))
    c.set_initial_state(static_cast<std::uint64_t>(
        as_int(doc["initial_state"], "initial_state", 0, (1LL << q) - 1)));
  const long long qmax = q - 1;
  const long long pmax = static_cast<long long>(n) - 1;

  for (std::size_t i = 0; i < gates.size(); ++i) {
    const std::string path = "gates[" + std::to_string(i) + "]";
    const json& g = gates[i];
    const json& opv = require(g, "op", path);
    if (!opv.is_string()) fail(path + ".op", "expected a string");
    const auto op = opv.get<std::string>();
    auto qubit = [&](const char* key) {
      return static_cast<unsigned>(as_int(require(g, key, path), path + "." + key, 0, qmax));
    };
    auto param = [&] {
      if (n == 0) fail(path + ".param", "circuit declares no parameters");
      return static_cast<unsigned>(
          as_int(require(g, "param", path), path + ".param", 0, pmax));
    };
    try {
      if (op == "rx" || op == "ry" || op == "rz") {
        const Pauli p = op == "rx" ? Pauli::X : op == "ry" ? Pauli::Y : Pauli::Z;
        const unsigned qb = qubit("qubit");
        c.add_rotation(PauliString::single(q, qb, p), param());
      } else if (op == "rp") {
        PauliSum h(q);
        if (g.contains("terms")) {
          const json& terms = g["terms"];
          if (!terms.is_array() || terms.empty())
            fail(path + ".terms", "expected a nonempty list");
          for (std::size_t k = 0; k < terms.size(); ++k) {
            const std::string tp = path + ".terms[" + std::to_string(k) + "]";
            const double coeff =
                terms[k].contains("coeff") ? as_real(terms[k]["coeff"], tp + ".coeff") : 1.0;
            h.add(as_word(require(terms[k], "pauli", tp), tp + ".pauli", q, coeff));
          }
        } else {
          const double coeff = g.contains("coeff") ? as_real(g["coeff"], path + ".coeff") : 1.0;
          h.add(as_word(require(g, "pauli", path), path + ".pauli", q, coeff));
        }
        c.add_rotation(h, param());
      } else if (op == "x" || op == "y" || op == "z" || op == "h" || op == "s") {
        const FixedKind k = op == "x"   ? FixedKind::X
                            : op == "y" ? FixedKind::Y
                            : op == "z" ? FixedKind::Z
                            : op == "h" ? FixedKind::H
                                        : FixedKind::S;
        c.add(FixedGate::single(k, qubit("qubit")));
      } else if (op == "cx" || op == "cz" || op == "swap") {
        const FixedKind k = op == "cx" ? FixedKind::CX
                            : op == "cz" ? FixedKind::CZ
                                         : FixedKind::SWAP;
        const unsigned a = qubit("a");
        const unsigned b = qubit("b");
        if (a == b) fail(path, "two-qubit gate needs distinct qubits");
        c.add(FixedGate::two(k, a, b));
      } else if (op == "cp") {
        const unsigned ctrl = qubit("control");
        const auto value = static_cast<int>(as_int(require(g, "value", path), path + ".value", 0, 1));
        const auto p = as_word(require(g, "pauli", path), path + ".pauli", q, 1.0);
        if (p.letter(ctrl) != Pauli::I)
          fail(path + ".pauli", "acts on the control qubit");
        c.add(FixedGate::controlled(ctrl, value, p));
      } else {
        fail(path + ".op", "unknown operation '" + op + "'");
      }
    } catch (const DimensionError& e) {
      fail(path, e.what());
    }
  }
  try {
    c.check_complete();
  } catch (const DimensionError& e) {
    fail("parameters", e.what());
  }
  if (doc.contains("measure")) {
    const json& m = doc["measure"];
    if (!m.is_array()) fail("measure", "expected a list");
    for (std::size_t i = 0; i < m.size(); ++i)
      out.measure.push_back(static_cast<unsigned>(
          as_int(m[i], "measure[" + std::to_string(i) + "]", 0, qmax)));
  }
  return out;
}

ParametricCircuit parse_circuit(std::string_view text) {
  return parse_circuit_document(text).circuit;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ParametricCircuit load_circuit(const std::string& path) {
  try {
    return parse_circuit(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string serialize_circuit(const ParametricCircuit& c,
                              const std::vector<unsigned>& measure) {
  json doc;
  doc["qubits"] = c.qubits();
  doc["parameters"] = c.num_params();
  if (c.initial_state() != 0) doc["initial_state"] = c.initial_state();
  json gates = json::array();
  for (const auto& g : c.gates()) {
    json e;
    if (const auto* r = std::get_if<Rotation>(&g)) {
      const auto& terms = r->generator.terms;
      const PauliString& p = terms.front();
      const bool single = terms.size() == 1 && p.coeff() == 1.0 &&
                          std::popcount(p.x_mask() | p.z_mask()) == 1;
      if (single) {
        const auto q = static_cast<unsigned>(std::countr_zero(p.x_mask() | p.z_mask()));
        const Pauli l = p.letter(q);
        e["op"] = l == Pauli::X ? "rx" : l == Pauli::Y ? "ry" : "rz";
        e["qubit"] = q;
      } else if (terms.size() == 1) {
        e["op"] = "rp";
        e["pauli"] = p.word();
        if (p.coeff() != 1.0) e["coeff"] = p.coeff();
      } else {
        e["op"] = "rp";
        json ts = json::array();
        for (const auto& t : terms) ts.push_back({{"pauli", t.word()}, {"coeff", t.coeff()}});
        e["terms"] = ts;
      }
      e["param"] = r->slot;
    } else {
      const auto& f = std::get<FixedGate>(g);
      e["op"] = kind_name(f.kind);
      if (is_single_qubit(f.kind)) {
        e["qubit"] = f.a;
      } else if (f.kind == FixedKind::ControlledPauli) {
        e["control"] = f.a;
        e["value"] = f.control_value;
        e["pauli"] = f.pauli.word();
      } else {
        e["a"] = f.a;
        e["b"] = f.b;
      }
    }
    gates.push_back(e);
  }
  doc["gates"] = gates;
  if (!measure.empty()) doc["measure"] = measure;
  return doc.dump(1) + "\n";
}

ParameterPoint parse_theta(std::string_view text, unsigned num_params) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("theta: syntax error at " + location(text, e.byte));
  }
  const json& arr = doc.is_object() ? require(doc, "theta", "theta") : doc;
  if (!arr.is_array()) fail("theta", "expected a list of angles");
  if (arr.size() != num_params)
    fail("theta", "has " + std::to_string(arr.size()) + " angles for " +
                      std::to_string(num_params) + " parameters");
  ParameterPoint t(num_params);
  for (unsigned i = 0; i < num_params; ++i)
    t(i) = as_real(arr[i], "theta[" + std::to_string(i) + "]");
  return t;
}

}  // namespace dexpr
