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

#include <string>
#include <string_view>
#include <vector>

#include "dexpr/circuit.hpp"

namespace dexpr {

/**
 * Circuit documents are JSON objects:
 *
 *   {"qubits": 2, "parameters": 2, "initial_state": 0,
 *    "gates": [{"op": "rx", "qubit": 0, "param": 0},
 *              {"op": "rp", "pauli": "XZ", "coeff": 1.0, "param": 1},
 *              {"op": "rp", "terms": [{"pauli": "XY", "coeff": 1.0}, ...],
 *               "param": 1},
 *              {"op": "cx", "a": 0, "b": 1},
 *              {"op": "cp", "control": 2, "value": 0, "pauli": "IZI"}],
 *    "measure": [2]}
 *
 * Every rotation is exp(-i coeff theta/2 P). Pauli words are in ket order.
 */
struct CircuitDocument {
  ParametricCircuit circuit;
  std::vector<unsigned> measure;
};

CircuitDocument parse_circuit_document(std::string_view text);
ParametricCircuit parse_circuit(std::string_view text);
ParametricCircuit load_circuit(const std::string& path);

std::string serialize_circuit(const ParametricCircuit& c,
                              const std::vector<unsigned>& measure = {});

/** A JSON array of angles, or an object with a "theta" array. */
ParameterPoint parse_theta(std::string_view text, unsigned num_params);

std::string read_file(const std::string& path);

}  // namespace dexpr
