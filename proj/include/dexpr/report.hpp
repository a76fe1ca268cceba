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

#include <json.hpp>

#include "dexpr/dea.hpp"
#include "dexpr/device.hpp"
#include "dexpr/momentum.hpp"
#include "dexpr/symmetry.hpp"
#include "dexpr/vqs.hpp"

namespace dexpr {

/** Machine-readable reports; slots are 0-based, infinities are "inf". */
nlohmann::json to_json(const AnalysisReport& r);
nlohmann::json to_json(const ValidityEstimate& v);
nlohmann::json to_json(const SymmetryFinding& f);
nlohmann::json to_json(const MeasuredGram& g);
nlohmann::json to_json(const HybridReport& h);
nlohmann::json to_json(const SectorSpec& s);
nlohmann::json to_json(const RrefResult& r, const std::vector<unsigned>& slots);
nlohmann::json to_json(const ContinuationTrace& t);

nlohmann::json matrix_json(const Eigen::MatrixXd& m);
nlohmann::json state_json(const StateVector& psi);
nlohmann::json real_json(double x);

}  // namespace dexpr
