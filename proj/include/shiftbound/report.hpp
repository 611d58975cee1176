// Copyright 2026 The shiftbound Authors
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

#ifndef SHIFTBOUND_REPORT_HPP
#define SHIFTBOUND_REPORT_HPP

#include <string>

#include <json.hpp>

#include "shiftbound/bounds.hpp"
#include "shiftbound/scenario.hpp"
#include "shiftbound/ur.hpp"

namespace shiftbound {

nlohmann::json to_json(const BoundEntry& entry);
nlohmann::json to_json(const BoundReport& report);
nlohmann::json to_json(const Achieved& achieved);
nlohmann::json to_json(const UrCheckResult& result);

/// Serialize with numbers printed at 12 significant digits; key order is
/// lexicographic (nlohmann's default), so identical inputs give identical
/// bytes.
std::string dump_json(const nlohmann::json& j, int indent = 2);

/// CSV rows "tag,value,conjecture,applicable,assumptions".
std::string bound_report_csv(const BoundReport& report);

/// Distribution CSV with header "parameter,density".
std::string distribution_csv(const GriddedDistribution& d);

}  // namespace shiftbound

#endif  // SHIFTBOUND_REPORT_HPP
