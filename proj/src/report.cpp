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

#include "shiftbound/report.hpp"

#include <cstdio>
#include <sstream>

namespace shiftbound {

namespace {

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::string(buf);
}

void dump_value(const nlohmann::json& j, std::string& out, int indent, int depth) {
  const bool compact = indent <= 0;
  const std::string nl = compact ? "" : "\n";
  const std::string pad(compact ? 0 : static_cast<std::size_t>(indent) * depth, ' ');
  const std::string pad_in(compact ? 0 : static_cast<std::size_t>(indent) * (depth + 1), ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{" + nl;
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out += pad_in + nlohmann::json(it.key()).dump() + (compact ? ":" : ": ");
        dump_value(it.value(), out, indent, depth + 1);
        if (i + 1 < j.size()) out += ",";
        out += nl;
      }
      out += pad + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[" + nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        out += pad_in;
        dump_value(j[i], out, indent, depth + 1);
        if (i + 1 < j.size()) out += ",";
        out += nl;
      }
      out += pad + "]";
      return;
    }
    case nlohmann::json::value_t::number_float:
      out += fmt12(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string dump_json(const nlohmann::json& j, int indent) {
  std::string out;
  dump_value(j, out, indent, 0);
  return out;
}

nlohmann::json to_json(const BoundEntry& entry) {
  nlohmann::json j;
  j["value"] = entry.value;
  j["assumptions"] = entry.assumptions;
  if (entry.conjecture) j["conjecture"] = true;
  if (!entry.applicable) {
    j["applicable"] = false;
    j["reason"] = entry.reason;
  }
  return j;
}

nlohmann::json to_json(const BoundReport& report) {
  nlohmann::json bounds = nlohmann::json::object();
  for (const BoundEntry& e : report.entries) bounds[e.tag] = to_json(e);
  nlohmann::json j;
  j["bounds"] = bounds;
  if (report.achieved) j["achieved"] = to_json(*report.achieved);
  return j;
}

nlohmann::json to_json(const Achieved& achieved) {
  nlohmann::json j;
  j["delta_x"] = achieved.delta_x;
  j["h_y"] = achieved.h_y;
  j["relative"] = achieved.relative;
  return j;
}

nlohmann::json to_json(const UrCheckResult& result) {
  nlohmann::json j;
  j["relation"] = result.relation;
  j["lhs"] = result.lhs;
  j["rhs"] = result.rhs;
  j["slack"] = result.slack();
  j["inputs"] = result.inputs_digest;
  return j;
}

std::string bound_report_csv(const BoundReport& report) {
  std::ostringstream out;
  out << "tag,value,conjecture,applicable,assumptions\n";
  for (const BoundEntry& e : report.entries) {
    out << e.tag << ',' << fmt12(e.value) << ',' << (e.conjecture ? 1 : 0) << ','
        << (e.applicable ? 1 : 0) << ",\"" << e.assumptions << "\"\n";
  }
  return out.str();
}

std::string distribution_csv(const GriddedDistribution& d) {
  std::ostringstream out;
  out << "parameter,density\n";
  for (int i = 0; i < d.size(); ++i) {
    out << fmt12(d.grid().node(i)) << ',' << fmt12(d.density(i)) << "\n";
  }
  return out.str();
}

}  // namespace shiftbound
