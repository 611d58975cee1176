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

#ifndef SHIFTBOUND_CONFIG_HPP
#define SHIFTBOUND_CONFIG_HPP

#include <map>
#include <optional>
#include <string>

#include "shiftbound/scenario.hpp"

namespace shiftbound {

/// Configuration error carrying the offending field path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Flat dotted-key configuration. The native encoding is "key = value"
/// lines with '#' comments; JSON objects are accepted as an alternative
/// encoding and flattened into the same key space.
class ScenarioConfig {
 public:
  static ScenarioConfig parse_file(const std::string& path);
  static ScenarioConfig parse_string(const std::string& text);

  bool has(const std::string& key) const;
  std::string get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double_or(const std::string& key, double fallback) const;
  int get_int_or(const std::string& key, int fallback) const;
  cplx get_complex(const std::string& key) const;

  void set(const std::string& key, const std::string& value);

  /// Canonical "key=value" digest (FNV-1a hex) over sorted keys.
  std::string digest() const;

  const std::map<std::string, std::string>& entries() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

/// Scenario objects resolved from a config, plus reporting context.
struct BuiltScenario {
  DensityOperator probe;
  Generator gen;
  GriddedDistribution prior;
  std::optional<Povm> povm;
  int copies = 1;
  double interval_length = 0.0;
  std::optional<NoiseContext> noise;
  std::optional<double> additive_hz;
  std::optional<int> mz_nmax;
  bool phase_like = false;

  Scenario to_scenario() const;
  bool simulable() const { return povm.has_value() && copies == 1; }
};

BuiltScenario build_scenario(const ScenarioConfig& config);

/// Complex scalar in "a+bj" / "a-bj" / "a" form.
cplx parse_complex(const std::string& text);

/// Matrix CSV: one header line, then rows with re/im pairs in adjacent
/// columns (2 d columns for a d-column complex matrix).
Mat read_matrix_csv(const std::string& path);

}  // namespace shiftbound

#endif  // SHIFTBOUND_CONFIG_HPP
