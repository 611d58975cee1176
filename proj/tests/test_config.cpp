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

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <numbers>

#include "shiftbound/config.hpp"
#include "shiftbound/report.hpp"

using namespace shiftbound;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = std::string("/tmp/shiftbound_test_") + name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("key-value parsing") {
  ScenarioConfig cfg = ScenarioConfig::parse_string(
      "# comment\n"
      "probe.kind = fock\n"
      "probe.n = 3   # trailing comment\n"
      "dim = 12\n");
  CHECK(cfg.get("probe.kind") == "fock");
  CHECK(cfg.get_int_or("probe.n", -1) == 3);
  CHECK(cfg.get_int_or("dim", -1) == 12);
  CHECK(cfg.get_or("missing", "fallback") == "fallback");
  CHECK_THROWS_AS((void)cfg.get("missing"), ConfigError);
  CHECK_THROWS(ScenarioConfig::parse_string("just some text\n"));
}

TEST_CASE("json alternative encoding") {
  ScenarioConfig cfg = ScenarioConfig::parse_string(
      R"({"probe": {"kind": "fock", "n": 3}, "dim": 12, "copies": 2})");
  CHECK(cfg.get("probe.kind") == "fock");
  CHECK(cfg.get_int_or("probe.n", -1) == 3);
  CHECK(cfg.get_int_or("copies", 1) == 2);

  ScenarioConfig kv = ScenarioConfig::parse_string(
      "probe.kind = fock\nprobe.n = 3\ndim = 12\ncopies = 2\n");
  CHECK(cfg.digest() == kv.digest());
}

TEST_CASE("complex literals") {
  CHECK(parse_complex("1.5") == cplx(1.5, 0));
  CHECK(parse_complex("1.5+0.5j") == cplx(1.5, 0.5));
  CHECK(parse_complex("-2e-3-4j") == cplx(-2e-3, -4));
  CHECK(parse_complex("0.7j") == cplx(0, 0.7));
  CHECK_THROWS(parse_complex(""));
}

TEST_CASE("matrix csv round trip") {
  std::string path = write_temp("mat.csv",
                                "re0,im0,re1,im1\n"
                                "0.75,0,0.1,0.05\n"
                                "0.1,-0.05,0.25,0\n");
  Mat m = read_matrix_csv(path);
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 2);
  CHECK(m(0, 1) == cplx(0.1, 0.05));
  CHECK(m(1, 0) == cplx(0.1, -0.05));
  std::remove(path.c_str());
}

TEST_CASE("building canonical phase scenarios") {
  ScenarioConfig cfg = ScenarioConfig::parse_string(
      "dim = 10\n"
      "probe.kind = fock\n"
      "probe.n = 9\n"
      "generator.kind = number\n"
      "prior.kind = uniform-circle\n"
      "povm.kind = canonical-phase\n"
      "grid.nodes = 256\n");
  BuiltScenario built = build_scenario(cfg);
  CHECK(built.simulable());
  CHECK(built.phase_like);
  CHECK(built.interval_length == doctest::Approx(2 * std::numbers::pi));
  Scenario s = built.to_scenario();
  CHECK(s.probe.dim() == 10);
  CHECK(s.povm.size() == 256);

  // bound report includes the phase tags with the right value
  AssembledBounds bounds = assemble_bound_report(
      BoundInputs{built.probe, built.gen, built.prior, &*built.povm, built.copies}, {});
  const BoundEntry* phasegen = bounds.report.find("phasegen");
  REQUIRE(phasegen != nullptr);
  CHECK(phasegen->value == doctest::Approx(0.0559304368351).epsilon(1e-9));
}

TEST_CASE("mach-zehnder bounds-only config") {
  ScenarioConfig cfg = ScenarioConfig::parse_string(
      "generator.kind = mach-zehnder\n"
      "generator.nmax = 1\n"
      "probe.kind = fock\n"
      "probe.n = 1\n"
      "prior.kind = uniform-circle\n"
      "povm.kind = none\n");
  BuiltScenario built = build_scenario(cfg);
  CHECK_FALSE(built.simulable());
  CHECK(built.mz_nmax.value() == 1);
  CHECK(built.gen.dim() == 3);
  AssembledBounds bounds = assemble_bound_report(
      BoundInputs{built.probe, built.gen, built.prior, nullptr, built.copies}, {});
  // the 1/2-spaced spectrum makes the parameter 4 pi periodic, so the flat
  // prior gives K_I = 1/q_max = 4 pi
  CHECK(bounds.ki.value == doctest::Approx(4 * std::numbers::pi).epsilon(1e-9));
  MzBounds mz = mz_bounds(*built.mz_nmax, bounds.ki, built.copies);
  CHECK(mz.relative == doctest::Approx(0.0806569081730).epsilon(1e-9));
  CHECK(mz.absolute ==
        doctest::Approx(0.241970724519 * 4 * std::numbers::pi / 3.0).epsilon(1e-9));
}

TEST_CASE("gaussian noise config applies the channel") {
  ScenarioConfig cfg = ScenarioConfig::parse_string(
      "dim = 36\n"
      "probe.kind = coherent\n"
      "probe.alpha = 1.2+0j\n"
      "generator.kind = number\n"
      "prior.kind = uniform-circle\n"
      "povm.kind = canonical-phase\n"
      "grid.nodes = 128\n"
      "noise.kind = gaussian\n"
      "noise.n_lambda = 0.5\n");
  BuiltScenario built = build_scenario(cfg);
  REQUIRE(built.noise.has_value());
  CHECK(built.noise->pre_noise_n_mean == doctest::Approx(1.44).epsilon(1e-6));
  CHECK(mean_photon_number(built.probe) == doctest::Approx(1.94).epsilon(1e-3));
  CHECK(built.noise->s_noisy >=
        gaussian_noise_entropy_floor(0.5).strong - 1e-3);
}

TEST_CASE("config errors carry field paths") {
  ScenarioConfig bad = ScenarioConfig::parse_string("probe.kind = warp\n");
  try {
    build_scenario(bad);
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "probe.kind");
  }

  ScenarioConfig bad_n = ScenarioConfig::parse_string(
      "dim = 4\nprobe.kind = fock\nprobe.n = 9\n");
  try {
    build_scenario(bad_n);
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "probe.n");
  }
}

TEST_CASE("json report formatting is stable") {
  BoundReport rep;
  rep.add({"phasegen", 0.0559304368351, "test entry", false, true, "", CompareAxis::DeltaX});
  rep.add({"con", 0.38, "conjectured", true, true, "", CompareAxis::Relative});
  nlohmann::json j = to_json(rep);
  const std::string dumped = dump_json(j);
  CHECK(dumped.find("0.0559304368351") != std::string::npos);
  CHECK(dumped.find("\"conjecture\": true") != std::string::npos);
  CHECK(dump_json(j) == dumped);  // deterministic

  const std::string csv = bound_report_csv(rep);
  CHECK(csv.find("phasegen,0.0559304368351,0,1") != std::string::npos);

  // compact mode emits a single line (JSON-lines detail files)
  const std::string line = dump_json(j, 0);
  CHECK(line.find('\n') == std::string::npos);
  CHECK(nlohmann::json::parse(line) == nlohmann::json::parse(dumped));
}
