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

#include <chrono>
#include <fstream>
#include <iostream>
#include <numbers>

#include <CLI11.hpp>
#include <json.hpp>

#include "shiftbound/bounds.hpp"
#include "shiftbound/config.hpp"
#include "shiftbound/report.hpp"
#include "shiftbound/scenario.hpp"
#include "shiftbound/ur.hpp"
#include "shiftbound/version.hpp"

namespace sb = shiftbound;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
  return buf;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(out_path);
    out << text << "\n";
  }
}

// Context-specific entries beyond the generic chain: interferometric caps,
// timing floors, additive noise, capacity caps.
void append_context_entries(sb::BoundReport& rep, const sb::BuiltScenario& built,
                            const sb::KiEstimate& ki) {
  const bool uniform = sb::is_uniform_prior(built.prior);
  if (built.mz_nmax) {
    sb::MzBounds mz = sb::mz_bounds(*built.mz_nmax, ki, built.copies);
    rep.add({"int", mz.absolute, "photon-number cap N_max = " + std::to_string(*built.mz_nmax),
             false, true, "", sb::CompareAxis::DeltaX});
    rep.add({"int_relative", mz.relative,
             "uniform prior; m = " + std::to_string(built.copies), false, uniform,
             uniform ? "" : "requires a uniform prior", sb::CompareAxis::Relative});
  }
  if (built.gen.kind() == sb::SpectrumKind::Discrete && built.gen.bounded_below() &&
      !built.phase_like) {
    // timing context: interval prior over a discrete Hamiltonian
    const double e0 = *built.gen.lower_bound();
    const double e_mean = sb::generator_mean_abs_dev(built.gen, built.probe, e0) + e0;
    const double tau = built.interval_length;
    const double gap = built.gen.min_gap().value_or(0.0);
    if (gap > 0 && tau > 0) {
      sb::BoundReport tb = sb::time_bounds(e_mean, e0, gap, built.prior.max_density(), tau,
                                           built.copies, built.gen.level_count());
      for (sb::BoundEntry& e : tb.entries) {
        if (!uniform && (e.tag == "timem" || e.tag == "d")) {
          e.applicable = false;
          e.reason = "requires a uniform prior";
        }
        rep.add(e);
      }
      if (!uniform) {
        rep.add({"qzz", 0.0, "", false, false, "requires a uniform prior",
                 sb::CompareAxis::Relative});
      } else if (auto tsang = sb::tsang_bound(tau, e_mean - e0)) {
        rep.add({"qzz", *tsang, "constrained relative floor; uniform prior", false, true, "",
                 sb::CompareAxis::Relative});
      } else {
        rep.add({"qzz", 0.0, "", false, false, "constraint tau <E - e0> >= 0.690 not met",
                 sb::CompareAxis::Relative});
      }
    }
  }
  if (built.additive_hz) {
    const sb::BoundEntry* gen_floor = rep.find("gen");
    if (gen_floor && gen_floor->applicable) {
      rep.add({"noisy_additive", sb::noisy_additive_bound(gen_floor->value, *built.additive_hz),
               "independent additive outcome noise with the given entropy", false, true, "",
               sb::CompareAxis::None});
    }
  }
  if (built.phase_like) {
    const sb::BoundEntry* rel = rep.find("phasen");
    if (rel == nullptr) rel = rep.find("phasem");
    if (rel == nullptr) rel = rep.find("gendis");
    if (rel != nullptr && rel->applicable && rel->value > 0 && rel->value <= 1 &&
        rep.find("mi_cap") == nullptr) {
      rep.add({"mi_cap", sb::mutual_info_cap(rel->value),
               "approximate capacity cap in bits; reported only", false, true, "",
               sb::CompareAxis::None});
    }
  }
}

nlohmann::json run_record(const sb::ScenarioConfig& cfg, const sb::BoundReport& rep,
                          std::uint64_t seed, bool no_meta) {
  nlohmann::json j = sb::to_json(rep);
  j["config_digest"] = cfg.digest();
  j["seed"] = seed;
  j["version"] = SHIFTBOUND_VERSION;
  if (!no_meta) j["timestamp"] = iso_timestamp();
  return j;
}

int cmd_bounds(const std::string& config_path, const std::string& out_path,
               const std::string& format, bool no_meta, std::uint64_t seed) {
  sb::ScenarioConfig cfg = sb::ScenarioConfig::parse_file(config_path);
  sb::BuiltScenario built = sb::build_scenario(cfg);
  sb::RunOptions options;
  options.interval_length = built.interval_length;
  options.noise = built.noise;
  sb::BoundInputs inputs{built.probe, built.gen, built.prior,
                         built.povm ? &*built.povm : nullptr, built.copies};
  sb::AssembledBounds assembled = sb::assemble_bound_report(inputs, options);
  append_context_entries(assembled.report, built, assembled.ki);
  if (format == "csv") {
    write_output(sb::bound_report_csv(assembled.report), out_path);
  } else {
    write_output(sb::dump_json(run_record(cfg, assembled.report, seed, no_meta)), out_path);
  }
  return kExitOk;
}

int cmd_simulate(const std::string& config_path, const std::string& out_path, bool no_meta,
                 std::uint64_t seed, double tolerance, const std::string& dist_path,
                 bool with_ur) {
  sb::ScenarioConfig cfg = sb::ScenarioConfig::parse_file(config_path);
  sb::BuiltScenario built = sb::build_scenario(cfg);
  if (!built.simulable()) {
    std::cerr << "simulate: scenario is not simulable (needs a measurement and copies = 1)\n";
    return kExitUsage;
  }
  sb::RunOptions options;
  options.interval_length = built.interval_length;
  options.noise = built.noise;
  options.floor_tolerance = tolerance;
  sb::RunResult result = sb::run_scenario(built.to_scenario(), options);
  append_context_entries(result.report, built, result.ki);
  result.report.achieved = result.achieved;

  nlohmann::json j = run_record(cfg, result.report, seed, no_meta);
  j["h_g"] = result.h_g;
  j["quadrature_defect"] = result.error.defect();
  if (with_ur && built.phase_like) {
    nlohmann::json checks = nlohmann::json::array();
    const sb::UniformGrid& grid = built.povm->grid();
    checks.push_back(sb::to_json(sb::check_number_phase(built.probe, grid)));
    checks.push_back(sb::to_json(sb::check_number_phase(built.probe, grid,
                                                        /*with_state_entropy=*/true)));
    j["ur_checks"] = checks;
  }
  std::vector<std::string> bad = sb::violated_floors(result.report, result.achieved, tolerance);
  j["violations"] = bad;
  if (!dist_path.empty()) {
    std::ofstream dist(dist_path);
    dist << sb::distribution_csv(result.error.law);
  }
  write_output(sb::dump_json(j), out_path);
  if (!bad.empty()) {
    std::cerr << "simulate: bound violation beyond tolerance:";
    for (const std::string& tag : bad) std::cerr << ' ' << tag;
    std::cerr << "\n";
    return kExitViolation;
  }
  return kExitOk;
}

struct SuiteSummary {
  int passes = 0;
  int failures = 0;
  double worst_slack = std::numeric_limits<double>::infinity();
};

void record(SuiteSummary& summary, const sb::UrCheckResult& r, double tol,
            std::ofstream* detail) {
  summary.worst_slack = std::min(summary.worst_slack, r.slack());
  if (r.passes(tol)) {
    ++summary.passes;
  } else {
    ++summary.failures;
  }
  if (detail && detail->is_open()) {
    *detail << sb::dump_json(sb::to_json(r), 0) << "\n";
  }
}

int cmd_verify_ur(const std::string& suite, int trials, std::uint64_t seed,
                  const std::string& out_path) {
  std::ofstream detail;
  if (!out_path.empty()) detail.open(out_path);
  SuiteSummary summary;
  const double discrete_tol = 1e-8;
  const double grid_tol = 1e-5;

  if (suite == "discrete" || suite == "rank1") {
    for (int t = 0; t < trials; ++t) {
      sb::Rng rng(sb::derive_seed(seed, t));
      std::uniform_int_distribution<int> dim_pick(2, 8);
      const int dim = dim_pick(rng);
      sb::DensityOperator rho = sb::random_density(rng, dim, 1 + (t % dim));
      sb::UrCheckResult r;
      if (suite == "discrete") {
        std::uniform_int_distribution<int> k_pick(2, dim);
        sb::Povm a = sb::random_finite_povm(rng, dim, k_pick(rng));
        sb::Povm b = sb::random_finite_povm(rng, dim, k_pick(rng));
        r = sb::check_eur_discrete(rho, a, b);
      } else {
        sb::Povm a = sb::random_rank1_povm(rng, dim, dim + (t % 3));
        sb::Povm b = sb::random_finite_povm(rng, dim, 2 + (t % (dim - 1)));
        r = sb::check_eur_rank1(rho, a, b);
      }
      record(summary, r, discrete_tol, &detail);
    }
  } else if (suite == "number-phase") {
    sb::UniformGrid grid = sb::UniformGrid::circle(512);
    for (int t = 0; t < trials; ++t) {
      sb::Rng rng(sb::derive_seed(seed, t));
      std::uniform_int_distribution<int> dim_pick(2, 16);
      const int dim = dim_pick(rng);
      sb::DensityOperator rho =
          (t % 2 == 0) ? sb::random_pure(rng, dim) : sb::random_density(rng, dim, dim);
      record(summary, sb::check_number_phase(rho, grid, t % 3 == 2), grid_tol, &detail);
    }
  } else if (suite == "qp") {
    sb::UniformGrid grid = sb::UniformGrid::interval(-16.0, 16.0, 2048);
    for (int t = 0; t < trials; ++t) {
      sb::Rng rng(sb::derive_seed(seed, t));
      sb::Vec psi = sb::Vec::Zero(grid.count);
      std::normal_distribution<double> gauss(0.0, 1.0);
      std::vector<sb::cplx> coeff(11);
      for (auto& c : coeff) c = sb::cplx(gauss(rng), gauss(rng));
      for (int j = 0; j < grid.count; ++j) {
        sb::cplx amp = 0.0;
        for (int n = 0; n < static_cast<int>(coeff.size()); ++n) {
          amp += coeff[n] * sb::hermite_function(n, grid.node(j));
        }
        psi[j] = amp;
      }
      sb::QpCheckResult qp = sb::check_qp_discretized(psi, grid);
      record(summary, qp.proven, grid_tol, &detail);
      record(summary, qp.strong, grid_tol, &detail);
    }
  } else if (suite == "covariant") {
    for (int t = 0; t < trials; ++t) {
      sb::Rng rng(sb::derive_seed(seed, t));
      sb::UniformGrid pos = sb::UniformGrid::interval(-12.0, 12.0, 96);
      sb::Generator gen = sb::Generator::momentum_surrogate(pos);
      std::uniform_real_distribution<double> width(0.5, 2.0);
      const double sigma = width(rng);
      sb::Vec psi(gen.dim());
      for (int j = 0; j < gen.dim(); ++j) {
        const double g = gen.raw_eigenvalues()[j];
        psi[j] = std::exp(-g * g / (4 * sigma * sigma));
      }
      sb::Vec state_vec = gen.eigenvectors() * psi;
      sb::DensityOperator rho = sb::DensityOperator::pure(state_vec);
      record(summary, sb::check_covariant_relation(gen, rho, 512), 1e-3, &detail);
    }
  } else if (suite == "binned") {
    sb::UniformGrid grid = sb::UniformGrid::circle(1024);
    sb::Povm phase = sb::canonical_phase_povm(2, grid);
    sb::Vec plus(2);
    plus << 1.0, 1.0;
    sb::DensityOperator rho = sb::DensityOperator::pure(plus);
    std::vector<double> eps_list;
    for (int k = 128; k >= 1; k /= 2) eps_list.push_back(grid.step * k);
    sb::BinnedConvergence conv = sb::binned_convergence(phase, rho, eps_list);
    for (const auto& [eps, value] : conv.sequence) {
      sb::UrCheckResult r;
      r.lhs = value;
      r.rhs = conv.limit;
      r.relation = "binned eps=" + std::to_string(eps);
      record(summary, r, 1e-3, &detail);
    }
  } else if (suite == "rank2-search") {
    sb::Rank2SearchOutcome outcome = sb::rank2_counterexample_search(trials, 4, seed);
    std::cout << "rank2-search: " << outcome.trials << " trials, " << outcome.violations
              << " violations, worst slack " << outcome.worst_slack << "\n";
    if (detail.is_open()) {
      nlohmann::json j;
      j["suite"] = "rank2-search";
      j["trials"] = outcome.trials;
      j["violations"] = outcome.violations;
      j["worst_slack"] = outcome.worst_slack;
      j["worst_trial"] = outcome.worst_trial;
      j["worst_digest"] = outcome.worst_digest;
      j["seed"] = seed;
      detail << sb::dump_json(j, 0) << "\n";
    }
    if (outcome.violations == 0) {
      std::cout << "no counterexample found\n";
      return kExitOk;
    }
    std::cout << "candidate counterexample: trial " << outcome.worst_trial << ", digest "
              << outcome.worst_digest << " (rerun with the same seed to regenerate)\n";
    return kExitOk;  // reported, never asserted
  } else {
    std::cerr << "verify-ur: unknown suite '" << suite << "'\n";
    return kExitUsage;
  }

  std::cout << suite << ": " << summary.passes << " passed, " << summary.failures
            << " failed, worst slack " << summary.worst_slack << "\n";
  return summary.failures == 0 ? kExitOk : kExitViolation;
}

int cmd_sweep(const std::string& config_path, const std::string& axis,
              const std::string& values_csv, const std::string& out_path, std::uint64_t seed,
              double tolerance) {
  sb::ScenarioConfig base = sb::ScenarioConfig::parse_file(config_path);
  std::vector<std::string> values;
  {
    std::istringstream in(values_csv);
    std::string v;
    while (std::getline(in, v, ',')) {
      if (!v.empty()) values.push_back(v);
    }
  }
  if (values.empty()) {
    std::cerr << "sweep: no values given\n";
    return kExitUsage;
  }
  for (const std::string& v : values) {
    try {
      (void)std::stod(v);
    } catch (const std::exception&) {
      std::cerr << "sweep: value '" << v << "' for axis " << axis << " is not numeric\n";
      return kExitUsage;
    }
  }

  struct Row {
    std::string value;
    std::optional<sb::Achieved> achieved;
    std::map<std::string, double> bounds;
  };
  std::vector<Row> rows;
  std::vector<std::string> tag_order;
  for (const std::string& v : values) {
    sb::ScenarioConfig cfg = base;
    cfg.set(axis, v);
    sb::BuiltScenario built = sb::build_scenario(cfg);
    sb::RunOptions options;
    options.interval_length = built.interval_length;
    options.noise = built.noise;
    options.floor_tolerance = tolerance;
    Row row;
    row.value = v;
    sb::BoundReport rep;
    if (built.simulable()) {
      sb::RunResult result = sb::run_scenario(built.to_scenario(), options);
      append_context_entries(result.report, built, result.ki);
      row.achieved = result.achieved;
      rep = std::move(result.report);
    } else {
      sb::BoundInputs inputs{built.probe, built.gen, built.prior,
                             built.povm ? &*built.povm : nullptr, built.copies};
      sb::AssembledBounds assembled = sb::assemble_bound_report(inputs, options);
      append_context_entries(assembled.report, built, assembled.ki);
      rep = std::move(assembled.report);
    }
    for (const sb::BoundEntry& e : rep.entries) {
      if (!e.applicable) continue;
      row.bounds[e.tag] = e.value;
      bool seen = false;
      for (const std::string& t : tag_order) seen = seen || t == e.tag;
      if (!seen) tag_order.push_back(e.tag);
    }
    rows.push_back(std::move(row));
  }

  std::ostringstream csv;
  csv << "axis,value,delta_x,h_y,relative";
  for (const std::string& t : tag_order) csv << ",bound_" << t;
  csv << "\n";
  char buf[64];
  auto fmt = [&buf](double x) {
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return std::string(buf);
  };
  for (const Row& row : rows) {
    csv << axis << ',' << row.value;
    if (row.achieved) {
      csv << ',' << fmt(row.achieved->delta_x) << ',' << fmt(row.achieved->h_y) << ','
          << fmt(row.achieved->relative);
    } else {
      csv << ",,,";
    }
    for (const std::string& t : tag_order) {
      auto it = row.bounds.find(t);
      csv << ',';
      if (it != row.bounds.end()) csv << fmt(it->second);
    }
    csv << "\n";
  }
  write_output(csv.str(), out_path);
  (void)seed;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shiftbound: resolution floors and simulation for quantum shift-parameter "
               "estimation (hbar = 1 units)"};
  app.require_subcommand(1);

  std::string config_path, out_path, format = "json", suite, axis, values_csv, dist_path;
  std::uint64_t seed = 0;
  int trials = 1000;
  bool no_meta = false;
  bool with_ur = false;
  double tolerance = 1e-3;

  CLI::App* bounds = app.add_subcommand("bounds", "evaluate every applicable bound");
  bounds->add_option("--config", config_path, "scenario config file")->required();
  bounds->add_option("--out", out_path, "output path (default stdout)");
  bounds->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  bounds->add_option("--seed", seed, "master seed recorded in the output");
  bounds->add_flag("--no-meta", no_meta, "omit timestamps for byte-stable output");

  CLI::App* simulate = app.add_subcommand("simulate", "simulate and self-test against bounds");
  simulate->add_option("--config", config_path, "scenario config file")->required();
  simulate->add_option("--out", out_path, "output path (default stdout)");
  simulate->add_option("--seed", seed, "master seed recorded in the output");
  simulate->add_option("--tolerance", tolerance, "floor tolerance (default 1e-3)");
  simulate->add_option("--export-distribution", dist_path, "write the error law as CSV");
  simulate->add_flag("--with-ur", with_ur, "include number-phase uncertainty checks");
  simulate->add_flag("--no-meta", no_meta, "omit timestamps for byte-stable output");

  CLI::App* verify = app.add_subcommand("verify-ur", "run an uncertainty-relation suite");
  verify->add_option("--suite", suite,
                     "discrete|rank1|number-phase|qp|covariant|binned|rank2-search")
      ->required();
  verify->add_option("--trials", trials, "number of randomized trials");
  verify->add_option("--seed", seed, "master seed");
  verify->add_option("--out", out_path, "JSON-lines detail file");

  CLI::App* sweep = app.add_subcommand("sweep", "sweep one numeric config field");
  sweep->add_option("--config", config_path, "scenario config file")->required();
  sweep->add_option("--axis", axis, "dotted config key to sweep")->required();
  sweep->add_option("--values", values_csv, "comma-separated numeric values")->required();
  sweep->add_option("--out", out_path, "CSV output path (default stdout)");
  sweep->add_option("--seed", seed, "master seed recorded in the output");
  sweep->add_option("--tolerance", tolerance, "floor tolerance (default 1e-3)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (bounds->parsed()) return cmd_bounds(config_path, out_path, format, no_meta, seed);
    if (simulate->parsed()) {
      return cmd_simulate(config_path, out_path, no_meta, seed, tolerance, dist_path, with_ur);
    }
    if (verify->parsed()) return cmd_verify_ur(suite, trials, seed, out_path);
    if (sweep->parsed()) return cmd_sweep(config_path, axis, values_csv, out_path, seed, tolerance);
  } catch (const sb::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
