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

#include "shiftbound/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "shiftbound/channels.hpp"
#include "shiftbound/ur.hpp"

namespace shiftbound {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

void flatten_json(const nlohmann::json& j, const std::string& prefix,
                  std::map<std::string, std::string>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten_json(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
  } else if (j.is_string()) {
    out[prefix] = j.get<std::string>();
  } else {
    out[prefix] = j.dump();
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(trim(cur));
  return parts;
}

}  // namespace

ScenarioConfig ScenarioConfig::parse_string(const std::string& text) {
  ScenarioConfig cfg;
  const std::string body = trim(text);
  if (!body.empty() && body[0] == '{') {
    nlohmann::json j = nlohmann::json::parse(body);
    if (!j.is_object()) throw ConfigError("<root>", "JSON config must be an object");
    flatten_json(j, "", cfg.values_);
    return cfg;
  }
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no), "expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no), "empty key");
    cfg.values_[key] = trim(line.substr(eq + 1));
  }
  return cfg;
}

ScenarioConfig ScenarioConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str());
}

bool ScenarioConfig::has(const std::string& key) const { return values_.count(key) > 0; }

std::string ScenarioConfig::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError(key, "missing required field");
  return it->second;
}

std::string ScenarioConfig::get_or(const std::string& key, const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double ScenarioConfig::get_double(const std::string& key) const {
  const std::string v = get(key);
  try {
    std::size_t used = 0;
    double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing characters");
    return d;
  } catch (const std::exception&) {
    throw ConfigError(key, "cannot parse number from '" + v + "'");
  }
}

double ScenarioConfig::get_double_or(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

int ScenarioConfig::get_int_or(const std::string& key, int fallback) const {
  if (!has(key)) return fallback;
  const double d = get_double(key);
  const int i = static_cast<int>(std::lround(d));
  if (std::abs(d - i) > 1e-9) throw ConfigError(key, "expected an integer");
  return i;
}

cplx ScenarioConfig::get_complex(const std::string& key) const {
  try {
    return parse_complex(get(key));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(key, e.what());
  }
}

void ScenarioConfig::set(const std::string& key, const std::string& value) {
  values_[key] = value;
}

std::string ScenarioConfig::digest() const {
  std::string canon;
  for (const auto& [k, v] : values_) {
    canon += k;
    canon += '=';
    canon += v;
    canon += '\n';
  }
  return digest_bytes(canon.data(), canon.size());
}

cplx parse_complex(const std::string& text) {
  std::string s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty complex literal");
  if (s.back() == 'j' || s.back() == 'i') {
    s.pop_back();
    // find the sign splitting real and imaginary parts (skip a leading sign
    // and exponent signs)
    for (std::size_t i = s.size(); i-- > 1;) {
      if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
        const double re = std::stod(s.substr(0, i));
        std::string im_part = s.substr(i);
        const double im = (im_part == "+" || im_part == "-") ? (im_part == "+" ? 1.0 : -1.0)
                                                             : std::stod(im_part);
        return cplx(re, im);
      }
    }
    // pure imaginary, e.g. "1.5j"
    if (s.empty() || s == "+") return cplx(0, 1);
    if (s == "-") return cplx(0, -1);
    return cplx(0, std::stod(s));
  }
  return cplx(std::stod(s), 0.0);
}

Mat read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<matrix file>", "cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("<matrix file>", "missing header line");
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    std::vector<double> row;
    for (const std::string& cell : split(line, ',')) {
      if (cell.empty()) continue;
      row.push_back(std::stod(cell));
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ConfigError("<matrix file>", "no data rows");
  const std::size_t cols = rows[0].size();
  if (cols % 2 != 0) {
    throw ConfigError("<matrix file>", "odd column count; need re/im pairs");
  }
  Mat m(rows.size(), cols / 2);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw ConfigError("<matrix file>", "ragged rows");
    for (std::size_t c = 0; c < cols / 2; ++c) {
      m(r, c) = cplx(rows[r][2 * c], rows[r][2 * c + 1]);
    }
  }
  return m;
}

namespace {

Generator build_generator(const ScenarioConfig& cfg, int& dim, std::optional<int>& mz_nmax) {
  const std::string kind = cfg.get_or("generator.kind", "number");
  if (kind == "number") {
    return Generator::number(dim);
  }
  if (kind == "mach-zehnder") {
    const int nmax = cfg.get_int_or("generator.nmax", 1);
    if (nmax < 1) throw ConfigError("generator.nmax", "must be >= 1");
    mz_nmax = nmax;
    Generator g = Generator::mach_zehnder(nmax);
    dim = g.dim();
    return g;
  }
  if (kind == "hamiltonian") {
    const std::vector<std::string> parts = split(cfg.get("generator.eigenvalues"), ',');
    if (parts.empty()) throw ConfigError("generator.eigenvalues", "empty list");
    RVec v(static_cast<int>(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i) {
      try {
        v[static_cast<int>(i)] = std::stod(parts[i]);
      } catch (const std::exception&) {
        throw ConfigError("generator.eigenvalues", "cannot parse '" + parts[i] + "'");
      }
    }
    std::sort(v.data(), v.data() + v.size());
    dim = static_cast<int>(v.size());
    return Generator::from_eigenvalues(v, v[0]);
  }
  if (kind == "surrogate-momentum") {
    UniformGrid pos;
    pos.start = cfg.get_double("generator.grid.start");
    pos.step = cfg.get_double("generator.grid.step");
    pos.count = cfg.get_int_or("generator.grid.count", 128);
    dim = pos.count;
    return Generator::momentum_surrogate(pos);
  }
  throw ConfigError("generator.kind", "unknown generator '" + kind + "'");
}

DensityOperator build_probe(const ScenarioConfig& cfg, int dim) {
  const std::string kind = cfg.get_or("probe.kind", "fock");
  if (kind == "fock") {
    const int n = cfg.get_int_or("probe.n", 0);
    if (n < 0 || n >= dim) throw ConfigError("probe.n", "out of range for dim");
    return DensityOperator::fock(dim, n);
  }
  if (kind == "coherent") {
    return DensityOperator::coherent(dim, cfg.get_complex("probe.alpha"));
  }
  if (kind == "thermal") {
    return DensityOperator::thermal(dim, cfg.get_double("probe.nbar"));
  }
  if (kind == "superposition") {
    const std::vector<std::string> parts = split(cfg.get("probe.coeffs"), ',');
    Vec c(static_cast<int>(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i) {
      try {
        c[static_cast<int>(i)] = parse_complex(parts[i]);
      } catch (const std::exception&) {
        throw ConfigError("probe.coeffs", "cannot parse '" + parts[i] + "'");
      }
    }
    if (c.size() > dim) throw ConfigError("probe.coeffs", "more coefficients than dim");
    return DensityOperator::superposition(dim, c);
  }
  if (kind == "custom") {
    Mat m = read_matrix_csv(cfg.get("probe.file"));
    if (m.rows() != dim) throw ConfigError("probe.file", "matrix dimension != dim");
    return DensityOperator::from_matrix(m);
  }
  throw ConfigError("probe.kind", "unknown probe '" + kind + "'");
}

}  // namespace

Scenario BuiltScenario::to_scenario() const {
  if (!povm) throw ConfigError("povm.kind", "scenario has no measurement");
  return Scenario{probe, gen, prior, *povm, 1};
}

BuiltScenario build_scenario(const ScenarioConfig& cfg) {
  int dim = cfg.get_int_or("dim", 16);
  if (dim < 1) throw ConfigError("dim", "must be >= 1");

  std::optional<int> mz_nmax;
  Generator gen = build_generator(cfg, dim, mz_nmax);
  DensityOperator probe = build_probe(cfg, dim);

  // parameter grid
  const std::string povm_kind = cfg.get_or("povm.kind", "canonical-phase");
  const std::string prior_kind = cfg.get_or("prior.kind", "uniform-circle");
  const int nodes = cfg.get_int_or("grid.nodes", povm_kind == "quadrature" ? 1024 : 512);
  const bool periodic_param = (prior_kind == "uniform-circle") ||
                              (povm_kind == "canonical-phase");

  UniformGrid grid;
  if (periodic_param) {
    // parameter period: 2 pi over the base gap all level spacings share
    double period = 2 * std::numbers::pi;
    if (gen.kind() == SpectrumKind::Discrete && gen.min_gap().has_value()) {
      const double base = *gen.min_gap();
      bool commensurate = base > 0;
      for (int i = 1; commensurate && i < gen.level_count(); ++i) {
        const double q = (gen.level(i) - gen.level(0)) / base;
        commensurate = std::abs(q - std::lround(q)) < 1e-9;
      }
      if (commensurate) period = 2 * std::numbers::pi / base;
    }
    grid = UniformGrid::periodic_interval(period, nodes);
  } else if (povm_kind == "quadrature") {
    const double halfwidth =
        cfg.get_double_or("grid.halfwidth", std::sqrt(2.0 * dim) + 6.0);
    grid = UniformGrid::interval(-halfwidth, halfwidth, nodes);
  } else {
    const double a = cfg.get_double_or("grid.start", gen.level(0) - 1.0);
    const double b =
        cfg.get_double_or("grid.end", gen.level(gen.level_count() - 1) + 1.0);
    grid = UniformGrid::interval(a, b, nodes);
  }

  // prior
  std::optional<GriddedDistribution> prior;
  if (prior_kind == "uniform-circle") {
    if (!grid.periodic) throw ConfigError("prior.kind", "uniform-circle needs a phase grid");
    prior = GriddedDistribution::uniform(grid);
  } else if (prior_kind == "uniform-interval") {
    const double a = cfg.get_double("prior.a");
    const double b = cfg.get_double("prior.b");
    if (!(b > a)) throw ConfigError("prior.b", "need b > a");
    prior = GriddedDistribution::uniform_on(grid, a, b);
  } else if (prior_kind == "gaussian") {
    prior = GriddedDistribution::gaussian(grid, cfg.get_double("prior.mu"),
                                          cfg.get_double("prior.sigma"));
  } else if (prior_kind == "table") {
    Mat t = read_matrix_csv(cfg.get("prior.file"));
    if (t.rows() != grid.count || t.cols() != 1) {
      throw ConfigError("prior.file", "need one density per grid node");
    }
    RVec mass(grid.count);
    for (int i = 0; i < grid.count; ++i) mass[i] = t(i, 0).real() * grid.step;
    prior = GriddedDistribution(grid, std::move(mass), /*renormalize=*/true);
  } else {
    throw ConfigError("prior.kind", "unknown prior '" + prior_kind + "'");
  }

  // measurement
  std::optional<Povm> povm;
  if (povm_kind == "canonical-phase") {
    try {
      povm = covariant_generator_povm(gen, grid);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("povm.kind", e.what());
    }
  } else if (povm_kind == "projective-generator") {
    povm = projective_generator_povm(gen, grid);
  } else if (povm_kind == "quadrature") {
    povm = quadrature_povm(dim, grid);
  } else if (povm_kind == "custom") {
    Mat stacked = read_matrix_csv(cfg.get("povm.file"));
    if (stacked.rows() % dim != 0) {
      throw ConfigError("povm.file", "row count not a multiple of dim");
    }
    const int n_elems = static_cast<int>(stacked.rows()) / dim;
    if (n_elems != grid.count) throw ConfigError("povm.file", "element count != grid nodes");
    std::vector<Mat> densities;
    for (int i = 0; i < n_elems; ++i) {
      densities.push_back(stacked.middleRows(i * dim, dim));
    }
    povm = Povm::grid_density(grid, std::move(densities));
  } else if (povm_kind == "none") {
    povm = std::nullopt;
  } else {
    throw ConfigError("povm.kind", "unknown measurement '" + povm_kind + "'");
  }

  BuiltScenario out{std::move(probe), std::move(gen), std::move(*prior), std::move(povm),
                    1,      0.0,      std::nullopt,   std::nullopt,      mz_nmax,
                    false};
  out.copies = cfg.get_int_or("copies", 1);
  if (out.copies < 1) throw ConfigError("copies", "must be >= 1");
  out.interval_length = prior_support_length(out.prior);
  out.phase_like = periodic_param;

  // noise
  const std::string noise_kind = cfg.get_or("noise.kind", "none");
  if (noise_kind == "gaussian") {
    const double n_lambda = cfg.get_double("noise.n_lambda");
    if (n_lambda < 0) throw ConfigError("noise.n_lambda", "must be >= 0");
    NoiseContext nc;
    nc.n_lambda = n_lambda;
    nc.pre_noise_n_mean = generator_mean_abs_dev(
        out.gen, out.probe, out.gen.lower_bound().value_or(0.0));
    GaussianChannelResult noisy = gaussian_noise_channel(out.probe, n_lambda);
    nc.s_noisy = von_neumann_entropy(noisy.state);
    out.probe = noisy.state;
    out.noise = nc;
  } else if (noise_kind == "additive-entropy") {
    out.additive_hz = cfg.get_double("noise.h_z");
  } else if (noise_kind != "none") {
    throw ConfigError("noise.kind", "unknown noise '" + noise_kind + "'");
  }
  return out;
}

}  // namespace shiftbound
