#include "snse/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "snse/random_fields.hpp"

namespace snse {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("RunConfig: cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return from_string(ss.str());
}

RunConfig RunConfig::from_string(const std::string& text) {
  RunConfig cfg = defaults();
  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::runtime_error("RunConfig: malformed section at line " +
                                 std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw std::runtime_error("RunConfig: empty section name at line " +
                                 std::to_string(lineno));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos || section.empty())
      throw std::runtime_error("RunConfig: expected 'key = value' at line " +
                               std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::runtime_error("RunConfig: empty key at line " + std::to_string(lineno));
    cfg.set(section, key, value);
  }
  return cfg;
}

RunConfig RunConfig::defaults() {
  RunConfig cfg;
  cfg.set("grid", "dim", "2");
  cfg.set("grid", "n", "8");
  cfg.set("grid", "points", "0");
  cfg.set("solver", "dt", "0.001");
  cfg.set("solver", "horizon", "0.25");
  cfg.set("solver", "p", "4");
  cfg.set("solver", "cutoff_M", "0");
  cfg.set("solver", "seed", "1");
  cfg.set("solver", "scheme", "exponential");
  cfg.set("solver", "u0", "taylor_green");
  cfg.set("solver", "u0_amp", "1");
  cfg.set("noise", "type", "additive");
  cfg.set("noise", "K", "16");
  cfg.set("noise", "c0", "0.05");
  cfg.set("noise", "beta", "1.5");
  cfg.set("noise", "kmax", "4");
  cfg.set("noise", "seed", "7");
  return cfg;
}

void RunConfig::set(const std::string& section, const std::string& key,
                    const std::string& value) {
  sections_[section][key] = value;
}

bool RunConfig::has(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  return s != sections_.end() && s->second.count(key) > 0;
}

std::string RunConfig::get(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
  const auto s = sections_.find(section);
  if (s == sections_.end()) return fallback;
  const auto k = s->second.find(key);
  return k == s->second.end() ? fallback : k->second;
}

double RunConfig::get_double(const std::string& section, const std::string& key,
                             double fallback) const {
  if (!has(section, key)) return fallback;
  return std::stod(get(section, key, ""));
}

int RunConfig::get_int(const std::string& section, const std::string& key,
                       int fallback) const {
  if (!has(section, key)) return fallback;
  return std::stoi(get(section, key, ""));
}

std::uint64_t RunConfig::get_u64(const std::string& section, const std::string& key,
                                 std::uint64_t fallback) const {
  if (!has(section, key)) return fallback;
  return std::stoull(get(section, key, ""));
}

std::string RunConfig::canonical() const {
  std::ostringstream os;
  for (const auto& [name, kv] : sections_) {
    os << '[' << name << "]\n";
    for (const auto& [k, v] : kv) os << k << " = " << v << '\n';
  }
  return os.str();
}

std::string RunConfig::content_hash() const {
  const std::string text = canonical();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

SolverConfig RunConfig::solver_config() const {
  SolverConfig cfg;
  cfg.dim = get_int("grid", "dim", 2);
  cfg.n = get_int("grid", "n", 8);
  cfg.grid_points = get_int("grid", "points", 0);
  cfg.dt = get_double("solver", "dt", 1e-3);
  cfg.horizon = get_double("solver", "horizon", 0.25);
  cfg.p = get_double("solver", "p", 4.0);
  cfg.cutoff_M = get_double("solver", "cutoff_M", 0.0);
  cfg.seed = get_u64("solver", "seed", 1);
  const std::string scheme = get("solver", "scheme", "exponential");
  if (scheme == "exponential")
    cfg.scheme = Scheme::ExponentialEM;
  else if (scheme == "semi_implicit")
    cfg.scheme = Scheme::SemiImplicitEM;
  else
    throw std::runtime_error("RunConfig: unknown scheme '" + scheme + "'");
  cfg.linear_only = get_int("solver", "linear_only", 0) != 0;
  cfg.noise = noise_model(cfg.grid());
  return cfg;
}

std::shared_ptr<const NoiseModel> RunConfig::noise_model(const Grid& grid) const {
  const std::string type = get("noise", "type", "additive");
  const int K = get_int("noise", "K", 16);
  const double c0 = get_double("noise", "c0", 0.05);
  const double beta = get_double("noise", "beta", 1.5);
  if (type == "zero")
    return std::make_shared<const NoiseModel>(NoiseModel::zero());
  if (type == "additive") {
    const int kmax = get_int("noise", "kmax", 4);
    const std::uint64_t seed = get_u64("noise", "seed", 7);
    return std::make_shared<const NoiseModel>(
        NoiseModel::additive(grid, K, c0, beta, kmax, seed));
  }
  if (type == "linear")
    return std::make_shared<const NoiseModel>(NoiseModel::linear_diagonal(K, c0, beta));
  throw std::runtime_error("RunConfig: unknown noise type '" + type + "'");
}

SpectralField RunConfig::initial_datum(const Grid& grid) const {
  const std::string kind = get("solver", "u0", "taylor_green");
  if (kind == "taylor_green")
    return taylor_green(grid, get_double("solver", "u0_amp", 1.0));
  if (kind == "random") {
    Rng rng(get_u64("solver", "u0_seed", 42));
    const int kmax = get_int("solver", "u0_kmax", get_int("grid", "n", 8));
    SpectralField u = random_divergence_free(grid, kmax, rng);
    const double amp = get_double("solver", "u0_amp", 1.0);
    u *= amp;
    return u;
  }
  if (kind == "zero") return SpectralField(grid, grid.dim);
  throw std::runtime_error("RunConfig: unknown initial datum '" + kind + "'");
}

}  // namespace snse
