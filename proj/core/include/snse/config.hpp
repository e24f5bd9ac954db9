#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>

#include "snse/solver.hpp"

namespace snse {

/// Flat sectioned key/value run configuration. Grammar: "[section]" headers,
/// "key = value" lines, '#' comments, blank lines ignored.
class RunConfig {
 public:
  static RunConfig from_file(const std::string& path);
  static RunConfig from_string(const std::string& text);
  static RunConfig defaults();

  void set(const std::string& section, const std::string& key, const std::string& value);
  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key,
                  const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key, double fallback) const;
  int get_int(const std::string& section, const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& section, const std::string& key,
                        std::uint64_t fallback) const;

  /// Canonical serialization: sections and keys sorted, one "key = value" per line.
  std::string canonical() const;
  /// FNV-1a 64 of the canonical text, as 16 hex digits.
  std::string content_hash() const;

  SolverConfig solver_config() const;  // [grid]+[solver]+[noise]
  std::shared_ptr<const NoiseModel> noise_model(const Grid& grid) const;

  /// Initial datum per [solver] u0 = taylor_green | random | zero.
  SpectralField initial_datum(const Grid& grid) const;

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

}  // namespace snse
