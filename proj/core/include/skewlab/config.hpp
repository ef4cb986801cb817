#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "skewlab/model.hpp"

namespace skewlab {

/// Line-oriented "key = value" configuration with '#' comments.
///
/// Model and schedule round-trip bit-exactly through to_config_string() /
/// Config::parse(): doubles are serialized with 17 significant digits.
class Config {
 public:
  static Config parse(const std::string& text);
  static Config load(const std::string& path);

  bool has(const std::string& key) const;
  /// Throw ConfigError when the key is missing and no fallback is given.
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  std::int64_t get_int(const std::string& key) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  /// Comma-separated list of doubles.
  std::vector<double> get_double_list(const std::string& key) const;

  void set(const std::string& key, const std::string& value);

  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

/// Reads kind, l, ell, eps, alpha, lambda and validates the assembled spec.
ModelSpec model_from_config(const Config& config);

/// Reads schedule.a, schedule.p, schedule.b, schedule.q.
Schedule schedule_from_config(const Config& config);

/// Serializes spec and schedule to the flat key = value format.
std::string to_config_string(const ModelSpec& spec, const Schedule& schedule);

/// Shortest-exact decimal form used everywhere numbers are serialized.
std::string format_double(double value);

}  // namespace skewlab
