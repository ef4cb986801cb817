#include "skewlab/config.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace skewlab {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || errno == ERANGE) {
    throw ConfigError("key '" + key + "': cannot parse '" + text + "' as a number");
  }
  return value;
}

}  // namespace

Config Config::parse(const std::string& text) {
  Config config;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value', got '" +
                        stripped + "'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    }
    config.entries_[key] = value;
  }
  return config;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

bool Config::has(const std::string& key) const { return entries_.count(key) != 0; }

std::string Config::get_string(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError("missing required key '" + key + "'");
  return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key) const {
  return parse_double(key, get_string(key));
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : parse_double(key, it->second);
}

std::int64_t Config::get_int(const std::string& key) const {
  const double value = get_double(key);
  const auto as_int = static_cast<std::int64_t>(value);
  if (static_cast<double>(as_int) != value) {
    throw ConfigError("key '" + key + "': expected an integer, got " + get_string(key));
  }
  return as_int;
}

std::int64_t Config::get_int(const std::string& key, std::int64_t fallback) const {
  return has(key) ? get_int(key) : fallback;
}

std::vector<double> Config::get_double_list(const std::string& key) const {
  const std::string text = get_string(key);
  std::vector<double> values;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const std::string stripped = trim(item);
    if (stripped.empty()) continue;
    values.push_back(parse_double(key, stripped));
  }
  if (values.empty()) throw ConfigError("key '" + key + "': empty list");
  return values;
}

void Config::set(const std::string& key, const std::string& value) {
  entries_[key] = value;
}

ModelSpec model_from_config(const Config& config) {
  const ModelKind kind = model_kind_from_string(config.get_string("kind"));
  Geometry geometry;
  geometry.l = config.get_double("l");
  geometry.ell = config.get_double("ell");
  geometry.eps = config.get_double("eps");
  SkewParams params;
  params.alpha = config.get_double("alpha");
  params.lambda = config.get_double("lambda");
  return validate(geometry, params, kind);
}

Schedule schedule_from_config(const Config& config) {
  Schedule schedule;
  schedule.a = config.get_double("schedule.a");
  schedule.p = config.get_double("schedule.p");
  schedule.b = config.get_double("schedule.b");
  schedule.q = config.get_double("schedule.q");
  return schedule;
}

std::string to_config_string(const ModelSpec& spec, const Schedule& schedule) {
  std::ostringstream os;
  os << "kind = " << to_string(spec.kind) << "\n"
     << "l = " << format_double(spec.geometry.l) << "\n"
     << "ell = " << format_double(spec.geometry.ell) << "\n"
     << "eps = " << format_double(spec.geometry.eps) << "\n"
     << "alpha = " << format_double(spec.params.alpha) << "\n"
     << "lambda = " << format_double(spec.params.lambda) << "\n"
     << "schedule.a = " << format_double(schedule.a) << "\n"
     << "schedule.p = " << format_double(schedule.p) << "\n"
     << "schedule.b = " << format_double(schedule.b) << "\n"
     << "schedule.q = " << format_double(schedule.q) << "\n";
  return os.str();
}

std::string format_double(double value) {
  // 17 significant digits round-trip any IEEE double exactly.
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

}  // namespace skewlab
