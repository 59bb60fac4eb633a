#include "wavekin/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wavekin/errors.hpp"

namespace wavekin {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size()) throw ConfigError("config: " + key + " is not a number");
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  int x = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size()) throw ConfigError("config: " + key + " is not an integer");
  return x;
}

}  // namespace

void validate(const RunConfig& c) {
  if (!(c.contour.rel_tol > 0) || !(c.contour.abs_tol > 0)) throw ConfigError("config: tolerances must be positive");
  if (!(c.contour.half_height > 0)) throw ConfigError("config: half_height must be positive");
  if (!std::isfinite(c.contour.abscissa)) throw ConfigError("config: abscissa must be finite");
  if (c.contour.max_refinements < 1) throw ConfigError("config: max_refinements must be positive");
  if (c.parallelism < 1) throw ConfigError("config: parallelism must be at least 1");
}

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (const auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config: line " + std::to_string(n) + " is not key=value");
    const std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
    if (k == "abscissa") c.contour.abscissa = to_double(k, v);
    else if (k == "half_height") c.contour.half_height = to_double(k, v);
    else if (k == "rel_tol") c.contour.rel_tol = to_double(k, v);
    else if (k == "abs_tol") c.contour.abs_tol = to_double(k, v);
    else if (k == "max_refinements") c.contour.max_refinements = to_int(k, v);
    else if (k == "cache_path") c.cache_path = v;
    else if (k == "parallelism") c.parallelism = to_int(k, v);
    else if (k == "output_dir") c.output_dir = v;
    else throw ConfigError("config: unknown key " + k);
  }
  validate(c);
  return c;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config: cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

RunConfig load_config() {
  if (const char* p = std::getenv("WAVEKIN_CONFIG"); p && *p) return load_config_file(p);
  if (std::filesystem::exists("wavekin.conf")) return load_config_file("wavekin.conf");
  return RunConfig{};
}

}  // namespace wavekin
