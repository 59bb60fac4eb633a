#include "wavekin/data.hpp"

#include <cstdlib>
#include <fstream>
#include <mutex>

#include <json.hpp>

#include "wavekin/errors.hpp"

namespace wavekin {

std::string data_dir() {
  if (const char* e = std::getenv("WAVEKIN_DATA_DIR"); e && *e) return e;
  return WAVEKIN_DATA_DIR;
}

double frozen_constant(const std::string& name) {
  static std::once_flag once;
  static nlohmann::json doc;
  std::call_once(once, [] {
    std::ifstream is(data_dir() + "/constants.json");
    if (is) doc = nlohmann::json::parse(is, nullptr, false);
  });
  if (!doc.is_object() || !doc.contains("constants") || !doc["constants"].contains(name))
    throw ConfigError("frozen constant missing: " + name);
  return doc["constants"][name]["value"].get<double>();
}

}  // namespace wavekin
