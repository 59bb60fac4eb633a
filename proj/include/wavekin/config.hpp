#pragma once

#include <map>
#include <string>

#include "wavekin/contour.hpp"

namespace wavekin {

struct RunConfig {
  ContourSpec contour;
  std::string cache_path;
  int parallelism = 1;
  std::string output_dir = ".";
};

// Flat key=value text; '#' starts a comment. Unknown keys and bad values raise ConfigError.
RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);
// WAVEKIN_CONFIG names the file when set; otherwise ./wavekin.conf if present; otherwise defaults.
RunConfig load_config();
void validate(const RunConfig& c);

}  // namespace wavekin
