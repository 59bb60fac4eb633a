#pragma once

#include <string>

namespace wavekin {

// Directory holding frozen calibration constants; WAVEKIN_DATA_DIR in the
// environment overrides the build-time location.
std::string data_dir();
// Value of a frozen constant from constants.json; ConfigError if absent.
double frozen_constant(const std::string& name);

}  // namespace wavekin
