#pragma once

#include <string>
#include <vector>

#include "wavekin/config.hpp"

namespace wavekin {

struct Check {
  std::string name;
  double measured = 0, bound = 0;
  bool pass = false;
  int criterion = 0;
};

// Checks of one acceptance criterion, 1..9.
std::vector<Check> run_criterion(int k, const RunConfig& cfg);

// Suites: special (1, 2), bfunc (3), ufunc (4, 5), lambda (6, 7, 8), solver (9), all.
const std::vector<std::string>& suite_names();
std::vector<int> suite_criteria(const std::string& suite);
std::vector<Check> run_suite(const std::string& suite, const RunConfig& cfg);

// Array of {name, measured, bound, pass}, shortest round-trip numbers.
std::string report_json(const std::vector<Check>& checks);

}  // namespace wavekin
