#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "wavekin/config.hpp"
#include "wavekin/verify.hpp"

using namespace wavekin;

namespace {

// Wall-clock limits in seconds, 0 when none is set.
constexpr double kLimit[11] = {0, 10, 30, 120, 180, 120, 600, 0, 0, 600, 0};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  const RunConfig cfg = load_config();
  int failed = 0;
  for (int k = 1; k <= 9; ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto checks = run_criterion(k, cfg);
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = !checks.empty();
    std::string why;
    for (const auto& c : checks)
      if (!c.pass) {
        ok = false;
        why += " [" + c.name + ": " + std::to_string(c.measured) + " > " + std::to_string(c.bound) + "]";
      }
    if (kLimit[k] > 0 && sec > kLimit[k]) {
      ok = false;
      why += " [runtime " + std::to_string(sec) + " s > " + std::to_string(kLimit[k]) + " s]";
    }
    std::printf("criterion %d: %s (%zu checks, %.1f s)%s\n", k, ok ? "PASS" : "FAIL", checks.size(), sec, why.c_str());
    if (!ok) ++failed;
  }

  const std::string a = "acceptance_verify_a.json", b = "acceptance_verify_b.json";
  const std::string cli = WAVEKIN_CLI_PATH;
  const int ra = std::system((cli + " verify all --out " + a).c_str());
  const int rb = std::system((cli + " verify all --out " + b).c_str());
  const std::string ja = slurp(a), jb = slurp(b);
  const bool ran = !ja.empty() && ra != -1 && rb != -1;
  const bool same = ran && ja == jb;
  std::printf("criterion 10: %s (%zu bytes, %s)\n", same ? "PASS" : "FAIL", ja.size(),
              same ? "identical" : (ran ? "reports differ" : "report missing"));
  if (!same) ++failed;
  std::remove(a.c_str());
  std::remove(b.c_str());
  return failed == 0 ? 0 : 1;
}
