#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "wavekin/config.hpp"
#include "wavekin/errors.hpp"

using namespace wavekin;
using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(WAVEKIN_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

void write(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  f << text;
}

}  // namespace

TEST_CASE("config parsing") {
  const auto c = parse_config("# comment\nabscissa = 1.25\nhalf_height=300 # trailing\nparallelism=2\ncache_path=/tmp/b\n");
  CHECK(c.contour.abscissa == 1.25);
  CHECK(c.contour.half_height == 300);
  CHECK(c.parallelism == 2);
  CHECK(c.cache_path == "/tmp/b");
  CHECK_THROWS_AS(parse_config("nonsense=1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("rel_tol=abc\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("rel_tol=-1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("parallelism=0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("just text\n"), ConfigError);
  CHECK_THROWS_AS(load_config_file("/nonexistent/wavekin.conf"), ConfigError);
}

TEST_CASE("special and bfunc commands") {
  const auto r = run("special eval --fn W --re 2");
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(std::abs(j["value"]["re"].get<double>()) <= 1e-10);
  const auto b = run("bfunc eval --re 3");
  REQUIRE(b.code == 0);
  CHECK(std::abs(json::parse(b.out)["value"]["re"].get<double>()) <= 1e-6);
  const auto k = run("kernel eval --which K --x 1 --y 2");
  REQUIRE(k.code == 0);
  CHECK(json::parse(k.out)["value"].get<double>() > 0);
}

TEST_CASE("lambda commands") {
  const auto e = run("lambda eval --t 1 --x 2 --regime direct");
  REQUIRE(e.code == 0);
  const auto j = json::parse(e.out);
  CHECK(j["regime"] == "direct");
  CHECK(j["value"].get<double>() > 0);
  const auto p1 = run("lambda profile --t 0.5 --xmin 0.1 --xmax 10 --points 4");
  const auto p2 = run("lambda profile --t 0.5 --xmin 0.1 --xmax 10 --points 4");
  REQUIRE(p1.code == 0);
  CHECK(p1.out == p2.out);
  CHECK(p1.out.rfind("t,x,lambda,err,regime\n", 0) == 0);
  int lines = 0;
  for (char c : p1.out) lines += c == '\n';
  CHECK(lines == 5);
}

TEST_CASE("solver commands") {
  const std::string f0 = "cli_test_f0.csv";
  std::ostringstream s;
  s << "y,f0\n";
  for (int i = 0; i <= 40; ++i) {
    const double y = 0.5 + i / 40.0;
    s << y << ',' << (i == 0 || i == 40 ? 0.0 : 1.0 - (y - 1) * (y - 1) * 4) << '\n';
  }
  write(f0, s.str());
  const auto c = run("cauchy solve --t 0.3 --f0 " + f0 + " --grid 0.1,10,16");
  REQUIRE(c.code == 0);
  CHECK(c.out.rfind("x,u\n", 0) == 0);
  const auto d = run("direct solve --f0 " + f0 + " --grid 0.1,10,64 --t-end 0.05 --snap 0,0.05");
  REQUIRE(d.code == 0);
  CHECK(d.out.rfind("t,x,u\n", 0) == 0);
  write(f0, "x,u\n1,2\n");
  CHECK(run("cauchy solve --t 0.3 --f0 " + f0).code == 2);
  std::remove(f0.c_str());
}

TEST_CASE("verify and exit codes") {
  const auto v = run("verify special");
  CHECK(v.code == 0);
  const auto j = json::parse(v.out);
  REQUIRE(j.is_array());
  CHECK(j.size() >= 11);
  for (const auto& c : j) {
    CHECK(c.contains("name"));
    CHECK(c["pass"] == true);
  }
  CHECK(run("verify special").out == v.out);
  CHECK(run("").code == 2);
  CHECK(run("verify nosuchsuite").code == 2);
  CHECK(run("lambda eval --t 1 --x 2 --regime nope").code == 2);
  CHECK(run("lambda eval --t -1 --x 2").code == 1);
  const std::string conf = "cli_test.conf";
  write(conf, "bogus=1\n");
  CHECK(run("--config " + conf + " special eval --re 1").code == 2);
  std::remove(conf.c_str());
}
