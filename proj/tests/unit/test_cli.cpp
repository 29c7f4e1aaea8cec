#include "cli.hpp"
#include "report.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

using namespace hsurf;
using namespace hsurf::cli;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("hsurf_cli_" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

int call(std::vector<std::string> args) {
  args.insert(args.begin(), "hsurf");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

std::vector<std::string> lines(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

json read(const std::string& path) { return read_json_file(path); }

}  // namespace

TEST_CASE("RunConfig round trip and named-field errors") {
  RunConfig c;
  c.command = "energy-expand";
  c.domain = {{"kind", "annulus"}, {"rho", 3.0}, {"K", 12}};
  c.datum = {{"name", "g_omega"}, {"omega", 0.6}};
  c.bubbles = {{{0.1, -0.2}, 40, {1.5, 0.1, -0.2}}, {{-0.3, 0.25}, 55.5, {}}};
  c.epsilon = 0.01;
  c.numerics = {{"n_r", 96}};
  c.outputs = {{"report", "r.json"}};
  const RunConfig back = config_from_json(json::parse(to_json(c).dump()));
  CHECK(back == c);
  CHECK(to_json(back) == to_json(c));

  json bad = to_json(c);
  bad["bubbles"][1]["lambda"] = "big";
  try {
    config_from_json(bad);
    FAIL("expected InvalidInput");
  } catch (const InvalidInput& e) {
    CHECK(std::string(e.what()).find("config.bubbles[1].lambda") != std::string::npos);
  }
  bad = to_json(c);
  bad["bubbles"][0]["a"] = json::array({1.0});
  CHECK_THROWS_WITH_AS(config_from_json(bad), doctest::Contains("config.bubbles[0].a"), InvalidInput);
  CHECK_THROWS_WITH_AS(make_domain({{"kind", "torus"}}), doctest::Contains("domain.kind"), InvalidInput);
  CHECK_THROWS_WITH_AS(make_datum({{"name", "g_omega"}}), doctest::Contains("datum.omega"), InvalidInput);
  CHECK(num(std::nan("")).is_null());
}

TEST_CASE("exit codes") {
  const TempDir dir;
  CHECK(call({"no-such-command"}) == 1);
  CHECK(call({"kernel", "--bogus"}) == 1);
  CHECK(call({"annulus-compare", "--rho", "abc"}) == 1);
  CHECK(call({"annulus-compare"}) == 1);
  CHECK(call({"energy-expand", "--config", dir / "missing.json"}) == 1);
  // A threshold this large declares nonzero singular values to be kernel: checks fail, exit 2.
  CHECK(call({"kernel", "--nmax", "4", "--tol", "0.5", "--out", dir / "k.json"}) == 2);
  CHECK(read(dir / "k.json")["pass"] == false);

  // The installed binary behaves the same.
  const std::string bin = HSURF_CLI_PATH;
  CHECK(WEXITSTATUS(std::system((bin + " robin --point 0.2,0.1 > /dev/null").c_str())) == 0);
  CHECK(WEXITSTATUS(std::system((bin + " robin --point nope > /dev/null 2>&1").c_str())) == 1);
  CHECK(WEXITSTATUS(std::system((bin + " > /dev/null 2>&1").c_str())) == 1);
}

TEST_CASE("annulus-compare writes the curve") {
  const TempDir dir;
  REQUIRE(call({"annulus-compare", "--rho", "2.71828", "--grid", "501", "--out", dir / "c.csv", "--svg",
                dir / "c.svg", "--report", dir / "c.json"}) == 0);
  const auto l = lines(dir / "c.csv");
  REQUIRE(l.size() == 503);
  CHECK(l[0].rfind("# rho=", 0) == 0);
  CHECK(l[1] == "x,h_tilde,two_e2H");
  std::istringstream row(l[2]);
  double x, h, r;
  char c1, c2;
  row >> x >> c1 >> h >> c2 >> r;
  CHECK(x > 1 / 2.71828);
  CHECK(h > 0);
  CHECK(r > 0);
  const json rep = read(dir / "c.json");
  CHECK(rep["config"]["numerics"]["grid"] == 501);
  CHECK(rep["result"]["max_rel_diff"].get<double>() < 1e-3);
  CHECK(rep["result"]["critical_log_x_h_tilde"].size() == 1);
  CHECK(fs::file_size(dir / "c.svg") > 500);
  CHECK(lines(dir / "c.svg")[0].find("<svg") != std::string::npos);
}

TEST_CASE("kernel report") {
  const TempDir dir;
  REQUIRE(call({"kernel", "--nmax", "12", "--out", dir / "k.json"}) == 0);
  const json k = read(dir / "k.json");
  CHECK(k["pass"] == true);
  CHECK(k["result"]["dims"]["0"] == 3);
  for (int n = 4; n <= 12; ++n) CHECK(k["result"]["dims"][std::to_string(n)] == 0);
  CHECK(k["result"]["total_low_degree"] == 9);
  CHECK(k["result"]["bound"]["admissible"]["3"] == true);
  CHECK(k["result"]["bound"]["admissible"]["4"] == false);
  CHECK(k["result"]["polynomial_family_residuals"].size() == 7);
}

TEST_CASE("construct-spheres on the golden inputs") {
  const TempDir dir;
  {
    std::ofstream t(dir / "t.json");
    t << "[[-0.5, 0.8660254037844386, 0], [-0.5, -0.8660254037844386, 0], [1, 0, 0]]\n";
  }
  REQUIRE(call({"construct-spheres", "--k", "3", "--omega", "0.95", "--eps", "1e-3", "--mu", "0.1", "--targets",
                dir / "t.json", "--out", dir / "run.json", "--svg", dir / "s.svg"}) == 0);
  const json r = read(dir / "run.json");
  CHECK(r["pass"] == true);
  CHECK(r["result"]["certificate"]["pass"] == true);
  CHECK(r["result"]["grad_norm"].get<double>() < 1e-10);
  CHECK(r["result"]["sphere_centers"].size() == 3);
  CHECK(r["result"]["max_center_distance"].get<double>() < 0.006);
  CHECK(r["config"]["datum"]["name"] == "G_k_omega");
  CHECK(fs::exists(dir / "s.svg"));

  // A target that is not a unit vector is an input error.
  {
    std::ofstream t(dir / "bad.json");
    t << "[[0, 0, -2]]\n";
  }
  CHECK(call({"construct-spheres", "--k", "1", "--targets", dir / "bad.json"}) == 1);
}

TEST_CASE("HSURF_OUT_DIR and reproducible reports") {
  const TempDir dir;
  {
    std::ofstream c(dir / "cfg.json");
    c << R"({"epsilon": 0.001, "datum": {"name": "g_omega", "omega": 0.95},
             "bubbles": [{"a": [0.95, 0], "lambda": 2000, "angles": [1.5707963267948966, 0, 0]}]})";
  }
  ::setenv("HSURF_OUT_DIR", dir.path.c_str(), 1);
  const int rc1 = call({"energy-expand", "--config", dir / "cfg.json", "--out", "e1.json"});
  const int rc2 = call({"energy-expand", "--config", dir / "cfg.json"});
  ::unsetenv("HSURF_OUT_DIR");
  REQUIRE(rc1 == 0);
  REQUIRE(rc2 == 0);
  REQUIRE(fs::exists(dir / "e1.json"));
  REQUIRE(fs::exists(dir / "energy-expand.json"));
  json a = read(dir / "e1.json"), b = read(dir / "energy-expand.json");
  CHECK(a["result"] == b["result"]);
  CHECK(std::abs(a["result"]["value"].get<double>() + 6.609530895126451e-4) < 1e-15);
  // The embedded config reproduces the run.
  const RunConfig embedded = config_from_json(a["config"]);
  CHECK(embedded.bubbles.size() == 1);
  CHECK(embedded.epsilon == 1e-3);
}
