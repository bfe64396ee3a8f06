#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "movewin/driver.hpp"
#include "movewin/error.hpp"
#include "movewin/physics.hpp"
#include "oracles.hpp"

using namespace movewin;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("movewin_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::string> lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

SimConfig random_config(oracle::Gen& gen) {
  SimConfig c;
  c.dim = gen.integer(1, 2);
  c.half_width = gen.uniform(1.0, 50.0);
  c.modes = gen.integer(4, 4000);
  c.tau = std::ldexp(1.0, -gen.integer(2, 12));
  c.tmax = c.tau * gen.integer(0, 500);
  c.potential = c.dim == 1 ? (gen.integer(0, 1) ? "zero" : "tunnel-bump") : "lattice";
  c.initial = c.dim == 1 ? "tunnel-I" : "scatter-I";
  c.plateau = gen.uniform(0.1, 0.9);
  c.window.threshold = gen.uniform(1e-8, 1e-2);
  c.window.enabled = gen.integer(0, 1) == 1;
  c.window.check_interval = gen.integer(1, 10);
  c.window.max_extensions = gen.integer(0, 8);
  c.dealias = gen.integer(0, 1) == 1;
  c.snapshot_every = c.tau * gen.integer(0, 20);
  c.progress_every = gen.integer(1, 50);
  c.out = "dir" + std::to_string(gen.integer(0, 99));
  c.seed = static_cast<std::uint64_t>(gen.integer(0, 1 << 30));
  return c;
}

bool same(const SimConfig& a, const SimConfig& b) { return to_json(a) == to_json(b); }

}  // namespace

TEST_CASE("config JSON round trip") {
  oracle::Gen gen(61);
  for (int i = 0; i < 200; ++i) {
    const SimConfig c = random_config(gen);
    CHECK_NOTHROW(c.validate());
    const SimConfig back = config_from_json(to_json(c));
    CHECK(same(back, c));
    CHECK(back.half_width == c.half_width);
    CHECK(back.window.threshold == c.window.threshold);
    CHECK(config_hash(back) == config_hash(c));
  }
}

TEST_CASE("config keys mirror the JSON form") {
  const auto j = nlohmann::json::parse(to_json(SimConfig{}));
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  auto listed = config_keys();
  std::sort(keys.begin(), keys.end());
  std::sort(listed.begin(), listed.end());
  CHECK(keys == listed);
}

TEST_CASE("config validation") {
  SimConfig c;
  CHECK_NOTHROW(c.validate());
  CHECK(c.step_count() == 100);
  c.tmax = 1.005;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = {};
  c.modes = 3;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = {};
  c.initial = "no-such-datum";
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = {};
  c.potential = "lattice";  // 2-D potential, 1-D run
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = {};
  c.snapshot_every = 0.015;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c.snapshot_every = 0.25;
  CHECK(c.snapshot_stride() == 25);
  CHECK_THROWS_AS(config_from_json(R"({"bogus": 1})"), InvalidArgument);
  CHECK_THROWS_AS(config_from_json("{not json"), InvalidArgument);
  CHECK_THROWS_AS(config_from_json(R"({"modes": "many"})"), InvalidArgument);
}

TEST_CASE("partial JSON keeps the base values") {
  SimConfig base;
  base.modes = 128;
  const SimConfig c = config_from_json(R"({"tau": 0.005, "extend": false})", base);
  CHECK(c.modes == 128);
  CHECK(c.tau == 0.005);
  CHECK_FALSE(c.window.enabled);
}

TEST_CASE("set_config_key") {
  SimConfig c;
  set_config_key(c, "half-width", "12.5");
  set_config_key(c, "modes", "64");
  set_config_key(c, "extend", "false");
  set_config_key(c, "extend-eps", "1e-3");
  set_config_key(c, "potential", "tunnel-bump");
  CHECK(c.half_width == 12.5);
  CHECK(c.modes == 64);
  CHECK_FALSE(c.window.enabled);
  CHECK(c.window.threshold == 1e-3);
  CHECK(c.potential == "tunnel-bump");
  CHECK_THROWS_AS(set_config_key(c, "nope", "1"), InvalidArgument);
  CHECK_THROWS_AS(set_config_key(c, "modes", "x"), InvalidArgument);
}

TEST_CASE("config hash ignores the output directory only") {
  SimConfig a, b;
  b.out = "elsewhere";
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a).size() == 16);
  b.tau = 0.005;
  CHECK(config_hash(a) != config_hash(b));
  CHECK(is_tabulated("csv:x.csv"));
  CHECK_FALSE(is_tabulated("zero"));
}

TEST_CASE("binary snapshots round trip bit for bit") {
  const auto dir = scratch("bin");
  oracle::Gen gen(62);
  for (int dim : {1, 2}) {
    const Grid g(dim, gen.uniform(1.0, 9.0), dim == 1 ? 37 : 9);
    const Field f(g, gen.vec(g.size()));
    const auto path = (dir / ("f" + std::to_string(dim) + ".bin")).string();
    write_field(path, f);
    const Field back = read_field(path);
    CHECK(back.grid() == g);
    CHECK(std::memcmp(back.coeffs().data(), f.coeffs().data(), f.coeffs().size() * sizeof(Complex)) == 0);
    const auto bytes = slurp(path);
    CHECK(bytes.size() == 8 + 4 + 4 + 8 + 4 + 4 + 16 * g.size());
    CHECK(bytes.compare(0, 8, std::string("MWFIELD\0", 8)) == 0);
  }
  const auto bad = (dir / "bad.bin").string();
  write_text(bad, "NOTAFIELD-------------------------");
  CHECK_THROWS_AS(read_field(bad), IoError);
  CHECK_THROWS_AS(read_field((dir / "missing.bin").string()), IoError);
  fs::remove_all(dir);
}

TEST_CASE("CSV snapshot columns") {
  const auto dir = scratch("csv");
  const Grid g1(1, 2.0, 4);
  write_field_csv((dir / "a.csv").string(), Field(g1));
  const auto l1 = lines(dir / "a.csv");
  CHECK(l1.front() == "x,re,im,abs");
  CHECK(l1.size() == 1 + 9);
  const Grid g2(2, 2.0, 2);
  write_field_csv((dir / "b.csv").string(), Field(g2));
  const auto l2 = lines(dir / "b.csv");
  CHECK(l2.front() == "x,y,re,im,abs");
  CHECK(l2.size() == 1 + 25);
  fs::remove_all(dir);
}

TEST_CASE("run writes the documented layout") {
  const auto dir = scratch("run");
  SimConfig c;
  c.half_width = 4.0;
  c.modes = 32;
  c.tau = 0.05;
  c.tmax = 1.0;
  c.snapshot_every = 0.25;
  c.progress_every = 5;
  c.out = dir.string();
  const auto rep = run(c);
  const fs::path rd = rep.run_dir;
  CHECK(rd.parent_path() == dir);
  CHECK(rd.filename().string() == "run-" + config_hash(c).substr(0, 12));
  for (const char* f : {"config.json", "progress.csv", "extensions.csv", "summary.json"}) CHECK(fs::exists(rd / f));
  CHECK(rep.snapshots == 5);
  for (int s : {0, 5, 10, 15, 20}) {
    char name[32];
    std::snprintf(name, sizeof name, "%08d", s);
    CHECK(fs::exists(rd / "snapshots" / (std::string(name) + ".bin")));
    CHECK(fs::exists(rd / "snapshots" / (std::string(name) + ".csv")));
  }
  const auto progress = lines(rd / "progress.csv");
  CHECK(progress.front() == kProgressHeader);
  CHECK(progress.size() == 1 + 5);
  CHECK(lines(rd / "extensions.csv").front() == kExtensionHeader);
  CHECK(same(load_config((rd / "config.json").string()), c));
  const auto summary = nlohmann::json::parse(slurp(rd / "summary.json"));
  CHECK(summary.at("steps") == 20);
  CHECK(summary.at("config_hash") == config_hash(c));

  // Bit-identical rerun.
  const auto first = slurp(rd / "snapshots" / "00000020.bin");
  run(c);
  CHECK(slurp(rd / "snapshots" / "00000020.bin") == first);
  fs::remove_all(dir);
}

TEST_CASE("T = 0 gives exactly one snapshot") {
  const auto dir = scratch("t0");
  SimConfig c;
  c.half_width = 4.0;
  c.modes = 16;
  c.tmax = 0.0;
  c.out = dir.string();
  const auto rep = run(c);
  CHECK(rep.snapshots == 1);
  CHECK(rep.result.steps == 0);
  fs::remove_all(dir);
}

TEST_CASE("extend_demo on a window that never grows") {
  const auto dir = scratch("demo");
  SimConfig c;
  c.half_width = 16.0;
  c.modes = 128;
  c.tau = 0.05;
  c.tmax = 0.5;
  c.out = dir.string();
  const auto rep = extend_demo(c);
  CHECK(rep.extended.extensions.empty());
  CHECK(rep.distance <= 1e-12);
  CHECK(fs::exists(fs::path(rep.run_dir) / "summary.json"));
  fs::remove_all(dir);
}

TEST_CASE("free run on L = 40: every snapshot matches the closed form") {
  const auto dir = scratch("free40");
  SimConfig c;
  c.half_width = 40.0;
  c.modes = 1600;
  c.tau = 1e-3;
  c.tmax = 2.0;
  c.snapshot_every = 1.0;
  c.out = dir.string();
  const auto rep = run(c);
  REQUIRE(rep.snapshots == 3);
  const auto exact = initial_data("free-gaussian").free_solution;
  for (int s : {0, 1000, 2000}) {
    char name[32];
    std::snprintf(name, sizeof name, "%08d.bin", s);
    const Field f = read_field((fs::path(rep.run_dir) / "snapshots" / name).string());
    CHECK(error_vs_exact(f, exact, s * 1e-3).error <= 1e-4);
  }
  fs::remove_all(dir);
}

TEST_CASE("extend_demo negative control: a fixed window loses the packet") {
  const auto dir = scratch("demo_neg");
  SimConfig c;
  c.tmax = 6.0;
  c.out = dir.string();
  c.window.enabled = false;
  const auto rep = extend_demo(c, 40.0);
  CHECK(rep.extended.field.grid().half_width() == 20.0);
  CHECK(rep.direct.field.grid().half_width() == 40.0);
  CHECK(rep.relative_distance > 1e-1);
  fs::remove_all(dir);
}
