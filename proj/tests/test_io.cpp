#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>

#include "coalesce/io.hpp"
#include "coalesce/manifest.hpp"

using namespace coalesce;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("coalesce_test_io_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("numbers survive the text round trip") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-1e3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const double v = d(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    CHECK(parse_double_field(format_double(v), 1) == v);
  }
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK_THROWS_AS(parse_double_field("1.5x", 7), ParseError);
  CHECK_THROWS_AS(parse_double_field("", 7), ParseError);
}

TEST_CASE("snapshot CSV round trip is bit-exact") {
  for (const SpatialGrid& g : {SpatialGrid::with_spacing(0.0, 5.0, 0.01), SpatialGrid(-10.0, 10.0, 2001),
                               SpatialGrid(0.3, 1.7, 17)}) {
    const Snapshot s = build_snapshot(g, 0.12345678901234567, [](double x) { return std::sin(3 * x) / 7; });
    std::stringstream buf;
    write_snapshot_csv(buf, s);
    const Snapshot r = read_snapshot_csv(buf);
    CHECK(r.t() == s.t());
    CHECK(r.grid() == s.grid());
    for (std::size_t k = 0; k < s.size(); ++k) CHECK(r[k] == s[k]);
  }
}

TEST_CASE("snapshot CSV errors carry line numbers") {
  std::stringstream bad("# t = 0\nx,u\n0,1\n0.5,oops\n1,2\n");
  try {
    read_snapshot_csv(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
  std::stringstream uneven("x,u\n0,1\n0.5,1\n2,1\n");
  CHECK_THROWS_AS(read_snapshot_csv(uneven), ParseError);
  std::stringstream header("a,b\n0,1\n");
  CHECK_THROWS_AS(read_snapshot_csv(header), ParseError);
}

TEST_CASE("track CSV round trip") {
  std::vector<Branch> branches(2);
  branches[0] = {0, {0.0, 0.1, 0.2}, {-1.0, -0.5, -0.1}, 0.25};
  branches[1] = {1, {0.0, 0.1, 0.2, 0.3}, {1.0 / 3.0, 0.5, 0.7, 0.9}, std::nullopt};
  std::stringstream buf;
  write_track_csv(buf, branches);
  CHECK(buf.str().rfind("t,branch_id,xi\n", 0) == 0);
  const auto series = read_track_csv(buf);
  REQUIRE(series.size() == 2);
  CHECK(series.at(1).xi == branches[1].xi);
  CHECK(series.at(0).t == branches[0].t);
  CHECK(primary_branch(series) == 1);
  CHECK(primary_branch(branches) == 1);
  std::stringstream empty("");
  CHECK_THROWS_AS(read_track_csv(empty), ParseError);
}

TEST_CASE("fit CSV round trip") {
  const fs::path dir = scratch_dir("fit");
  const ScalingFit f{0.25383, 0.50614316990509101, 0.94365415357501736, 9.5e-6, 28, 0.2395, 0.253};
  write_fit_csv(dir / "fit.csv", f);
  const ScalingFit r = read_fit_csv(dir / "fit.csv");
  CHECK(r.t0 == f.t0);
  CHECK(r.c1 == f.c1);
  CHECK(r.c2 == f.c2);
  CHECK(r.n_samples == 28);
  CHECK(r.window_hi == f.window_hi);
  write_curve_csv(dir / "curve.csv", {{0.3, 1e-3, 0.5, 1.0}});
  CHECK(fs::exists(dir / "curve.csv"));
}

TEST_CASE("manifests round trip through text") {
  for (const std::string& name : preset_names()) {
    const ExperimentManifest m = preset(name);
    std::stringstream buf;
    write_manifest(buf, m);
    const ExperimentManifest r = parse_manifest(buf);
    CHECK(r.name == m.name);
    CHECK(r.config.grid == m.config.grid);
    CHECK(r.config.time.n_steps() == m.config.time.n_steps());
    CHECK(r.config.time.t_end() == m.config.time.t_end());
    CHECK(r.config.flux.epsilon == m.config.flux.epsilon);
    CHECK(r.config.ic.kind == m.config.ic.kind);
    CHECK(r.config.ic.parameter == m.config.ic.parameter);
    CHECK(r.config.bc_left == m.config.bc_left);
    CHECK(r.fit.window_floor == m.fit.window_floor);
    CHECK(r.fit.window_ceiling == m.fit.window_ceiling);
  }
}

TEST_CASE("preset files agree with the built-in presets") {
  for (const std::string& name : preset_names()) {
    const fs::path file = fs::path(COALESCE_SOURCE_DIR) / "presets" / (name + ".ini");
    REQUIRE(fs::exists(file));
    const ExperimentManifest a = load_manifest(file);
    const ExperimentManifest b = preset(name);
    CHECK(a.config.grid == b.config.grid);
    CHECK(a.config.time.n_steps() == b.config.time.n_steps());
    CHECK(a.config.ic.kind == b.config.ic.kind);
    CHECK(a.config.ic.parameter == b.config.ic.parameter);
    CHECK(a.config.flux.epsilon == b.config.flux.epsilon);
  }
}

TEST_CASE("manifest errors") {
  auto parse = [](const std::string& text) {
    std::stringstream in(text);
    return parse_manifest(in);
  };
  CHECK_NOTHROW(parse("[experiment]\nname = x\n"));
  CHECK_THROWS_AS(parse("[experiment]\nname = x\ncolour = red\n"), ConfigError);
  CHECK_THROWS_AS(parse("[nonsense]\nkey = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse("[experiment]\nname = x\n[grid]\nh = abc\n"), ConfigError);
  CHECK_THROWS_AS(parse("[experiment]\nname = x\n[grid]\nh = 0.01\nn_nodes = 10\n"), ConfigError);
  CHECK_THROWS_AS(parse("[experiment]\nname = x\n[initial]\nkind = wobbly\n"), ConfigError);
  CHECK_THROWS_AS(parse("[experiment]\nname = x\n[initial]\nkind = tanh_shifted\nparameter = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse("[experiment\nname = x\n"), ParseError);
  CHECK_THROWS_AS(preset("shock-a9"), ConfigError);
  CHECK_THROWS_AS(resolve_manifest("/no/such/file.ini"), ConfigError);
}

TEST_CASE("limits inferred from the initial family") {
  CHECK(shock_data(preset("shock-a1")).phi_minus == -1.0);
  CHECK(shock_data(preset("anti-a4")).phi_minus == 1.0);
  std::stringstream in("[experiment]\nname = x\n[shock]\nphi_minus = -2\nphi_plus = 1\n");
  CHECK(shock_data(parse_manifest(in)).phi_minus == -2.0);
}

TEST_CASE("trajectory directory") {
  const fs::path dir = scratch_dir("traj");
  SimConfig c;
  Trajectory traj(c);
  for (std::size_t m : {0u, 100u, 200u}) {
    traj.append(build_snapshot(c.grid, c.time.time(m), [&](double x) { return std::tanh(x) * m; }), m);
  }
  const auto files = write_trajectory_dir(dir, traj);
  CHECK(files.size() == 3);
  CHECK(fs::exists(dir / "index.csv"));
  CHECK(fs::exists(dir / snapshot_file_name(200)));
  const Snapshot back = read_snapshot_csv(dir / snapshot_file_name(100));
  CHECK(back.t() == traj.snapshots()[1].t());
  CHECK(back[250] == traj.snapshots()[1][250]);
}
