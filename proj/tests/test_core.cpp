#include <doctest.h>

#include <cmath>
#include <random>

#include "coalesce/core.hpp"

using namespace coalesce;

TEST_CASE("grid nodes are uniform and exact") {
  const SpatialGrid g(0.0, 5.0, 501);
  CHECK(g.h() == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(g.node(0) == 0.0);
  CHECK(g.node(500) == 5.0);
  for (std::size_t k = 0; k + 1 < g.n_nodes(); ++k) {
    CHECK(std::abs(g.node(k + 1) - g.node(k) - g.h()) < 1e-14);
  }
  CHECK(g.nodes().size() == 501);
}

TEST_CASE("symmetric grids are node-symmetric") {
  for (std::size_t n : {3u, 201u, 2001u, 4001u}) {
    const SpatialGrid g(-10.0, 10.0, n);
    for (std::size_t k = 0; k < n; ++k) CHECK(g.node(k) == -g.node(n - 1 - k));
  }
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(SpatialGrid(0.0, 1.0, 2), ConfigError);
  CHECK_THROWS_AS(SpatialGrid(1.0, 1.0, 10), ConfigError);
  CHECK_THROWS_AS(SpatialGrid::with_spacing(0.0, 1.0, -0.1), ConfigError);
  CHECK(SpatialGrid::with_spacing(-10.0, 10.0, 0.01).n_nodes() == 2001);
}

TEST_CASE("time grid") {
  const TimeGrid tg = TimeGrid::with_step(0.3, 0.0005);
  CHECK(tg.n_steps() == 600);
  CHECK(tg.time(600) == doctest::Approx(0.3));
  CHECK(tg.time(0) == 0.0);
}

TEST_CASE("build_snapshot samples nodes") {
  const SpatialGrid g = SpatialGrid::with_spacing(0.0, 5.0, 0.01);
  const Snapshot zero = build_snapshot(g, 0.0, [](double) { return 0.0; });
  for (double v : zero.u()) CHECK(v == 0.0);
  const Snapshot s = build_snapshot(g, 0.0, [](double x) { return std::tanh(x); });
  CHECK(s[100] == doctest::Approx(0.7615941559557649).epsilon(1e-15));
}

TEST_CASE("odd functions on symmetric grids sample to exact odd data") {
  const SpatialGrid g(-5.0, 5.0, 1001);
  const Snapshot s = build_snapshot(g, 0.0, [](double x) { return std::tanh(3 * x) * x * x; });
  for (std::size_t k = 0; k < s.size(); ++k) CHECK(s[k] == -s[s.size() - 1 - k]);
}

TEST_CASE("snapshots reject non-finite data") {
  const SpatialGrid g(0.0, 1.0, 3);
  CHECK_THROWS_AS(Snapshot(g, 0.0, {0.0, NAN, 1.0}), DomainError);
  CHECK_THROWS_AS(Snapshot(g, 0.0, {0.0, 1.0}), Error);
}

TEST_CASE("interface track demands increasing time") {
  InterfaceTrack track;
  track.append({0.0, {1.0}, {1}});
  track.append({0.1, {}, {}});
  CHECK_THROWS_AS(track.append({0.1, {}, {}}), DomainError);
  CHECK_THROWS_AS(track.append({0.2, {1.0, 0.5}, {1, 1}}), DomainError);
  CHECK(track.size() == 2);
}

TEST_CASE("trapezoid integrates linear data exactly") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int i = 0; i < 20; ++i) {
    const double a = d(rng), b = d(rng);
    const SpatialGrid g(-1.0, 3.0, 57);
    const Snapshot s = build_snapshot(g, 0.0, [&](double x) { return a * x + b; });
    CHECK(trapezoid(g, s.u()) == doctest::Approx(4.0 * a + 4.0 * b).epsilon(1e-13));
  }
}
