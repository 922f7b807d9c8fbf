#include <doctest.h>

#include <cmath>
#include <random>

#include "coalesce/interfaces.hpp"

using namespace coalesce;

namespace {

InterfaceTrack track_of(const std::vector<std::vector<double>>& zeros, double dt = 0.1) {
  InterfaceTrack track;
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    track.append({dt * static_cast<double>(i), zeros[i], std::vector<int>(zeros[i].size(), 1)});
  }
  return track;
}

double bisect(const std::function<double(double)>& f, double a, double b) {
  for (int i = 0; i < 200 && b - a > 1e-16; ++i) {
    const double m = 0.5 * (a + b);
    (f(a) * f(m) <= 0.0 ? b : a) = m;
  }
  return 0.5 * (a + b);
}

}  // namespace

TEST_CASE("zero extraction on two nodes") {
  const std::vector<double> x{0.0, 0.01};
  const ZeroSet z = extract_zeros(x, std::vector<double>{-1.0, 1.0}, 0.0);
  REQUIRE(z.zeros.size() == 1);
  CHECK(z.zeros[0] == doctest::Approx(0.005).epsilon(1e-15));
  CHECK(z.signs[0] == 1);
  CHECK(extract_zeros(x, std::vector<double>{1.0, 3.0}, 0.0).zeros.empty());
  CHECK(extract_zeros(x, std::vector<double>{1.0, -3.0}, 0.0).signs[0] == -1);
}

TEST_CASE("zero of a sampled tanh") {
  const SpatialGrid g = SpatialGrid::with_spacing(0.0, 5.0, 0.01);
  const auto f = [](double x) { return std::tanh(x - 1.0); };
  const ZeroSet z = extract_zeros(build_snapshot(g, 0.0, f));
  REQUIRE(z.zeros.size() == 1);
  CHECK(std::abs(z.zeros[0] - bisect(f, 0.5, 1.5)) < 1e-6);
}

TEST_CASE("exact zero nodes") {
  const std::vector<double> x{0.0, 1.0, 2.0, 3.0, 4.0};
  const ZeroSet crossing = extract_zeros(x, std::vector<double>{-1.0, 0.0, 1.0, 2.0, 3.0}, 0.0);
  REQUIRE(crossing.zeros.size() == 1);
  CHECK(crossing.zeros[0] == 1.0);
  CHECK(crossing.signs[0] == 1);
  const ZeroSet run = extract_zeros(x, std::vector<double>{1.0, 0.0, 0.0, 0.0, -1.0}, 0.0);
  REQUIRE(run.zeros.size() == 1);
  CHECK(run.zeros[0] == 2.0);
  CHECK(run.signs[0] == 0);
  const ZeroSet touch = extract_zeros(x, std::vector<double>{1.0, 0.0, 1.0, 2.0, 3.0}, 0.0);
  REQUIRE(touch.zeros.size() == 1);
  CHECK(touch.signs[0] == 0);
}

TEST_CASE("zero count equals sign changes, each zero inside its cell") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  const SpatialGrid g(-3.0, 3.0, 61);
  const auto x = g.nodes();
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> u(x.size());
    for (auto& v : u) {
      v = d(rng);
      if (v == 0.0) v = 0.5;
    }
    std::size_t changes = 0;
    std::vector<std::size_t> cells;
    for (std::size_t k = 0; k + 1 < u.size(); ++k) {
      if ((u[k] < 0) != (u[k + 1] < 0)) {
        ++changes;
        cells.push_back(k);
      }
    }
    const ZeroSet z = extract_zeros(x, u, 0.0);
    REQUIRE(z.zeros.size() == changes);
    for (std::size_t i = 0; i < changes; ++i) {
      CHECK(z.zeros[i] > x[cells[i]]);
      CHECK(z.zeros[i] < x[cells[i] + 1]);
    }
  }
}

TEST_CASE("zero counts and the Sturm property") {
  CHECK(count_zeros(InterfaceTrack{}).empty());
  const auto counts = count_zeros(track_of({{1, 2, 3}, {1, 2, 3}, {2}, {2}}));
  REQUIRE(counts.size() == 4);
  CHECK(counts[0].second == 3);
  CHECK(counts[2].second == 1);
  CHECK(sturm_check(track_of({{1, 2, 3}, {2}, {2}})).ok);
  const SturmResult bad = sturm_check(track_of({{1}, {1, 2}}));
  CHECK_FALSE(bad.ok);
  CHECK(bad.t_before == 0.0);
  CHECK(bad.t_after == doctest::Approx(0.1));
}

TEST_CASE("branch matching") {
  const auto single = match_tracks(track_of({{1.0}, {1.01}, {1.02}, {1.01}}), 0.2);
  REQUIRE(single.size() == 1);
  CHECK(single[0].t.size() == 4);
  CHECK_FALSE(single[0].termination);

  const auto merge = match_tracks(track_of({{-1.0, 0.0, 1.0}, {-0.5, 0.0, 0.5}, {0.0}, {0.0}}), 0.6);
  REQUIRE(merge.size() == 3);
  CHECK(merge[0].termination);
  CHECK(merge[2].termination);
  CHECK(*merge[0].termination == *merge[2].termination);
  CHECK(*merge[0].termination == doctest::Approx(0.15));
  CHECK_FALSE(merge[1].termination);
  CHECK(merge[1].t.size() == 4);
  CHECK_THROWS_AS(match_tracks(InterfaceTrack{}, 0.0), DomainError);
}

TEST_CASE("fold data split into two branches ending at the fold") {
  const double tau = 1e-4;
  InterfaceTrack track;
  for (int m = 0; m <= 6000; ++m) {
    const double t = m * tau;
    ZeroSet z{t, {}, {}};
    if (t < 0.5) {
      const double r = std::sqrt(2.0 * (0.5 - t));
      z.zeros = {-r, r};
      z.signs = {1, -1};
    }
    track.append(z);
  }
  const auto branches = match_tracks(track, 0.2);
  REQUIRE(branches.size() == 2);
  for (const Branch& b : branches) {
    REQUIRE(b.termination);
    CHECK(std::abs(*b.termination - 0.5) <= tau);
  }
}

TEST_CASE("matched branches are continuous and never cross") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> jitter(-0.004, 0.004);
  std::vector<double> pos{-2.0, -1.0, 0.0, 1.0, 2.0};
  InterfaceTrack track;
  for (int m = 0; m < 300; ++m) {
    for (auto& p : pos) p += jitter(rng);
    if (m == 100 || m == 200) pos.erase(pos.begin() + 1);
    track.append({0.01 * m, pos, std::vector<int>(pos.size(), 1)});
  }
  const double window = 0.05;
  const auto branches = match_tracks(track, window);
  for (const Branch& b : branches) {
    for (std::size_t i = 1; i < b.t.size(); ++i) CHECK(std::abs(b.xi[i] - b.xi[i - 1]) <= window);
  }
  for (std::size_t a = 0; a < branches.size(); ++a) {
    for (std::size_t b = a + 1; b < branches.size(); ++b) {
      // order at shared times never flips
      int order = 0;
      for (std::size_t i = 0; i < branches[a].t.size(); ++i) {
        for (std::size_t j = 0; j < branches[b].t.size(); ++j) {
          if (branches[a].t[i] != branches[b].t[j]) continue;
          const int o = branches[a].xi[i] < branches[b].xi[j] ? -1 : 1;
          if (order == 0) order = o;
          CHECK(o == order);
        }
      }
    }
  }
}
