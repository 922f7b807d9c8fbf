#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "coalesce/interfaces.hpp"
#include "coalesce/solver.hpp"
#include "dense.hpp"

using namespace coalesce;
using testing_support::Matrix;

namespace {

SimConfig half_line_shock() {
  SimConfig c;
  c.flux = FluxSpec::regularized(1e-16);
  c.grid = SpatialGrid::with_spacing(0.0, 5.0, 0.01);
  c.time = TimeGrid::with_step(0.3, 0.0005);
  c.ic = InitialConditionSpec::shock(1.0);
  return c;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

// Crank-Nicolson predictor-corrector written out with dense matrices over
// all nodes: Dirichlet rows pin node 0, Neumann rows mirror the ghost node.
std::vector<double> dense_reference_step(const SimConfig& c, const std::vector<double>& u) {
  const std::size_t n = u.size();
  const double h = c.grid.h();
  const double tau = c.time.tau();
  const double r = tau / (h * h);
  const bool dirichlet = c.bc_left == BoundaryCondition::dirichlet0;
  Matrix lap(n, std::vector<double>(n, 0.0));
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t left = k == 0 ? 1 : k - 1;
    const std::size_t right = k + 1 == n ? n - 2 : k + 1;
    lap[k][k] -= 2.0;
    lap[k][left] += 1.0;
    lap[k][right] += 1.0;
  }
  Matrix plus(n, std::vector<double>(n, 0.0));
  Matrix minus(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double id = i == j ? 1.0 : 0.0;
      plus[i][j] = id - 0.5 * r * lap[i][j];
      minus[i][j] = id + 0.5 * r * lap[i][j];
    }
  }
  if (dirichlet) {
    for (std::size_t j = 0; j < n; ++j) plus[0][j] = minus[0][j] = j == 0 ? 1.0 : 0.0;
  }
  auto flux_difference = [&](const std::vector<double>& v) {
    std::vector<double> b(n, 0.0);
    for (std::size_t k = 1; k + 1 < n; ++k) {
      b[k] = eval_flux(c.flux, v[k + 1]) - eval_flux(c.flux, v[k - 1]);
    }
    return b;
  };
  const auto base = testing_support::dense_multiply(minus, u);
  const auto b0 = flux_difference(u);
  std::vector<double> rhs(n);
  for (std::size_t k = 0; k < n; ++k) rhs[k] = base[k] + tau / (2 * h) * b0[k];
  const auto u_star = testing_support::dense_solve(plus, rhs);
  const auto b1 = flux_difference(u_star);
  for (std::size_t k = 0; k < n; ++k) rhs[k] = base[k] + tau / (4 * h) * (b0[k] + b1[k]);
  return testing_support::dense_solve(plus, rhs);
}

}  // namespace

TEST_CASE("Thomas solves small systems") {
  TridiagonalSystem id{{0.0, 0.0}, {1.0, 1.0, 1.0}, {0.0, 0.0}};
  const std::vector<double> rhs{3.0, -1.0, 2.5};
  CHECK(thomas_solve(id, rhs) == rhs);

  TridiagonalSystem sys{{-1.0, -1.0}, {2.0, 2.0, 2.0}, {-1.0, -1.0}};
  const auto x = thomas_solve(sys, std::vector<double>{1.0, 0.0, 1.0});
  for (double v : x) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));

  TridiagonalSystem singular{{1.0}, {0.0, 1.0}, {1.0}};
  CHECK_THROWS_AS(thomas_solve(singular, std::vector<double>{1.0, 1.0}), SingularSystemError);
}

TEST_CASE("Thomas matches dense elimination on random dominant systems") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + static_cast<std::size_t>(trial) * 3;
    TridiagonalSystem sys;
    sys.sub.resize(n - 1);
    sys.sup.resize(n - 1);
    sys.diag.resize(n);
    for (auto& v : sys.sub) v = d(rng);
    for (auto& v : sys.sup) v = d(rng);
    Matrix dense(n, std::vector<double>(n, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
      const double off = (k ? std::abs(sys.sub[k - 1]) : 0.0) + (k + 1 < n ? std::abs(sys.sup[k]) : 0.0);
      sys.diag[k] = off + 0.1 + std::abs(d(rng));
      dense[k][k] = sys.diag[k];
      if (k) dense[k][k - 1] = sys.sub[k - 1];
      if (k + 1 < n) dense[k][k + 1] = sys.sup[k];
    }
    std::vector<double> rhs(n);
    for (auto& v : rhs) v = d(rng);
    const auto x = thomas_solve(sys, rhs);
    const auto ref = testing_support::dense_solve(dense, rhs);
    double scale = 0.0;
    for (double v : ref) scale = std::max(scale, std::abs(v));
    CHECK(max_abs_diff(x, ref) <= 1e-12 * scale);

    std::vector<double> y = rhs;
    TridiagonalFactor(sys).solve_in_place(y);
    CHECK(y == x);
  }
}

TEST_CASE("Crank-Nicolson matrices") {
  const SpatialGrid g = SpatialGrid::with_spacing(0.0, 5.0, 0.01);
  const auto m = assemble_matrices(g, 0.0005, BoundaryCondition::dirichlet0);
  REQUIRE(m.plus.size() == 500);
  CHECK(m.plus.diag[0] == doctest::Approx(6.0));
  CHECK(m.plus.sup[0] == doctest::Approx(-2.5));
  CHECK(m.plus.sub.back() == doctest::Approx(-5.0));
  CHECK(m.minus.diag[10] == doctest::Approx(-4.0));
  CHECK(m.minus.sub.back() == doctest::Approx(5.0));
  for (std::size_t k = 1; k + 1 < m.plus.size(); ++k) {
    CHECK(m.plus.sub[k - 1] + m.plus.diag[k] + m.plus.sup[k] == doctest::Approx(1.0));
  }
  const auto zero = assemble_matrices(g, 0.0, BoundaryCondition::neumann);
  CHECK(zero.plus.size() == 501);
  for (double v : zero.plus.diag) CHECK(v == 1.0);
  for (double v : zero.minus.sup) CHECK(v == 0.0);
  const auto neu = assemble_matrices(g, 0.0005, BoundaryCondition::neumann);
  CHECK(neu.plus.sup[0] == doctest::Approx(-5.0));
}

TEST_CASE("flux difference vector") {
  const FluxSpec f = FluxSpec::regularized(1e-3);
  const std::vector<double> zeros(10, 0.0);
  for (double v : assemble_b(f, zeros, BoundaryCondition::dirichlet0)) CHECK(v == 0.0);
  const std::vector<double> k(10, 0.7);
  const auto b = assemble_b(f, k, BoundaryCondition::dirichlet0);
  CHECK(b[0] == eval_flux(f, 0.7));
  for (std::size_t i = 1; i < b.size(); ++i) CHECK(b[i] == 0.0);
  const auto bn = assemble_b(f, k, BoundaryCondition::neumann);
  CHECK(bn.front() == 0.0);
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> u(40);
  for (auto& v : u) v = d(rng);
  const auto br = assemble_b(f, u, BoundaryCondition::dirichlet0);
  CHECK(br[0] == eval_flux(f, u[1]) - eval_flux(f, 0.0));
  for (std::size_t i = 1; i + 1 < u.size(); ++i) {
    CHECK(br[i] == eval_flux(f, u[i + 1]) - eval_flux(f, u[i - 1]));
  }
  CHECK(br.back() == 0.0);
}

TEST_CASE("one step matches a dense reference") {
  SimConfig c = half_line_shock();
  const Snapshot s0 = build_snapshot(c.grid, 0.0, initial_condition(c.ic));
  const std::vector<double> nodes(s0.u().begin(), s0.u().end());
  const auto matrices = assemble_matrices(c.grid, c.time.tau(), c.bc_left);
  const auto next = to_nodes(step(c, matrices, to_unknowns(nodes, c.bc_left)), c.bc_left);
  const auto ref = dense_reference_step(c, nodes);
  CHECK(max_abs_diff(next, ref) <= 1e-12);

  SimConfig full = c;
  full.grid = SpatialGrid::with_spacing(-2.0, 2.0, 0.02);
  full.bc_left = BoundaryCondition::neumann;
  full.flux = FluxSpec::quadratic();
  const Snapshot f0 = build_snapshot(full.grid, 0.0, initial_condition(full.ic));
  const std::vector<double> fn(f0.u().begin(), f0.u().end());
  const auto fm = assemble_matrices(full.grid, full.time.tau(), full.bc_left);
  CHECK(max_abs_diff(step(full, fm, fn), dense_reference_step(full, fn)) <= 1e-12);

  Stepper stepper(full);
  std::vector<double> u = fn;
  stepper.advance(u);
  CHECK(u == step(full, fm, fn));
}

TEST_CASE("fixed points of the step") {
  SimConfig c = half_line_shock();
  const auto m = assemble_matrices(c.grid, c.time.tau(), c.bc_left);
  const std::vector<double> zero(m.plus.size(), 0.0);
  for (double v : step(c, m, zero)) CHECK(v == 0.0);

  c.grid = SpatialGrid::with_spacing(-5.0, 5.0, 0.01);
  c.bc_left = BoundaryCondition::neumann;
  const auto mn = assemble_matrices(c.grid, c.time.tau(), c.bc_left);
  const std::vector<double> k(mn.plus.size(), 0.375);
  for (double v : step(c, mn, k)) CHECK(v == doctest::Approx(0.375).epsilon(1e-14));
}

TEST_CASE("shock run: the positive zero shrinks and disappears") {
  const RunResult r = run(half_line_shock());
  CHECK(r.warnings.empty());
  CHECK(r.trajectory.size() == 7);
  const auto counts = count_zeros(r.track);
  CHECK(counts.front().second == 1);
  CHECK(counts.back().second == 0);
  CHECK(sturm_check(r.track).ok);
  double last_seen = 0.0;
  double prev = 2.0;
  for (const ZeroSet& z : r.track.samples()) {
    if (z.zeros.empty()) break;
    CHECK(z.zeros.front() <= prev + 1e-12);
    prev = z.zeros.front();
    last_seen = z.t;
  }
  CHECK(last_seen == doctest::Approx(0.2535).epsilon(0.01));
}

TEST_CASE("runs are deterministic") {
  SimConfig c = half_line_shock();
  c.time = TimeGrid::with_step(0.05, 0.0005);
  const RunResult a = run(c);
  const RunResult b = run(c);
  REQUIRE(a.trajectory.size() == b.trajectory.size());
  for (std::size_t i = 0; i < a.trajectory.size(); ++i) {
    CHECK(max_abs_diff(a.trajectory.snapshots()[i].u(), b.trajectory.snapshots()[i].u()) == 0.0);
  }
}

TEST_CASE("full-line odd runs stay odd and within the initial range") {
  for (auto ic : {InitialConditionSpec::shock(1.0), InitialConditionSpec::antishock(1.0)}) {
    SimConfig c;
    c.flux = FluxSpec::regularized(1e-16);
    c.grid = SpatialGrid::with_spacing(-5.0, 5.0, 0.01);
    c.time = TimeGrid::with_step(0.2, 0.0005);
    c.ic = ic;
    c.bc_left = BoundaryCondition::neumann;
    c.snapshot_stride = 20;
    const RunResult r = run(c);
    const auto u0 = r.trajectory.front().u();
    const auto [lo, hi] = std::minmax_element(u0.begin(), u0.end());
    for (const Snapshot& s : r.trajectory.snapshots()) {
      const std::size_t n = s.size();
      for (std::size_t k = 0; k < n; ++k) {
        CHECK(std::abs(s[k] + s[n - 1 - k]) <= 1e-10);
        CHECK(s[k] >= *lo - 1e-8);
        CHECK(s[k] <= *hi + 1e-8);
      }
    }
  }
}

TEST_CASE("same-sign data: mass conserved and energy decays") {
  SimConfig c;
  c.flux = FluxSpec::regularized(1e-16);
  c.grid = SpatialGrid::with_spacing(-10.0, 10.0, 0.02);
  c.time = TimeGrid::with_step(0.5, 0.001);
  const SpatialGrid& g = c.grid;
  std::vector<double> y(g.n_nodes());
  for (std::size_t k = 0; k < y.size(); ++k) y[k] = 1.0 - 1.2 * std::exp(-g.node(k) * g.node(k));
  c.ic = InitialConditionSpec::sampled(SampledTable(g.nodes(), y));
  c.bc_left = BoundaryCondition::neumann;
  c.validate();
  Stepper stepper(c);
  std::vector<double> u = y;
  const double ref = 2.0 / 3.0;
  const double m0 = discrete_mass(Snapshot(g, 0.0, u), ref);
  double e_prev = discrete_energy(Snapshot(g, 0.0, u), ref);
  for (std::size_t m = 1; m <= c.time.n_steps(); ++m) {
    stepper.advance(u);
    const Snapshot s(g, c.time.time(m), u);
    CHECK(std::abs(discrete_mass(s, ref) - m0) <= 1e-8 * std::abs(m0) * s.t());
    const double e = discrete_energy(s, ref);
    CHECK(e <= e_prev + 1e-10);
    e_prev = e;
  }
}

TEST_CASE("oversized steps are reported as blow-up") {
  SimConfig c;
  c.flux = FluxSpec::quadratic();
  c.grid = SpatialGrid::with_spacing(-10.0, 10.0, 0.1);
  c.time = TimeGrid::with_step(50.0, 5.0);
  c.ic = InitialConditionSpec::shock(4.0);
  c.bc_left = BoundaryCondition::neumann;
  CHECK_THROWS_AS(run(c), BlowUpError);
}

TEST_CASE("configuration validation") {
  SimConfig c = half_line_shock();
  CHECK_NOTHROW(c.validate());
  c.ic = InitialConditionSpec::tanh_shift(1.0);
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = half_line_shock();
  c.grid = SpatialGrid::with_spacing(-1.0, 5.0, 0.01);
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = half_line_shock();
  c.snapshot_stride = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}
