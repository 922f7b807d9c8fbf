#include "coalesce/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "coalesce/interfaces.hpp"

namespace coalesce {

namespace {

void check_shape(const TridiagonalSystem& sys) {
  const std::size_t n = sys.diag.size();
  if (n == 0 || sys.sub.size() + 1 != n || sys.sup.size() + 1 != n) {
    throw DomainError("tridiagonal system has inconsistent diagonal lengths");
  }
}

}  // namespace

void TridiagonalSystem::multiply(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = diag.size();
  if (x.size() != n || y.size() != n) {
    throw DomainError("tridiagonal multiply: size mismatch");
  }
  if (n == 1) {
    y[0] = diag[0] * x[0];
    return;
  }
  y[0] = diag[0] * x[0] + sup[0] * x[1];
  for (std::size_t k = 1; k + 1 < n; ++k) {
    y[k] = sub[k - 1] * x[k - 1] + diag[k] * x[k] + sup[k] * x[k + 1];
  }
  y[n - 1] = sub[n - 2] * x[n - 2] + diag[n - 1] * x[n - 1];
}

std::vector<double> TridiagonalSystem::multiply(std::span<const double> x) const {
  std::vector<double> y(diag.size());
  multiply(x, y);
  return y;
}

TridiagonalFactor::TridiagonalFactor(const TridiagonalSystem& sys) {
  check_shape(sys);
  const std::size_t n = sys.diag.size();
  sub_ = sys.sub;
  inv_pivot_.resize(n);
  upper_.assign(n, 0.0);
  double pivot = sys.diag[0];
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) pivot = sys.diag[k] - sys.sub[k - 1] * upper_[k - 1];
    if (pivot == 0.0 || !std::isfinite(pivot)) {
      throw SingularSystemError("zero pivot in row " + std::to_string(k));
    }
    inv_pivot_[k] = 1.0 / pivot;
    if (k + 1 < n) upper_[k] = sys.sup[k] * inv_pivot_[k];
  }
}

void TridiagonalFactor::solve_in_place(std::span<double> x) const {
  const std::size_t n = inv_pivot_.size();
  if (x.size() != n) {
    throw DomainError("tridiagonal solve: size mismatch");
  }
  x[0] *= inv_pivot_[0];
  for (std::size_t k = 1; k < n; ++k) {
    x[k] = (x[k] - sub_[k - 1] * x[k - 1]) * inv_pivot_[k];
  }
  for (std::size_t k = n - 1; k-- > 0;) {
    x[k] -= upper_[k] * x[k + 1];
  }
}

std::vector<double> thomas_solve(const TridiagonalSystem& sys, std::span<const double> rhs) {
  TridiagonalFactor factor(sys);
  std::vector<double> x(rhs.begin(), rhs.end());
  factor.solve_in_place(x);
  return x;
}

std::size_t unknown_count(const SpatialGrid& grid, BoundaryCondition bc_left) {
  return bc_left == BoundaryCondition::dirichlet0 ? grid.n_nodes() - 1 : grid.n_nodes();
}

CrankNicolsonMatrices assemble_matrices(const SpatialGrid& grid, double tau,
                                        BoundaryCondition bc_left) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw ConfigError("time step must be finite and nonnegative");
  }
  const std::size_t n = unknown_count(grid, bc_left);
  const double r = tau / (grid.h() * grid.h());
  auto build = [&](double sign) {
    TridiagonalSystem s;
    s.diag.assign(n, 1.0 + sign * r);
    s.sub.assign(n - 1, -sign * 0.5 * r);
    s.sup.assign(n - 1, -sign * 0.5 * r);
    s.sub[n - 2] = -sign * r;
    if (bc_left == BoundaryCondition::neumann) s.sup[0] = -sign * r;
    return s;
  };
  return {build(1.0), build(-1.0)};
}

namespace {

void fill_b(const FluxSpec& spec, std::span<const double> u, BoundaryCondition bc_left,
            std::vector<double>& fv, std::span<double> b) {
  const std::size_t n = u.size();
  fv.resize(n);
  for (std::size_t k = 0; k < n; ++k) fv[k] = eval_flux(spec, u[k]);
  b[0] = bc_left == BoundaryCondition::dirichlet0 ? fv[1] - eval_flux(spec, 0.0) : 0.0;
  for (std::size_t k = 1; k + 1 < n; ++k) b[k] = fv[k + 1] - fv[k - 1];
  b[n - 1] = 0.0;
}

}  // namespace

std::vector<double> assemble_b(const FluxSpec& spec, std::span<const double> u,
                               BoundaryCondition bc_left) {
  if (u.size() < 2) {
    throw DomainError("assemble_b needs at least two unknowns");
  }
  std::vector<double> fv;
  std::vector<double> b(u.size());
  fill_b(spec, u, bc_left, fv, b);
  return b;
}

std::vector<double> step(const SimConfig& config, const CrankNicolsonMatrices& matrices,
                         std::span<const double> u_m) {
  const std::size_t n = matrices.plus.size();
  if (u_m.size() != n) {
    throw DomainError("step: state size does not match the matrices");
  }
  const double w = config.time.tau() / (4.0 * config.grid.h());
  const std::vector<double> a_minus_u = matrices.minus.multiply(u_m);
  const std::vector<double> b_m = assemble_b(config.flux, u_m, config.bc_left);
  std::vector<double> rhs(n);
  for (std::size_t k = 0; k < n; ++k) rhs[k] = a_minus_u[k] + 2.0 * w * b_m[k];
  const std::vector<double> u_star = thomas_solve(matrices.plus, rhs);
  const std::vector<double> b_star = assemble_b(config.flux, u_star, config.bc_left);
  for (std::size_t k = 0; k < n; ++k) rhs[k] = a_minus_u[k] + w * (b_m[k] + b_star[k]);
  return thomas_solve(matrices.plus, rhs);
}

Stepper::Stepper(const SimConfig& config)
    : flux_(config.flux),
      bc_left_(config.bc_left),
      n_(unknown_count(config.grid, config.bc_left)),
      explicit_weight_(config.time.tau() / (4.0 * config.grid.h())),
      matrices_(assemble_matrices(config.grid, config.time.tau(), config.bc_left)),
      factor_(matrices_.plus),
      a_minus_u_(n_),
      b_current_(n_),
      b_predicted_(n_),
      u_star_(n_) {}

void Stepper::advance(std::span<double> u) {
  if (u.size() != n_) {
    throw DomainError("stepper: state size mismatch");
  }
  matrices_.minus.multiply(u, a_minus_u_);
  fill_b(flux_, u, bc_left_, flux_values_, b_current_);
  for (std::size_t k = 0; k < n_; ++k) {
    u_star_[k] = a_minus_u_[k] + 2.0 * explicit_weight_ * b_current_[k];
  }
  factor_.solve_in_place(u_star_);
  fill_b(flux_, u_star_, bc_left_, flux_values_, b_predicted_);
  for (std::size_t k = 0; k < n_; ++k) {
    u[k] = a_minus_u_[k] + explicit_weight_ * (b_current_[k] + b_predicted_[k]);
  }
  factor_.solve_in_place(u);
}

std::vector<double> to_nodes(std::span<const double> unknowns, BoundaryCondition bc_left) {
  std::vector<double> out;
  out.reserve(unknowns.size() + 1);
  if (bc_left == BoundaryCondition::dirichlet0) out.push_back(0.0);
  out.insert(out.end(), unknowns.begin(), unknowns.end());
  return out;
}

std::vector<double> to_unknowns(std::span<const double> nodes, BoundaryCondition bc_left) {
  const std::size_t skip = bc_left == BoundaryCondition::dirichlet0 ? 1 : 0;
  return std::vector<double>(nodes.begin() + static_cast<std::ptrdiff_t>(skip), nodes.end());
}

RunResult run(const SimConfig& config) {
  config.validate();
  const SpatialGrid& grid = config.grid;
  const BoundaryCondition bc = config.bc_left;
  const std::size_t skip = bc == BoundaryCondition::dirichlet0 ? 1 : 0;

  const Snapshot first = build_snapshot(grid, 0.0, initial_condition(config.ic));
  std::vector<double> nodes0(first.u().begin(), first.u().end());
  if (skip == 1) nodes0[0] = 0.0;
  const auto [lo_it, hi_it] = std::minmax_element(nodes0.begin(), nodes0.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  const double margin = std::max(hi - lo, 1.0);

  RunResult result{Trajectory(config), {}, {}};
  result.trajectory.append(Snapshot(grid, 0.0, nodes0), 0);

  const std::vector<double> x = grid.nodes();
  const std::span<const double> x_unknowns = std::span<const double>(x).subspan(skip);
  std::vector<double> u = to_unknowns(nodes0, bc);
  result.track.append(extract_zeros(x_unknowns, u, 0.0));

  Stepper stepper(config);
  const std::size_t n_steps = config.time.n_steps();
  bool right_warned = false;
  bool left_warned = false;
  for (std::size_t m = 1; m <= n_steps; ++m) {
    stepper.advance(u);
    for (std::size_t k = 0; k < u.size(); ++k) {
      if (!std::isfinite(u[k])) {
        throw BlowUpError("non-finite value at node " + std::to_string(k + skip), m);
      }
      if (u[k] < lo - margin || u[k] > hi + margin) {
        throw BlowUpError("solution left the range of the initial data at node " +
                              std::to_string(k + skip),
                          m);
      }
    }
    const double t = config.time.time(m);
    result.track.append(extract_zeros(x_unknowns, u, t));

    if (!right_warned && std::abs(u.back() - nodes0.back()) > 0.05) {
      right_warned = true;
      std::ostringstream msg;
      msg << "boundary contamination at x_max from t = " << t;
      result.warnings.push_back(msg.str());
    }
    if (skip == 0 && !left_warned && std::abs(u.front() - nodes0.front()) > 0.05) {
      left_warned = true;
      std::ostringstream msg;
      msg << "boundary contamination at x_min from t = " << t;
      result.warnings.push_back(msg.str());
    }
    if (m % config.snapshot_stride == 0 || m == n_steps) {
      result.trajectory.append(Snapshot(grid, t, to_nodes(u, bc)), m);
    }
  }
  return result;
}

double discrete_mass(const Snapshot& snap, double reference) {
  std::vector<double> v(snap.u().begin(), snap.u().end());
  for (double& x : v) x -= reference;
  return trapezoid(snap.grid(), v);
}

double discrete_energy(const Snapshot& snap, double reference) {
  std::vector<double> v(snap.u().begin(), snap.u().end());
  for (double& x : v) x = (x - reference) * (x - reference);
  return trapezoid(snap.grid(), v);
}

}  // namespace coalesce
