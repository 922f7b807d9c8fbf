#include "coalesce/config.hpp"

#include <algorithm>
#include <cmath>

namespace coalesce {

std::string to_string(BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::dirichlet0: return "dirichlet0";
    case BoundaryCondition::neumann: return "neumann";
  }
  return "unknown";
}

namespace {

void check_odd_initial_data(const SimConfig& cfg) {
  const PointFunction u0 = initial_condition(cfg.ic);
  const double at_origin = u0(0.0);
  double scale = 1.0;
  for (std::size_t k = 0; k < cfg.grid.n_nodes(); k += std::max<std::size_t>(1, cfg.grid.n_nodes() / 64)) {
    scale = std::max(scale, std::abs(u0(cfg.grid.node(k))));
  }
  const double tol = 1e-12 * scale;
  if (!(std::abs(at_origin) <= tol)) {
    throw ConfigError("dirichlet0 needs initial data vanishing at x = 0");
  }
  // Sampled data only lives on the half line; analytic families are probed on both sides.
  if (cfg.ic.kind == InitialKind::sampled) return;
  for (int i = 1; i <= 16; ++i) {
    const double x = cfg.grid.x_max() * static_cast<double>(i) / 16.0;
    if (!(std::abs(u0(x) + u0(-x)) <= tol)) {
      throw ConfigError("dirichlet0 needs spatially odd initial data; " + cfg.ic.name() +
                        " is not odd");
    }
  }
}

}  // namespace

void SimConfig::validate() const {
  if (snapshot_stride < 1) {
    throw ConfigError("snapshot_stride must be at least 1");
  }
  if (flux.kind == FluxKind::regularized_modular && !(flux.epsilon > 0.0)) {
    throw ConfigError("regularized flux needs epsilon > 0");
  }
  if (flux.kind == FluxKind::tabulated && !flux.table) {
    throw ConfigError("tabulated flux has no table");
  }
  if (bc_right != BoundaryCondition::neumann) {
    throw ConfigError("right boundary must be neumann");
  }
  if (bc_left == BoundaryCondition::dirichlet0) {
    if (grid.x_min() != 0.0) {
      throw ConfigError("dirichlet0 requires x_min = 0");
    }
    check_odd_initial_data(*this);
  }
  // Builds the initial function once so invalid parameters surface here.
  (void)initial_condition(ic);
}

void Trajectory::append(Snapshot snap, std::size_t step) {
  if (!(snap.grid() == config_.grid)) {
    throw DomainError("snapshot grid differs from the trajectory grid");
  }
  if (!snapshots_.empty() && !(snap.t() > snapshots_.back().t())) {
    throw DomainError("trajectory times must increase strictly");
  }
  snapshots_.push_back(std::move(snap));
  steps_.push_back(step);
}

}  // namespace coalesce
