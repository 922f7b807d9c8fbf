#include "coalesce/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "coalesce/io.hpp"

namespace coalesce {

double default_match_window(const SpatialGrid& grid) { return 20.0 * grid.h(); }

RunOutcome simulate(const ExperimentManifest& m) {
  const auto start = std::chrono::steady_clock::now();
  RunOutcome out{run(m.config), {}, 0.0};
  out.branches = match_tracks(out.run.track, default_match_window(m.config.grid));
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

BranchFit fit_branches(const std::vector<Branch>& branches, const FitOptions& options,
                       std::optional<std::size_t> branch) {
  const std::size_t id = branch ? *branch : primary_branch(branches);
  for (const Branch& b : branches) {
    if (b.id == id) return {id, fit_scaling_law(b.t, b.xi, options)};
  }
  throw InsufficientDataError("track has no branch " + std::to_string(id));
}

Snapshot full_line_initial(const SimConfig& config) {
  if (config.bc_left != BoundaryCondition::dirichlet0) {
    return build_snapshot(config.grid, 0.0, initial_condition(config.ic));
  }
  const double length = config.grid.x_max();
  const SpatialGrid grid(-length, length, 2 * config.grid.n_nodes() - 1);
  const PointFunction u0 = initial_condition(config.ic);
  if (config.ic.kind != InitialKind::sampled) {
    return build_snapshot(grid, 0.0, u0);
  }
  return build_snapshot(grid, 0.0, [&u0](double x) { return x < 0.0 ? -u0(-x) : u0(x); });
}

BoundsOutcome compute_bounds(const ExperimentManifest& m) {
  BoundsOutcome out;
  out.shock = shock_data(m);
  out.data_class = classify_initial_data(m.config.flux, out.shock);
  const Snapshot u0 = full_line_initial(m.config);
  switch (out.data_class) {
    case DataClass::class_I:
      out.bound = extinction_bound_class_I(m.config.flux, out.shock, u0, m.eta);
      if (!out.bound->data_in_range) {
        out.note = "initial data leave [phi_min, phi_max]; bound evaluated anyway";
      }
      break;
    case DataClass::class_II: {
      const double sign = out.shock.phi_minus > 0.0 ? 1.0 : -1.0;
      const double phi = std::min(std::abs(out.shock.phi_minus), std::abs(out.shock.phi_plus));
      std::vector<double> v(u0.u().begin(), u0.u().end());
      for (double& x : v) x *= sign;
      out.bound = extinction_bound_class_II(phi, Snapshot(u0.grid(), 0.0, std::move(v)), m.c_gn);
      break;
    }
    case DataClass::class_III:
      out.note = "class III data: no extinction bound";
      break;
  }
  return out;
}

std::optional<double> final_coalescence_time(const std::vector<Branch>& branches) {
  std::optional<double> last;
  for (const Branch& b : branches) {
    if (b.termination && (!last || *b.termination > *last)) last = b.termination;
  }
  return last;
}

}  // namespace coalesce
