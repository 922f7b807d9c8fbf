#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "coalesce/core.hpp"
#include "coalesce/flux.hpp"

namespace coalesce {

enum class BoundaryCondition { dirichlet0, neumann };

std::string to_string(BoundaryCondition bc);

/// Everything needed to reproduce one simulation.
struct SimConfig {
  FluxSpec flux = FluxSpec::regularized(1e-16);
  SpatialGrid grid{0.0, 5.0, 501};
  TimeGrid time{0.3, 600};
  InitialConditionSpec ic = InitialConditionSpec::shock(1.0);
  BoundaryCondition bc_left = BoundaryCondition::dirichlet0;
  BoundaryCondition bc_right = BoundaryCondition::neumann;
  std::size_t snapshot_stride = 100;

  /// Throws ConfigError on an inconsistent configuration, including a
  /// Dirichlet left end without x_min == 0 and spatially odd initial data.
  void validate() const;
};

/// Stored snapshots of one run, in time order, all on the config grid.
class Trajectory {
 public:
  explicit Trajectory(SimConfig config) : config_(std::move(config)) {}

  /// Throws DomainError on a non-increasing time or a foreign grid.
  void append(Snapshot snap, std::size_t step);

  const SimConfig& config() const noexcept { return config_; }
  const std::vector<Snapshot>& snapshots() const noexcept { return snapshots_; }
  const Snapshot& front() const { return snapshots_.front(); }
  const Snapshot& back() const { return snapshots_.back(); }
  std::size_t size() const noexcept { return snapshots_.size(); }
  /// Step index of each stored snapshot.
  const std::vector<std::size_t>& steps() const noexcept { return steps_; }

 private:
  SimConfig config_;
  std::vector<Snapshot> snapshots_;
  std::vector<std::size_t> steps_;
};

}  // namespace coalesce
