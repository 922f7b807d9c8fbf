#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "coalesce/analysis.hpp"
#include "coalesce/interfaces.hpp"
#include "coalesce/manifest.hpp"
#include "coalesce/solver.hpp"

namespace coalesce {

/// Matching window for interface branches: 20 grid cells.
double default_match_window(const SpatialGrid& grid);

struct RunOutcome {
  RunResult run;
  std::vector<Branch> branches;
  double seconds = 0.0;  ///< wall time of the simulation
};

/// Runs the manifest's simulation and splits the track into branches.
RunOutcome simulate(const ExperimentManifest& m);

struct BranchFit {
  std::size_t branch = 0;
  FitReport report;
};

/// Fits `branch` (or the primary branch) of a branch list.
BranchFit fit_branches(const std::vector<Branch>& branches, const FitOptions& options,
                       std::optional<std::size_t> branch = std::nullopt);

/// Initial data on [-L, L]: half-line configurations are extended oddly.
Snapshot full_line_initial(const SimConfig& config);

struct BoundsOutcome {
  DataClass data_class = DataClass::class_I;
  ShockData shock{};
  std::optional<ExtinctionBound> bound;  ///< none for class III
  std::string note;
};

BoundsOutcome compute_bounds(const ExperimentManifest& m);

/// Latest branch termination time, if any branch terminated.
std::optional<double> final_coalescence_time(const std::vector<Branch>& branches);

}  // namespace coalesce
