#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "coalesce/core.hpp"

namespace coalesce {

/// Zeros of the samples `u` at positions `x` (same length, x increasing).
/// Sign changes are resolved by straight-line interpolation; nodes with
/// |u| <= threshold count as exact zeros and a run of them collapses to
/// its midpoint with sign 0.
ZeroSet extract_zeros(std::span<const double> x, std::span<const double> u, double t,
                      double threshold = 0.0);
ZeroSet extract_zeros(const Snapshot& snap, double threshold = 0.0);

/// (t, number of zeros) per sample.
std::vector<std::pair<double, std::size_t>> count_zeros(const InterfaceTrack& track);

struct SturmResult {
  bool ok = true;
  double t_before = 0.0;  ///< last time before the first increase
  double t_after = 0.0;   ///< time at which the count increased
};

/// The zero count must never increase with time.
SturmResult sturm_check(const InterfaceTrack& track);

/// One continuous interface branch.
struct Branch {
  std::size_t id = 0;
  std::vector<double> t;
  std::vector<double> xi;
  /// Midpoint between the last sample with the zero and the first without.
  std::optional<double> termination;
};

/// Greedy nearest-neighbour matching of zeros between consecutive samples.
/// Pairs farther apart than `window` are not matched and branches never
/// cross. Branch ids follow creation order (left to right at equal times).
std::vector<Branch> match_tracks(const InterfaceTrack& track, double window);

}  // namespace coalesce
