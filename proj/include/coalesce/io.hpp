#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "coalesce/analysis.hpp"
#include "coalesce/config.hpp"
#include "coalesce/core.hpp"
#include "coalesce/interfaces.hpp"

namespace coalesce {

/// Shortest text that reads back to the same double (17 significant digits).
std::string format_double(double v);
/// Strict parse of a whole field; throws ParseError with `line`.
double parse_double_field(const std::string& field, std::size_t line);

/// `# t = ...` line, then `x,u` rows.
void write_snapshot_csv(std::ostream& out, const Snapshot& snap);
void write_snapshot_csv(const std::filesystem::path& path, const Snapshot& snap);
/// Rebuilds the grid from the first and last x. Throws ParseError.
Snapshot read_snapshot_csv(std::istream& in);
Snapshot read_snapshot_csv(const std::filesystem::path& path);

/// Long format `t,branch_id,xi`, rows ordered by t then xi.
void write_track_csv(std::ostream& out, const std::vector<Branch>& branches);
void write_track_csv(const std::filesystem::path& path, const std::vector<Branch>& branches);

/// Branch samples keyed by id.
struct BranchSeries {
  std::vector<double> t;
  std::vector<double> xi;
};
std::map<std::size_t, BranchSeries> read_track_csv(std::istream& in);
std::map<std::size_t, BranchSeries> read_track_csv(const std::filesystem::path& path);

/// Branch the fitter uses by default: the one with the most samples among
/// branches that stay strictly positive; ties go to the smaller id.
/// Throws InsufficientDataError when no branch qualifies.
std::size_t primary_branch(const std::map<std::size_t, BranchSeries>& branches);
std::size_t primary_branch(const std::vector<Branch>& branches);

/// Header `t0,c1,c2,residual,n_samples,window_lo,window_hi` and one row.
void write_fit_csv(const std::filesystem::path& path, const ScalingFit& fit);
ScalingFit read_fit_csv(const std::filesystem::path& path);
/// Header `t0,residual,c1,c2`.
void write_curve_csv(const std::filesystem::path& path, const std::vector<ResidualPoint>& curve);

/// One `snapshot_<step>.csv` per stored snapshot plus `index.csv`
/// (`step,t,file`). Returns the snapshot paths in order.
std::vector<std::filesystem::path> write_trajectory_dir(const std::filesystem::path& dir,
                                                        const Trajectory& trajectory);

/// Name of the snapshot file for a step index.
std::string snapshot_file_name(std::size_t step);

}  // namespace coalesce
