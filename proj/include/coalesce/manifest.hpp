#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "coalesce/analysis.hpp"
#include "coalesce/config.hpp"
#include "coalesce/flux.hpp"

namespace coalesce {

/// One experiment: a simulation plus what to emit next to it.
struct ExperimentManifest {
  std::string name;
  SimConfig config;
  /// Output directory; relative paths are resolved against the output root.
  std::filesystem::path output;
  FitOptions fit;
  std::optional<std::size_t> fit_branch;
  /// Oracle curves written next to the run: cole-hopf, green, profile.
  std::vector<std::string> oracle_overlays;
  /// Asymptotic limits for classification and bounds; inferred when unset.
  std::optional<ShockData> shock;
  std::optional<double> eta;
  double c_gn = default_gagliardo_constant();
  bool gnuplot = false;
};

/// Sectioned key-value text: [experiment] [flux] [grid] [time] [initial]
/// [boundary] [output] [fit] [oracles] [shock] [bounds]. File references
/// are resolved against `base_dir`. Throws ConfigError or ParseError.
ExperimentManifest parse_manifest(std::istream& in, const std::filesystem::path& base_dir = {});
ExperimentManifest load_manifest(const std::filesystem::path& path);

/// Writes a manifest that parses back to the same experiment.
void write_manifest(std::ostream& out, const ExperimentManifest& m);
void write_manifest(const std::filesystem::path& path, const ExperimentManifest& m);

/// shock-a1, shock-a4, anti-a1, anti-a4.
std::vector<std::string> preset_names();
/// Throws ConfigError for an unknown name.
ExperimentManifest preset(const std::string& name);

/// A path to an existing manifest file, or a preset name.
ExperimentManifest resolve_manifest(const std::string& ref);

/// Limits at -inf and +inf: the manifest override, else the initial family.
ShockData shock_data(const ExperimentManifest& m);

}  // namespace coalesce
