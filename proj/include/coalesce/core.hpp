#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace coalesce {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user-supplied configuration (bad grid, bad parameters, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain where an operation is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Uniform 1-D grid with n_nodes points spanning [x_min, x_max].
class SpatialGrid {
 public:
  /// Throws ConfigError unless x_max > x_min and n_nodes >= 3.
  SpatialGrid(double x_min, double x_max, std::size_t n_nodes);

  /// Grid with spacing as close as possible to `h` (rounded node count).
  static SpatialGrid with_spacing(double x_min, double x_max, double h);

  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  std::size_t n_nodes() const noexcept { return n_nodes_; }
  std::size_t n_cells() const noexcept { return n_nodes_ - 1; }
  double h() const noexcept { return h_; }

  /// Node k. Evaluated from the nearer endpoint, so a grid on [-L, L]
  /// satisfies node(k) == -node(n-1-k) bit-exactly.
  double node(std::size_t k) const noexcept;
  std::vector<double> nodes() const;

  bool operator==(const SpatialGrid&) const = default;

 private:
  double x_min_;
  double x_max_;
  std::size_t n_nodes_;
  double h_;
};

/// Uniform time grid: n_steps steps of size tau up to t_end.
class TimeGrid {
 public:
  TimeGrid(double t_end, std::size_t n_steps);
  /// Step count chosen so that tau is as close as possible to `tau`.
  static TimeGrid with_step(double t_end, double tau);

  double t_end() const noexcept { return t_end_; }
  std::size_t n_steps() const noexcept { return n_steps_; }
  double tau() const noexcept { return tau_; }
  double time(std::size_t m) const noexcept { return static_cast<double>(m) * tau_; }

 private:
  double t_end_;
  std::size_t n_steps_;
  double tau_;
};

/// Solution values on a grid at one instant. Immutable.
class Snapshot {
 public:
  /// Throws DomainError naming the first non-finite node.
  Snapshot(SpatialGrid grid, double t, std::vector<double> u);

  const SpatialGrid& grid() const noexcept { return grid_; }
  double t() const noexcept { return t_; }
  std::span<const double> u() const noexcept { return u_; }
  double operator[](std::size_t k) const noexcept { return u_[k]; }
  std::size_t size() const noexcept { return u_.size(); }

 private:
  SpatialGrid grid_;
  double t_;
  std::vector<double> u_;
};

using PointFunction = std::function<double(double)>;

/// Samples `f` on every node of `grid`.
Snapshot build_snapshot(const SpatialGrid& grid, double t, const PointFunction& f);

/// Zeros of one profile at time t. signs[i] is +1 for a -/+ crossing,
/// -1 for +/- and 0 for a grazing or unresolved zero.
struct ZeroSet {
  double t = 0.0;
  std::vector<double> zeros;
  std::vector<int> signs;
};

/// Time series of zero sets with strictly increasing times.
class InterfaceTrack {
 public:
  InterfaceTrack() = default;

  /// Throws DomainError if t does not increase or zeros are not increasing.
  void append(ZeroSet sample);

  const std::vector<ZeroSet>& samples() const noexcept { return samples_; }
  bool empty() const noexcept { return samples_.empty(); }
  std::size_t size() const noexcept { return samples_.size(); }

 private:
  std::vector<ZeroSet> samples_;
};

/// Trapezoid integral of nodal values over the whole grid.
double trapezoid(const SpatialGrid& grid, std::span<const double> values);

}  // namespace coalesce
