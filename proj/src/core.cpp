#include "coalesce/core.hpp"

#include <algorithm>
#include <cmath>

namespace coalesce {

SpatialGrid::SpatialGrid(double x_min, double x_max, std::size_t n_nodes)
    : x_min_(x_min), x_max_(x_max), n_nodes_(n_nodes), h_(0.0) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min)) {
    throw ConfigError("grid requires finite x_min < x_max");
  }
  if (n_nodes < 3) {
    throw ConfigError("grid requires at least 3 nodes");
  }
  h_ = (x_max - x_min) / static_cast<double>(n_nodes - 1);
}

SpatialGrid SpatialGrid::with_spacing(double x_min, double x_max, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw ConfigError("grid spacing must be positive");
  }
  const double cells = std::round((x_max - x_min) / h);
  if (!(cells >= 2.0)) {
    throw ConfigError("grid spacing too coarse for the interval");
  }
  return SpatialGrid(x_min, x_max, static_cast<std::size_t>(cells) + 1);
}

double SpatialGrid::node(std::size_t k) const noexcept {
  const std::size_t last = n_nodes_ - 1;
  if (2 * k <= last) {
    return x_min_ + static_cast<double>(k) * h_;
  }
  return x_max_ - static_cast<double>(last - k) * h_;
}

std::vector<double> SpatialGrid::nodes() const {
  std::vector<double> x(n_nodes_);
  for (std::size_t k = 0; k < n_nodes_; ++k) {
    x[k] = node(k);
  }
  return x;
}

TimeGrid::TimeGrid(double t_end, std::size_t n_steps)
    : t_end_(t_end), n_steps_(n_steps), tau_(0.0) {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw ConfigError("time grid requires t_end > 0");
  }
  if (n_steps < 1) {
    throw ConfigError("time grid requires at least one step");
  }
  tau_ = t_end / static_cast<double>(n_steps);
}

TimeGrid TimeGrid::with_step(double t_end, double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw ConfigError("time step must be positive");
  }
  const double steps = std::max(1.0, std::round(t_end / tau));
  return TimeGrid(t_end, static_cast<std::size_t>(steps));
}

Snapshot::Snapshot(SpatialGrid grid, double t, std::vector<double> u)
    : grid_(grid), t_(t), u_(std::move(u)) {
  if (u_.size() != grid_.n_nodes()) {
    throw DomainError("snapshot has " + std::to_string(u_.size()) + " values for " +
                      std::to_string(grid_.n_nodes()) + " nodes");
  }
  for (std::size_t k = 0; k < u_.size(); ++k) {
    if (!std::isfinite(u_[k])) {
      throw DomainError("non-finite value at node " + std::to_string(k));
    }
  }
}

Snapshot build_snapshot(const SpatialGrid& grid, double t, const PointFunction& f) {
  std::vector<double> u(grid.n_nodes());
  for (std::size_t k = 0; k < u.size(); ++k) {
    u[k] = f(grid.node(k));
  }
  return Snapshot(grid, t, std::move(u));
}

void InterfaceTrack::append(ZeroSet sample) {
  if (!samples_.empty() && !(sample.t > samples_.back().t)) {
    throw DomainError("interface track times must increase strictly");
  }
  if (sample.signs.size() != sample.zeros.size()) {
    throw DomainError("zero set signs and zeros differ in length");
  }
  for (std::size_t i = 1; i < sample.zeros.size(); ++i) {
    if (!(sample.zeros[i] > sample.zeros[i - 1])) {
      throw DomainError("zeros within a sample must increase strictly");
    }
  }
  samples_.push_back(std::move(sample));
}

double trapezoid(const SpatialGrid& grid, std::span<const double> values) {
  if (values.size() != grid.n_nodes()) {
    throw DomainError("trapezoid: value count does not match grid");
  }
  double sum = 0.5 * (values.front() + values.back());
  for (std::size_t k = 1; k + 1 < values.size(); ++k) {
    sum += values[k];
  }
  return sum * grid.h();
}

}  // namespace coalesce
