#include "coalesce/interfaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace coalesce {

ZeroSet extract_zeros(std::span<const double> x, std::span<const double> u, double t,
                      double threshold) {
  if (x.size() != u.size()) {
    throw DomainError("extract_zeros: positions and values differ in length");
  }
  ZeroSet out;
  out.t = t;
  const std::size_t n = u.size();
  auto is_zero = [&](std::size_t k) { return std::abs(u[k]) <= threshold; };
  std::size_t k = 0;
  while (k < n) {
    if (is_zero(k)) {
      std::size_t end = k;
      while (end + 1 < n && is_zero(end + 1)) ++end;
      int sign = 0;
      if (end == k && k > 0 && k + 1 < n && !is_zero(k - 1) && !is_zero(k + 1)) {
        if (u[k - 1] < 0.0 && u[k + 1] > 0.0) sign = 1;
        if (u[k - 1] > 0.0 && u[k + 1] < 0.0) sign = -1;
      }
      out.zeros.push_back(end == k ? x[k] : 0.5 * (x[k] + x[end]));
      out.signs.push_back(sign);
      k = end + 1;
      continue;
    }
    if (k + 1 < n && !is_zero(k + 1) && u[k] * u[k + 1] < 0.0) {
      const double xl = x[k];
      const double xr = x[k + 1];
      double xi = (u[k] * xr - u[k + 1] * xl) / (u[k] - u[k + 1]);
      xi = std::clamp(xi, std::nextafter(xl, xr), std::nextafter(xr, xl));
      out.zeros.push_back(xi);
      out.signs.push_back(u[k] < 0.0 ? 1 : -1);
    }
    ++k;
  }
  return out;
}

ZeroSet extract_zeros(const Snapshot& snap, double threshold) {
  const std::vector<double> x = snap.grid().nodes();
  return extract_zeros(x, snap.u(), snap.t(), threshold);
}

std::vector<std::pair<double, std::size_t>> count_zeros(const InterfaceTrack& track) {
  std::vector<std::pair<double, std::size_t>> out;
  out.reserve(track.size());
  for (const ZeroSet& s : track.samples()) {
    out.emplace_back(s.t, s.zeros.size());
  }
  return out;
}

SturmResult sturm_check(const InterfaceTrack& track) {
  const auto& s = track.samples();
  for (std::size_t m = 1; m < s.size(); ++m) {
    if (s[m].zeros.size() > s[m - 1].zeros.size()) {
      return {false, s[m - 1].t, s[m].t};
    }
  }
  return {};
}

namespace {

struct Candidate {
  double distance;
  std::size_t from;
  std::size_t to;
};

// Order-preserving greedy assignment of previous positions to new ones.
std::vector<std::optional<std::size_t>> greedy_match(const std::vector<double>& prev,
                                                     const std::vector<double>& next,
                                                     double window) {
  std::vector<Candidate> cands;
  for (std::size_t i = 0; i < prev.size(); ++i) {
    for (std::size_t j = 0; j < next.size(); ++j) {
      const double d = std::abs(prev[i] - next[j]);
      if (d <= window) cands.push_back({d, i, j});
    }
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    if (a.from != b.from) return a.from < b.from;
    return a.to < b.to;
  });
  std::vector<std::optional<std::size_t>> assign(prev.size());
  std::vector<bool> taken(next.size(), false);
  for (const Candidate& c : cands) {
    if (assign[c.from] || taken[c.to]) continue;
    bool crosses = false;
    for (std::size_t i = 0; i < prev.size() && !crosses; ++i) {
      if (!assign[i]) continue;
      const std::size_t j = *assign[i];
      crosses = (i < c.from) != (j < c.to);
    }
    if (crosses) continue;
    assign[c.from] = c.to;
    taken[c.to] = true;
  }
  return assign;
}

}  // namespace

std::vector<Branch> match_tracks(const InterfaceTrack& track, double window) {
  if (!(window > 0.0)) {
    throw DomainError("match_tracks: window must be positive");
  }
  std::vector<Branch> branches;
  std::vector<std::size_t> active;  // branch index per zero of the previous sample
  std::vector<double> prev_pos;
  double prev_t = 0.0;
  for (const ZeroSet& s : track.samples()) {
    std::vector<std::size_t> now(s.zeros.size(), std::numeric_limits<std::size_t>::max());
    const auto assign = greedy_match(prev_pos, s.zeros, window);
    for (std::size_t i = 0; i < assign.size(); ++i) {
      Branch& b = branches[active[i]];
      if (assign[i]) {
        now[*assign[i]] = active[i];
      } else {
        b.termination = 0.5 * (prev_t + s.t);
      }
    }
    for (std::size_t j = 0; j < s.zeros.size(); ++j) {
      if (now[j] == std::numeric_limits<std::size_t>::max()) {
        Branch b;
        b.id = branches.size();
        now[j] = branches.size();
        branches.push_back(std::move(b));
      }
      Branch& b = branches[now[j]];
      b.t.push_back(s.t);
      b.xi.push_back(s.zeros[j]);
    }
    active = std::move(now);
    prev_pos = s.zeros;
    prev_t = s.t;
  }
  return branches;
}

}  // namespace coalesce
