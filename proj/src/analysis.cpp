#include "coalesce/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "coalesce/interfaces.hpp"
#include "coalesce/oracles.hpp"

namespace coalesce {

LineFit least_squares_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 2) {
    throw InsufficientDataError("line fit needs at least two paired samples");
  }
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) {
    throw DomainError("line fit abscissae are all equal");
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - slope * x[i] - intercept;
    res += r * r;
  }
  return {slope, intercept, res};
}

namespace {

double median_step(std::span<const double> t) {
  std::vector<double> d;
  d.reserve(t.size());
  for (std::size_t i = 1; i < t.size(); ++i) d.push_back(t[i] - t[i - 1]);
  if (d.empty()) {
    throw InsufficientDataError("cannot infer the sample spacing from one sample");
  }
  auto mid = d.begin() + static_cast<std::ptrdiff_t>(d.size() / 2);
  std::nth_element(d.begin(), mid, d.end());
  return *mid;
}

struct Candidate {
  ResidualPoint point;
  bool valid;
};

Candidate evaluate(double t0, std::span<const double> t, std::span<const double> log_xi,
                   std::vector<double>& scratch) {
  scratch.resize(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double gap = t0 - t[i];
    if (!(gap > 0.0)) return {{t0, 0.0, 0.0, 0.0}, false};
    scratch[i] = std::log(gap);
  }
  const LineFit fit = least_squares_line(scratch, log_xi);
  return {{t0, fit.residual, fit.slope, fit.intercept}, true};
}

}  // namespace

FitReport fit_scaling_law(std::span<const double> t, std::span<const double> xi,
                          const FitOptions& options) {
  if (t.size() != xi.size()) {
    throw DomainError("fit: times and positions differ in length");
  }
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (!(t[i] > t[i - 1])) {
      throw DomainError("fit: sample times must increase strictly");
    }
  }

  std::vector<std::size_t> in_time;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (options.t_min && t[i] < *options.t_min) continue;
    if (options.t_max && t[i] > *options.t_max) continue;
    in_time.push_back(i);
  }
  std::size_t start = 0;
  if (options.drop_before_last_maximum && !in_time.empty()) {
    start = in_time.size() - 1;
    while (start > 0 && xi[in_time[start - 1]] > xi[in_time[start]]) --start;
  }

  std::vector<double> ts;
  std::vector<double> log_xi;
  for (std::size_t j = start; j < in_time.size(); ++j) {
    const std::size_t i = in_time[j];
    if (xi[i] < options.window_floor) continue;
    if (options.window_ceiling && xi[i] > *options.window_ceiling) continue;
    if (!(xi[i] > 0.0)) {
      throw DomainError("fit: non-positive interface position at t = " + std::to_string(t[i]));
    }
    ts.push_back(t[i]);
    log_xi.push_back(std::log(xi[i]));
  }
  if (ts.size() < 5) {
    throw InsufficientDataError("fit needs at least 5 samples in the window, found " +
                                std::to_string(ts.size()));
  }

  const double t_last = ts.back();
  const double tau = options.sample_step ? *options.sample_step : median_step(t);
  if (!(tau > 0.0)) {
    throw ConfigError("fit: sample step must be positive");
  }
  const double lo = options.t0_lo.value_or(t_last + tau);
  const double hi = options.t0_hi.value_or(t_last + 200.0 * tau);
  const double step = options.t0_step.value_or(0.1 * tau);
  if (!(lo > t_last)) {
    throw ConfigError("fit: t0 grid must start after the last sample time");
  }
  if (!(hi >= lo) || !(step > 0.0)) {
    throw ConfigError("fit: t0 grid needs hi >= lo and a positive step");
  }
  const double count = std::floor((hi - lo) / step + 1e-9) + 1.0;
  if (count > 1e7) {
    throw ConfigError("fit: t0 grid has too many candidates");
  }

  FitReport report;
  std::vector<double> scratch;
  std::optional<ResidualPoint> best;
  auto consider = [&](double t0) {
    const Candidate c = evaluate(t0, ts, log_xi, scratch);
    if (!c.valid) return;
    report.curve.push_back(c.point);
    if (!best || c.point.residual < best->residual ||
        (c.point.residual == best->residual && c.point.t0 < best->t0)) {
      best = c.point;
    }
  };
  const auto n_coarse = static_cast<std::size_t>(count);
  for (std::size_t k = 0; k < n_coarse; ++k) {
    consider(lo + static_cast<double>(k) * step);
  }
  if (options.refine && best) {
    const double centre = best->t0;
    const double fine = 0.1 * step;
    for (int k = -10; k <= 10; ++k) {
      if (k == 0) continue;
      const double t0 = centre + k * fine;
      if (t0 > t_last) consider(t0);
    }
  }
  std::sort(report.curve.begin(), report.curve.end(),
            [](const ResidualPoint& a, const ResidualPoint& b) { return a.t0 < b.t0; });
  report.best = {best->t0, best->c1, best->c2, best->residual, ts.size(), ts.front(), ts.back()};
  return report;
}

std::string to_string(BifurcationKind kind) {
  return kind == BifurcationKind::fold ? "fold" : "pitchfork";
}

std::vector<double> BifurcationPrediction::positions(double t) const {
  if (t > t0) {
    throw DomainError("outer branches do not exist after t0");
  }
  std::vector<double> out;
  for (const BranchLaw& b : branches) {
    out.push_back(xi0 + b.sign * b.prefactor * std::pow(t0 - t, b.power));
  }
  if (const auto mid = middle_position(t)) {
    out.insert(out.begin() + 1, *mid);
  }
  return out;
}

std::optional<double> BifurcationPrediction::middle_position(double t) const {
  if (kind != BifurcationKind::pitchfork || !middle_slope) return std::nullopt;
  return xi0 + *middle_slope * (t0 - t);
}

std::vector<double> BifurcationPrediction::outer_slopes(double t) const {
  if (t > t0) {
    throw DomainError("outer branches do not exist after t0");
  }
  if (kind == BifurcationKind::fold) {
    if (!derivatives.u_xx) throw DomainError("fold slope law needs u_xx");
    const double r = std::sqrt(2.0 * (t0 - t)) * *derivatives.u_xx;
    return {-r, r};
  }
  if (!derivatives.u_xxx) throw DomainError("pitchfork slope law needs u_xxx");
  const double s = 2.0 * *derivatives.u_xxx * (t0 - t);
  return {s, s};
}

std::optional<double> BifurcationPrediction::middle_slope_of_u(double t) const {
  if (kind != BifurcationKind::pitchfork || !derivatives.u_xxx) return std::nullopt;
  return *derivatives.u_xxx * (t - t0);
}

std::vector<double> BifurcationPrediction::outer_curvatures(double t) const {
  if (t > t0) {
    throw DomainError("outer branches do not exist after t0");
  }
  if (kind != BifurcationKind::pitchfork || !derivatives.u_xxx) {
    throw DomainError("curvature law needs a pitchfork with u_xxx");
  }
  const double r = *derivatives.u_xxx * std::sqrt(6.0 * (t0 - t));
  return {-r, r};
}

std::optional<double> BifurcationPrediction::middle_curvature(double t) const {
  if (kind != BifurcationKind::pitchfork || !derivatives.u_tt) return std::nullopt;
  return 0.5 * *derivatives.u_tt * (t - t0);
}

BifurcationPrediction predict_bifurcation(BifurcationKind kind, double t0, double xi0,
                                          const LocalDerivatives& derivatives) {
  BifurcationPrediction p;
  p.kind = kind;
  p.t0 = t0;
  p.xi0 = xi0;
  p.derivatives = derivatives;
  const double prefactor = kind == BifurcationKind::fold ? std::sqrt(2.0) : std::sqrt(6.0);
  p.branches = {{prefactor, 0.5, -1}, {prefactor, 0.5, 1}};
  if (kind == BifurcationKind::pitchfork && derivatives.u_tt && derivatives.u_xxx) {
    if (*derivatives.u_xxx == 0.0) {
      throw DomainError("pitchfork needs u_xxx != 0");
    }
    p.middle_slope = *derivatives.u_tt / (2.0 * *derivatives.u_xxx);
  }
  return p;
}

double ExtinctionBound::input(const std::string& name) const {
  for (const auto& [key, value] : inputs) {
    if (key == name) return value;
  }
  throw DomainError("extinction bound has no input named " + name);
}

double default_eta(const ShockData& shock) {
  return 0.25 * std::min(std::abs(shock.phi_minus), std::abs(shock.phi_plus));
}

namespace {

// Integral of `values` over [a, b] inside the grid, linear between nodes.
double integrate_piecewise(const SpatialGrid& grid, std::span<const double> values, double a,
                           double b) {
  const std::vector<double> x = grid.nodes();
  auto value_at = [&](double p) {
    std::size_t cell = static_cast<std::size_t>((p - grid.x_min()) / grid.h());
    cell = std::min(cell, x.size() - 2);
    const double frac = (p - x[cell]) / (x[cell + 1] - x[cell]);
    return values[cell] + frac * (values[cell + 1] - values[cell]);
  };
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < x.size(); ++k) {
    const double lo = std::max(a, x[k]);
    const double hi = std::min(b, x[k + 1]);
    if (!(hi > lo)) continue;
    total += 0.5 * (hi - lo) * (value_at(lo) + value_at(hi));
  }
  return total;
}

}  // namespace

ExtinctionBound extinction_bound_class_I(const FluxSpec& spec, const ShockData& shock,
                                         const Snapshot& u0, std::optional<double> eta) {
  if (!(shock.phi_minus * shock.phi_plus < 0.0)) {
    throw DomainError("class I bound needs limits of opposite sign");
  }
  // Work in the orientation phi_- < 0 < phi_+; otherwise use v = -u, g(v) = -f(-v).
  const bool flip = shock.phi_minus > 0.0;
  const double sgn = flip ? -1.0 : 1.0;
  const double pm = sgn * shock.phi_minus;
  const double pp = sgn * shock.phi_plus;
  auto flux = [&](double v) { return sgn * eval_flux(spec, sgn * v); };

  const double drift = (flux(pm) - flux(pp)) / (pp - pm);
  auto shifted = [&](double v) { return flux(v) + drift * v; };
  const double gap = shifted(pp) - shifted(0.0);
  if (!(gap > 0.0)) {
    throw DomainError("flux gap f(phi_+) - f(0) is not positive after the drift shift");
  }
  const double margin = eta.value_or(default_eta(shock));
  if (!(margin > 0.0 && margin < std::min(std::abs(pm), std::abs(pp)))) {
    throw DomainError("eta must lie in (0, min|phi_+-|)");
  }

  const SpatialGrid& grid = u0.grid();
  const std::vector<double> x = grid.nodes();
  std::vector<double> v(u0.u().begin(), u0.u().end());
  for (double& value : v) value *= sgn;

  std::vector<double> shifted_plus(v.size());
  std::vector<double> shifted_minus(v.size());
  bool in_range = true;
  for (std::size_t k = 0; k < v.size(); ++k) {
    shifted_plus[k] = v[k] - pp + margin;
    shifted_minus[k] = v[k] - pm - margin;
    if (v[k] < pm - 1e-12 || v[k] > pp + 1e-12) in_range = false;
  }
  const ZeroSet plus_roots = extract_zeros(x, shifted_plus, 0.0);
  const ZeroSet minus_roots = extract_zeros(x, shifted_minus, 0.0);
  if (plus_roots.zeros.empty() || minus_roots.zeros.empty()) {
    throw DomainError("u0 does not reach phi_+- -+ eta on the grid; domain too small");
  }
  const double xi_plus = plus_roots.zeros.back();
  const double xi_minus = minus_roots.zeros.front();

  std::vector<double> below(v.size());
  std::vector<double> above(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    below[k] = v[k] - pm;
    above[k] = pp - v[k];
  }
  const double m1 = integrate_piecewise(grid, below, grid.x_min(), xi_plus);
  const double m2 = integrate_piecewise(grid, above, xi_minus, grid.x_max());

  ExtinctionBound out;
  out.kind = DataClass::class_I;
  out.T = std::max(m1, m2) / gap;
  out.data_in_range = in_range;
  out.inputs = {{"drift", drift},        {"flux_gap", gap},  {"eta", margin},
                {"xi_plus", xi_plus},    {"xi_minus", xi_minus},
                {"mass_below", m1},      {"mass_above", m2}, {"orientation", sgn}};
  return out;
}

double default_gagliardo_constant() { return std::cbrt(4.0); }

ExtinctionBound extinction_bound_class_II(double phi_minus, const Snapshot& u0, double c_gn) {
  if (!(phi_minus > 0.0)) {
    throw DomainError("class II bound needs phi_- > 0");
  }
  if (!(c_gn > 0.0)) {
    throw DomainError("Gagliardo-Nirenberg constant must be positive");
  }
  const double level = 2.0 * phi_minus / 3.0;
  std::vector<double> abs_u1(u0.size());
  std::vector<double> sq_u1(u0.size());
  for (std::size_t k = 0; k < u0.size(); ++k) {
    const double u1 = std::min(level, u0[k]) - level;
    abs_u1[k] = std::abs(u1);
    sq_u1[k] = u1 * u1;
  }
  const double l1 = trapezoid(u0.grid(), abs_u1);
  const double l2sq = trapezoid(u0.grid(), sq_u1);
  if (!(l1 > 0.0) || !(l2sq > 0.0)) {
    throw DomainError("u0 never dips below 2/3 phi_-; no deficit to bound");
  }
  ExtinctionBound out;
  out.kind = DataClass::class_II;
  out.T = 2.0 * phi_minus * phi_minus * phi_minus / (9.0 * c_gn * c_gn * c_gn * l2sq * l1);
  out.inputs = {{"phi_minus", phi_minus}, {"c_gn", c_gn}, {"l1", l1}, {"l2_squared", l2sq}};
  return out;
}

GagliardoCheck check_gagliardo(const Snapshot& g, double c_gn) {
  const auto u = g.u();
  const std::size_t n = u.size();
  const double h = g.grid().h();
  double sup = 0.0;
  std::vector<double> abs_g(n);
  std::vector<double> dsq(n);
  for (std::size_t k = 0; k < n; ++k) {
    sup = std::max(sup, std::abs(u[k]));
    abs_g[k] = std::abs(u[k]);
    double d = 0.0;
    if (k == 0) {
      d = (u[1] - u[0]) / h;
    } else if (k + 1 == n) {
      d = (u[n - 1] - u[n - 2]) / h;
    } else {
      d = (u[k + 1] - u[k - 1]) / (2.0 * h);
    }
    dsq[k] = d * d;
  }
  const double l1 = trapezoid(g.grid(), abs_g);
  const double d2 = std::sqrt(trapezoid(g.grid(), dsq));
  const double rhs = c_gn * std::cbrt(d2 * d2) * std::cbrt(l1);
  return {sup <= rhs, sup, rhs};
}

}  // namespace coalesce
