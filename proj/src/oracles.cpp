#include "coalesce/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace coalesce {

namespace {

constexpr double kInvSqrtPi = 0.56418958354775628694807945156077;  // 1/sqrt(pi)

// erf by its Maclaurin series, for |x| < 2.
double erf_series(double x) {
  const double x2 = x * x;
  double term = x;
  double sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= -x2 / n;
    const double add = term / (2 * n + 1);
    sum += add;
    if (std::abs(add) < 1e-17 * std::abs(sum)) break;
  }
  return 2.0 * kInvSqrtPi * sum;
}

// exp(x^2) erfc(x) by continued fraction (modified Lentz), for x >= 2.
double erfcx_fraction(double x) {
  constexpr double tiny = 1e-300;
  double f = x;
  double c = f;
  double d = 0.0;
  for (int n = 1; n < 5000; ++n) {
    const double a = 0.5 * n;
    d = x + a * d;
    if (d == 0.0) d = tiny;
    d = 1.0 / d;
    c = x + a / c;
    if (c == 0.0) c = tiny;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return kInvSqrtPi / f;
}

// erfc for x >= 0.
double erfc_nonneg(double x) {
  if (x < 2.0) return 1.0 - erf_series(x);
  return std::exp(-x * x) * erfcx_fraction(x);
}

}  // namespace

double erf(double x) {
  if (std::isnan(x)) return x;
  if (x < 0.0) return -erf(-x);
  if (x < 2.0) return erf_series(x);
  return 1.0 - erfc_nonneg(x);
}

double erfc(double x) {
  if (std::isnan(x)) return x;
  if (x < 0.0) return 2.0 - erfc_nonneg(-x);
  return erfc_nonneg(x);
}

double erfcx(double x) {
  if (std::isnan(x)) return x;
  if (x < 0.0) {
    return 2.0 * std::exp(x * x) - erfcx(-x);
  }
  if (x < 2.0) return std::exp(x * x) * (1.0 - erf_series(x));
  return erfcx_fraction(x);
}

GaussRule gauss_legendre(std::size_t order) {
  if (order < 1) {
    throw DomainError("Gauss-Legendre order must be positive");
  }
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const double n = static_cast<double>(order);
  for (std::size_t i = 0; i < (order + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = z;
      for (std::size_t k = 2; k <= order; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * z * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[order - 1 - i] = z;
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  return rule;
}

namespace {

struct PanelSum {
  double value;
  double magnitude;
};

PanelSum composite(const std::function<double(double)>& f, double a, double b,
                   std::size_t panels, const GaussRule& rule) {
  const double width = (b - a) / static_cast<double>(panels);
  double sum = 0.0;
  double mag = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + static_cast<double>(p) * width;
    const double mid = lo + 0.5 * width;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double v = f(mid + 0.5 * width * rule.nodes[i]) * rule.weights[i];
      sum += v;
      mag += std::abs(v);
    }
  }
  return {0.5 * width * sum, 0.5 * std::abs(width) * mag};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& options) {
  if (a == b) return 0.0;
  const GaussRule rule = gauss_legendre(options.order);
  std::size_t panels = std::max<std::size_t>(1, options.initial_panels);
  PanelSum prev = composite(f, a, b, panels, rule);
  while (panels < options.max_panels) {
    panels *= 2;
    const PanelSum next = composite(f, a, b, panels, rule);
    const double scale = std::max(next.magnitude, 1e-300);
    if (std::abs(next.value - prev.value) <= options.tolerance * scale) {
      return next.value;
    }
    prev = next;
  }
  throw DomainError("quadrature did not converge");
}

ColeHopfState::ColeHopfState(PointFunction chi0, double chi0_second_at_zero, double width,
                             QuadratureOptions quadrature)
    : chi0_(std::move(chi0)),
      chi0_pp0_(chi0_second_at_zero),
      width_(width),
      quadrature_(quadrature) {
  if (!chi0_) {
    throw DomainError("chi0 is empty");
  }
  if (!(width > 0.0)) {
    throw DomainError("quadrature width must be positive");
  }
  for (int i = -400; i <= 400; ++i) {
    const double x = 0.1 * i;
    if (!(chi0_(x) >= 0.0)) {
      throw DomainError("chi0 must be nonnegative; fails at x = " + std::to_string(x));
    }
  }
  for (double x : {-40.0, 40.0}) {
    if (!(std::abs(chi0_(x) / std::cosh(x)) <= 1e-12)) {
      throw DomainError("sech * chi0 does not decay at |x| = 40");
    }
  }
}

ColeHopfState& ColeHopfState::with_chi0_derivative(PointFunction d) {
  chi0_d_ = std::move(d);
  return *this;
}

ColeHopfState ColeHopfState::sech(double amplitude) {
  if (!(amplitude > 0.0)) {
    throw DomainError("chi0 amplitude must be positive");
  }
  ColeHopfState state([amplitude](double y) { return amplitude / std::cosh(y); }, -amplitude);
  state.with_chi0_derivative(
      [amplitude](double y) { return -amplitude * std::tanh(y) / std::cosh(y); });
  return state;
}

double ColeHopfState::chi0_derivative(double x) const {
  if (chi0_d_) return chi0_d_(x);
  const double step = 1e-5;
  return (chi0_(x + step) - chi0_(x - step)) / (2.0 * step);
}

namespace {

// e^{-t}/sqrt(pi) * integral_{-W}^{W} chi0(x + 2 sqrt(t) s) w(s) e^{-s^2} ds
double heat_integral(const ColeHopfState& state, double t, double x,
                     const std::function<double(double)>& weight) {
  if (!(t > 0.0)) {
    throw DomainError("Cole-Hopf kernel needs t > 0");
  }
  const double spread = 2.0 * std::sqrt(t);
  const PointFunction& chi0 = state.chi0();
  auto integrand = [&](double s) { return chi0(x + spread * s) * weight(s) * std::exp(-s * s); };
  const double w = state.width();
  return std::exp(-t) * kInvSqrtPi * integrate(integrand, -w, w, state.quadrature());
}

}  // namespace

double cole_hopf_chi(const ColeHopfState& state, double t, double x) {
  return heat_integral(state, t, x, [](double) { return 1.0; });
}

double cole_hopf_chi_x(const ColeHopfState& state, double t, double x) {
  const double root_t = std::sqrt(t);
  return heat_integral(state, t, x, [root_t](double s) { return s / root_t; });
}

double cole_hopf_chi_xx(const ColeHopfState& state, double t, double x) {
  return heat_integral(state, t, x, [t](double s) { return (s * s - 0.5) / t; });
}

double cole_hopf_u(const ColeHopfState& state, double t, double x) {
  double chi = 0.0;
  double chi_x = 0.0;
  if (t == 0.0) {
    chi = state.chi0()(x);
    chi_x = state.chi0_derivative(x);
  } else {
    chi = cole_hopf_chi(state, t, x);
    chi_x = cole_hopf_chi_x(state, t, x);
  }
  const double sech = 1.0 / std::cosh(x);
  const double denom = 1.0 + sech * chi;
  if (!(denom > 0.0)) {
    throw DomainError("cosh x + chi is not positive; chi0 is invalid");
  }
  return (std::tanh(x) + sech * chi_x) / denom;
}

double cole_hopf_t0(const ColeHopfState& state, double tolerance) {
  auto g = [&](double t) { return 1.0 + cole_hopf_chi_xx(state, t, 0.0); };
  if (!(1.0 + state.chi0_second_at_zero() < 0.0)) {
    throw DomainError("1 + chi0''(0) >= 0: the zeros at the origin do not coalesce");
  }
  double lo = 0.0;
  double hi = 0.125;
  while (g(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e4) {
      throw DomainError("no sign change of 1 + chi_xx(t, 0) found");
    }
  }
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::optional<double> cole_hopf_positive_zero(const ColeHopfState& state, double t,
                                              double x_max) {
  const double step = 0.01;
  double x_prev = step;
  double u_prev = cole_hopf_u(state, t, x_prev);
  for (double x = 2.0 * step; x <= x_max + 0.5 * step; x += step) {
    const double u = cole_hopf_u(state, t, x);
    if (u_prev * u <= 0.0) {
      double lo = x_prev;
      double hi = x;
      double u_lo = u_prev;
      for (int it = 0; it < 100 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double um = cole_hopf_u(state, t, mid);
        if ((um < 0.0) == (u_lo < 0.0) && um != 0.0) {
          lo = mid;
          u_lo = um;
        } else {
          hi = mid;
        }
      }
      return 0.5 * (lo + hi);
    }
    x_prev = x;
    u_prev = u;
  }
  return std::nullopt;
}

void GreenReference::validate() const {
  if (!(phi_star > 0.0)) {
    throw DomainError("phi_star must be positive");
  }
}

namespace {

// e^a erfc(b) without overflow.
double exp_erfc(double a, double b) {
  if (b >= 0.0) return std::exp(a - b * b) * erfcx(b);
  return std::exp(a) * erfc(b);
}

// Unshifted reference for x >= 0, in units of phi*.
double reference_half_line(double t, double x) {
  if (t < 1e-10) return std::expm1(-x);
  const double s = 2.0 * std::sqrt(t);
  return 0.5 * (exp_erfc(x, (t + x) / s) - erfc((t - x) / s) + exp_erfc(2.0 * t - x, (3.0 * t - x) / s) -
                exp_erfc(2.0 * t + 2.0 * x, (3.0 * t + x) / s));
}

}  // namespace

double green_reference_u(const GreenReference& ref, double t, double x) {
  ref.validate();
  if (!(t >= 0.0)) {
    throw DomainError("reference solution needs t >= 0");
  }
  const double z = x - ref.shift;
  const double v = reference_half_line(t, std::abs(z));
  return ref.phi_star * (z < 0.0 ? -v : v);
}

double green_kernel(double t, double x, double y) {
  const double a = x - y - t;
  const double b = x + y - t;
  return (std::exp(-a * a / (4.0 * t)) - std::exp(-y - b * b / (4.0 * t))) /
         std::sqrt(4.0 * std::numbers::pi * t);
}

double green_F(const GreenReference& ref, double x1, double t) {
  ref.validate();
  if (!(t > 0.0)) {
    throw DomainError("F(t) needs t > 0");
  }
  const double s = 2.0 * std::sqrt(t);
  const double d = x1 - t;
  const double sum = 6.0 - 4.0 * x1 - (2.0 * t + 3.0 - 2.0 * x1) * erfc((t - x1) / s) +
                     2.0 * exp_erfc(2.0 * t - x1, (3.0 * t - x1) / s) -
                     2.0 * exp_erfc(x1, (x1 + t) / s) +
                     exp_erfc(2.0 * (x1 + t), (x1 + 3.0 * t) / s) +
                     4.0 * std::sqrt(t / std::numbers::pi) * std::exp(-d * d / (4.0 * t));
  return 0.25 * sum;
}

double green_F_limit(double x1) { return 1.5 - x1; }

MassPair numeric_mass(const Snapshot& snap, double xi, double phi_minus, double phi_plus) {
  const SpatialGrid& grid = snap.grid();
  if (!(xi >= grid.x_min() && xi <= grid.x_max())) {
    throw DomainError("xi lies outside the grid");
  }
  const auto u = snap.u();
  const std::size_t n = u.size();
  std::size_t cell = static_cast<std::size_t>((xi - grid.x_min()) / grid.h());
  cell = std::min(cell, n - 2);
  const double xl = grid.node(cell);
  const double xr = grid.node(cell + 1);
  const double frac = std::clamp((xi - xl) / (xr - xl), 0.0, 1.0);
  const double u_xi = u[cell] + frac * (u[cell + 1] - u[cell]);

  double below = 0.0;
  for (std::size_t k = 0; k < cell; ++k) {
    below += 0.5 * grid.h() * (u[k] + u[k + 1] - 2.0 * phi_minus);
  }
  below += 0.5 * (xi - xl) * (u[cell] + u_xi - 2.0 * phi_minus);

  double above = 0.5 * (xr - xi) * (2.0 * phi_plus - u_xi - u[cell + 1]);
  for (std::size_t k = cell + 1; k + 1 < n; ++k) {
    above += 0.5 * grid.h() * (2.0 * phi_plus - u[k] - u[k + 1]);
  }
  const bool settled =
      std::abs(u.front() - phi_minus) <= 1e-6 && std::abs(u.back() - phi_plus) <= 1e-6;
  return {below, above, settled};
}

}  // namespace coalesce
