#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "coalesce/core.hpp"

namespace coalesce {

/// Error function. Odd reflection is applied before evaluation.
double erf(double x);
/// Complementary error function, accurate in the far tail.
double erfc(double x);
/// Scaled complementary error function exp(x^2) erfc(x).
double erfcx(double x);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(std::size_t order);

struct QuadratureOptions {
  std::size_t order = 20;            ///< nodes per panel
  double tolerance = 1e-11;          ///< relative to the integral of |f|
  std::size_t initial_panels = 4;
  std::size_t max_panels = 1 << 16;
};

/// Composite Gauss-Legendre over [a, b], doubling the panel count until two
/// successive results agree. Throws DomainError when max_panels is reached.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& options = {});

/// Exact solution of u_t = u_xx + (u^2)_x built from an even seed chi0.
class ColeHopfState {
 public:
  /// `chi0_second_at_zero` is chi0''(0). Throws DomainError if chi0 is not
  /// nonnegative or sech*chi0 does not decay at +-40.
  ColeHopfState(PointFunction chi0, double chi0_second_at_zero, double width = 8.0,
                QuadratureOptions quadrature = {});

  /// Exact chi0' for the t = 0 evaluation of u; a centred difference is
  /// used when absent.
  ColeHopfState& with_chi0_derivative(PointFunction d);

  /// chi0 = amplitude * sech; cosh(1)^2 places the initial zero at x = 1.
  static ColeHopfState sech(double amplitude);

  const PointFunction& chi0() const noexcept { return chi0_; }
  double chi0_second_at_zero() const noexcept { return chi0_pp0_; }
  double width() const noexcept { return width_; }
  const QuadratureOptions& quadrature() const noexcept { return quadrature_; }
  double chi0_derivative(double x) const;

 private:
  PointFunction chi0_;
  PointFunction chi0_d_;
  double chi0_pp0_;
  double width_;
  QuadratureOptions quadrature_;
};

/// chi(t, x) = e^{-t}/sqrt(4 pi t) * integral chi0(y) exp(-(x-y)^2 / 4t) dy.
double cole_hopf_chi(const ColeHopfState& state, double t, double x);
double cole_hopf_chi_x(const ColeHopfState& state, double t, double x);
double cole_hopf_chi_xx(const ColeHopfState& state, double t, double x);

/// u = (tanh x + sech x * chi_x) / (1 + sech x * chi). t = 0 uses chi0 and
/// a centred derivative of it.
double cole_hopf_u(const ColeHopfState& state, double t, double x);

/// Root of 1 + chi_xx(t, 0) by bisection. Throws DomainError when
/// 1 + chi0''(0) >= 0 (no coalescence of the zeros at the origin).
double cole_hopf_t0(const ColeHopfState& state, double tolerance = 1e-8);

/// The positive zero of u(t, .) in (0, x_max], if any.
std::optional<double> cole_hopf_positive_zero(const ColeHopfState& state, double t,
                                              double x_max = 10.0);

/// Odd solution of u_t = u_xx + |u|_x with data phi*(e^{-x} - 1) for
/// x > 0, optionally translated so that it vanishes at `shift`.
struct GreenReference {
  double phi_star = 1.0;
  double shift = 0.0;

  /// Throws DomainError unless phi_star > 0.
  void validate() const;
};

/// Closed form of the reference solution; t below 1e-10 returns the data.
double green_reference_u(const GreenReference& ref, double t, double x);

/// Green's function of u_t = u_xx - u_x on x > 0 with u(t, 0) = 0.
double green_kernel(double t, double x, double y);

/// integral_{x1}^{inf} (u(t, x)/phi* + 1) dx - t for the unshifted reference.
double green_F(const GreenReference& ref, double x1, double t);
/// Large-time limit 3/2 - x1.
double green_F_limit(double x1);

struct MassPair {
  double below;   ///< integral of u - phi_minus left of xi
  double above;   ///< integral of phi_plus - u right of xi
  bool tails_settled;  ///< both ends within 1e-6 of their limits
};

/// Trapezoid masses on both sides of xi with a linear split inside its cell.
/// Throws DomainError when xi is outside the grid.
MassPair numeric_mass(const Snapshot& snap, double xi, double phi_minus, double phi_plus);

}  // namespace coalesce
