#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coalesce/core.hpp"
#include "coalesce/flux.hpp"

namespace coalesce {

/// Too few usable samples for a regression.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// Fitted law log xi = c1 log(t0 - t) + c2.
struct ScalingFit {
  double t0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double residual = 0.0;  ///< sum of squared log residuals
  std::size_t n_samples = 0;
  double window_lo = 0.0;  ///< first sample time used
  double window_hi = 0.0;  ///< last sample time used
};

struct FitOptions {
  /// Candidate grid for t0. Defaults: t_last + step_of_samples up to
  /// t_last + 200 steps, spaced a tenth of a step.
  std::optional<double> t0_lo;
  std::optional<double> t0_hi;
  std::optional<double> t0_step;
  /// Samples with xi below the floor are dropped (spatial resolution).
  double window_floor = 0.05;
  /// Samples with xi above the ceiling are dropped; none when unset.
  std::optional<double> window_ceiling = 0.3;
  /// Optional time window.
  std::optional<double> t_min;
  std::optional<double> t_max;
  /// Drop samples before the final monotone decrease of xi.
  bool drop_before_last_maximum = true;
  /// One 10x finer pass around the coarse optimum.
  bool refine = true;
  /// Sample spacing; inferred as the median time difference when unset.
  std::optional<double> sample_step;
};

struct ResidualPoint {
  double t0;
  double residual;
  double c1;
  double c2;
};

struct FitReport {
  ScalingFit best;
  std::vector<ResidualPoint> curve;  ///< coarse and refined candidates, sorted by t0
};

/// Grid search over t0 with a least-squares line per candidate. Ties go to
/// the smaller t0. Throws InsufficientDataError with fewer than 5 samples
/// after windowing, DomainError on non-positive xi, ConfigError on a t0
/// grid that does not start after the last sample.
FitReport fit_scaling_law(std::span<const double> t, std::span<const double> xi,
                          const FitOptions& options = {});

/// Least-squares line y = slope x + intercept and its squared residual sum.
struct LineFit {
  double slope;
  double intercept;
  double residual;
};
LineFit least_squares_line(std::span<const double> x, std::span<const double> y);

enum class BifurcationKind { fold, pitchfork };
std::string to_string(BifurcationKind kind);

/// Offset from xi0 of one branch: sign * prefactor * (t0 - t)^power.
struct BranchLaw {
  double prefactor;
  double power;
  int sign;
};

/// Local derivatives at the coalescence point (t0, xi0).
struct LocalDerivatives {
  std::optional<double> u_xx;   ///< fold
  std::optional<double> u_xxx;  ///< pitchfork
  std::optional<double> u_tt;   ///< pitchfork middle branch
};

struct BifurcationPrediction {
  BifurcationKind kind = BifurcationKind::fold;
  double t0 = 0.0;
  double xi0 = 0.0;
  std::vector<BranchLaw> branches;     ///< outer branches, lower first
  std::optional<double> middle_slope;  ///< u_tt / (2 u_xxx)
  LocalDerivatives derivatives;

  /// Outer branch positions (lower, upper), with the middle branch between
  /// them when known. Throws DomainError for t > t0.
  std::vector<double> positions(double t) const;
  /// Middle branch position; defined on both sides of t0.
  std::optional<double> middle_position(double t) const;
  /// Leading-order u_x along the outer branches; needs u_xx (fold) or
  /// u_xxx (pitchfork).
  std::vector<double> outer_slopes(double t) const;
  /// Leading-order u_x along the middle branch (pitchfork, needs u_xxx).
  std::optional<double> middle_slope_of_u(double t) const;
  /// Leading-order u_xx along the outer branches (pitchfork, needs u_xxx).
  std::vector<double> outer_curvatures(double t) const;
  /// Leading-order u_xx along the middle branch (pitchfork, needs u_tt).
  std::optional<double> middle_curvature(double t) const;
};

BifurcationPrediction predict_bifurcation(BifurcationKind kind, double t0, double xi0,
                                          const LocalDerivatives& derivatives = {});

/// Upper bound on the time after which at most one (class I) or no
/// (class II) interface remains.
struct ExtinctionBound {
  DataClass kind = DataClass::class_I;
  double T = 0.0;
  /// Named quantities that entered the formula.
  std::vector<std::pair<std::string, double>> inputs;
  /// False when the initial data leave [phi_min, phi_max].
  bool data_in_range = true;

  /// Throws DomainError for an unknown name.
  double input(const std::string& name) const;
};

/// Default margin 0.25 * min(|phi_-|, |phi_+|).
double default_eta(const ShockData& shock);

/// Mass bound over the flux gap after the drift shift that equalises the
/// flux at phi_- and phi_+. Data with phi_+ < 0 < phi_- are mapped to the
/// standard orientation by u -> -u. Throws DomainError when a root is not
/// found on the grid or the flux gap is not positive.
ExtinctionBound extinction_bound_class_I(const FluxSpec& spec, const ShockData& shock,
                                         const Snapshot& u0,
                                         std::optional<double> eta = std::nullopt);

/// Default Gagliardo-Nirenberg constant 2^{2/3}.
double default_gagliardo_constant();

/// T = 2 phi^3 / (9 C^3 |u1|_2^2 |u1|_1) with u1 = min(2/3 phi, u0) - 2/3 phi.
/// Throws DomainError unless phi_minus > 0 and u1 is nonzero somewhere.
ExtinctionBound extinction_bound_class_II(double phi_minus, const Snapshot& u0,
                                          double c_gn = default_gagliardo_constant());

struct GagliardoCheck {
  bool holds;
  double sup_norm;  ///< |g|_inf
  double rhs;       ///< C |g'|_2^{2/3} |g|_1^{1/3}
};

/// Evaluates both sides with trapezoid norms and a centred-difference g'.
GagliardoCheck check_gagliardo(const Snapshot& g, double c_gn = default_gagliardo_constant());

}  // namespace coalesce
