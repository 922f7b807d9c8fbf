#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coalesce/core.hpp"

namespace coalesce {

/// Raised when a tabulated flux is evaluated outside its abscissae.
class FluxRangeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Piecewise-linear table of (x, value) pairs with strictly increasing x.
class SampledTable {
 public:
  SampledTable(std::vector<double> x, std::vector<double> y);

  /// Reads CSV `x,value` (header optional). Throws ParseError with the line.
  static SampledTable load_csv(const std::filesystem::path& path);

  const std::vector<double>& x() const noexcept { return x_; }
  const std::vector<double>& y() const noexcept { return y_; }
  bool contains(double x) const noexcept { return x >= x_.front() && x <= x_.back(); }

  /// Linear interpolation; outside the range the end value is returned.
  double value(double x) const noexcept;
  /// Slope of the containing cell (right cell at interior nodes).
  double slope(double x) const noexcept;

 private:
  std::size_t cell(double x) const noexcept;

  std::vector<double> x_;
  std::vector<double> y_;
};

enum class FluxKind { modular, quadratic, regularized_modular, tabulated };

/// Flux f of u_t = u_xx + f(u)_x, optionally with a drift term c*u added.
struct FluxSpec {
  FluxKind kind = FluxKind::regularized_modular;
  double epsilon = 1e-16;
  double drift = 0.0;
  std::shared_ptr<const SampledTable> table;

  static FluxSpec modular();
  static FluxSpec quadratic();
  /// sqrt(eps^2 + u^2) - eps. Throws ConfigError unless eps > 0.
  static FluxSpec regularized(double epsilon);
  static FluxSpec tabulated(SampledTable table);

  FluxSpec with_drift(double c) const;
  std::string name() const;
};

/// f(u). Tabulated fluxes throw FluxRangeError outside the table.
double eval_flux(const FluxSpec& spec, double u);

struct ClampedValue {
  double value;
  bool out_of_range;
};
/// f(u) with out-of-range tabulated queries clamped and flagged.
ClampedValue eval_flux_clamped(const FluxSpec& spec, double u) noexcept;

/// f'(u). The modular flux returns 0 at u == 0 (see at_subdifferential_point).
double eval_flux_derivative(const FluxSpec& spec, double u);

/// True where f is not differentiable and f' returned a subgradient.
bool at_subdifferential_point(const FluxSpec& spec, double u) noexcept;

/// Asymptotic limits of the data at -infinity and +infinity.
struct ShockData {
  double phi_minus;
  double phi_plus;

  double phi_min() const noexcept { return phi_minus < phi_plus ? phi_minus : phi_plus; }
  double phi_max() const noexcept { return phi_minus < phi_plus ? phi_plus : phi_minus; }
};

/// c = (f(phi_-) - f(phi_+)) / (phi_+ - phi_-).
double rankine_hugoniot_speed(const FluxSpec& spec, const ShockData& shock);

struct EntropyResult {
  bool satisfied;
  std::optional<double> witness;  ///< first violating z
};

/// Oleinik chord condition sampled at n_samples interior points of
/// (phi_min, phi_max), each offset half a sample step from the ends.
EntropyResult check_entropy_condition(const FluxSpec& spec, const ShockData& shock,
                                      std::size_t n_samples = 10001);

enum class DataClass { class_I, class_II, class_III };

/// I: opposite signs + entropy; II: same sign; III: opposite signs, no entropy.
DataClass classify_initial_data(const FluxSpec& spec, const ShockData& shock);
std::string to_string(DataClass c);

enum class InitialKind { shock_alpha, antishock_alpha, tanh_shifted, cole_hopf_chi0, sampled };

/// Initial profile family. `parameter` is alpha, x0 or the chi0 amplitude.
struct InitialConditionSpec {
  InitialKind kind = InitialKind::shock_alpha;
  double parameter = 1.0;
  std::shared_ptr<const SampledTable> samples;
  std::string source;  ///< file the samples came from, if any

  static InitialConditionSpec shock(double alpha);
  static InitialConditionSpec antishock(double alpha);
  static InitialConditionSpec tanh_shift(double x0);
  /// chi0(x) = amplitude * sech(x); amplitude cosh(1)^2 puts the zero at x = 1.
  static InitialConditionSpec cole_hopf(double amplitude);
  static InitialConditionSpec sampled(SampledTable table, std::string source = {});
  static InitialConditionSpec sampled_file(const std::filesystem::path& path);

  std::string name() const;
};

/// Default chi0 amplitude cosh(1)^2.
double cole_hopf_default_amplitude();

/// u0 as a function of position. Throws ConfigError for invalid parameters.
PointFunction initial_condition(const InitialConditionSpec& ic);

/// Traveling wave of the modular equation u = phi(x - c t), phi(0) = 0.
class ModularProfile {
 public:
  /// Throws DomainError unless phi_- < 0 < phi_+.
  explicit ModularProfile(const ShockData& shock);

  double speed() const noexcept { return speed_; }
  double value(double x) const noexcept;
  double derivative(double x) const noexcept;
  /// One-sided second derivative; x == 0 uses the right side.
  double second_derivative(double x) const noexcept;
  double second_derivative_left(double x) const noexcept;

 private:
  ShockData shock_;
  double speed_;
  double right_rate_;
  double left_rate_;
};

ModularProfile modular_traveling_profile(const ShockData& shock);

}  // namespace coalesce
