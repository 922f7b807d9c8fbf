#include "coalesce/flux.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace coalesce {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

bool parse_double(const std::string& s, double& out) {
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

SampledTable::SampledTable(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size()) {
    throw ConfigError("sampled table: abscissae and values differ in length");
  }
  if (x_.size() < 2) {
    throw ConfigError("sampled table needs at least two points");
  }
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!std::isfinite(x_[i]) || !std::isfinite(y_[i])) {
      throw ConfigError("sampled table: non-finite entry at index " + std::to_string(i));
    }
    if (i > 0 && !(x_[i] > x_[i - 1])) {
      throw ConfigError("sampled table: abscissae must increase strictly (index " +
                        std::to_string(i) + ")");
    }
  }
}

SampledTable SampledTable::load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open sampled table " + path.string());
  }
  std::vector<double> xs;
  std::vector<double> ys;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string row = trim(line);
    if (row.empty() || row.front() == '#') continue;
    const auto comma = row.find(',');
    if (comma == std::string::npos) {
      throw ParseError("expected `x,value`", line_no);
    }
    double x = 0.0;
    double y = 0.0;
    const bool ok = parse_double(trim(row.substr(0, comma)), x) &&
                    parse_double(trim(row.substr(comma + 1)), y);
    if (!ok) {
      if (xs.empty() && line_no == 1) continue;  // header
      throw ParseError("malformed number", line_no);
    }
    if (!xs.empty() && !(x > xs.back())) {
      throw ParseError("abscissae must increase strictly", line_no);
    }
    xs.push_back(x);
    ys.push_back(y);
  }
  if (xs.size() < 2) {
    throw ParseError("need at least two samples", line_no);
  }
  return SampledTable(std::move(xs), std::move(ys));
}

std::size_t SampledTable::cell(double x) const noexcept {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t k = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  return std::min(k, x_.size() - 2);
}

double SampledTable::value(double x) const noexcept {
  if (x <= x_.front()) return y_.front();
  if (x >= x_.back()) return y_.back();
  const std::size_t k = cell(x);
  const double w = (x - x_[k]) / (x_[k + 1] - x_[k]);
  return y_[k] + w * (y_[k + 1] - y_[k]);
}

double SampledTable::slope(double x) const noexcept {
  const std::size_t k = cell(x);
  return (y_[k + 1] - y_[k]) / (x_[k + 1] - x_[k]);
}

FluxSpec FluxSpec::modular() {
  FluxSpec s;
  s.kind = FluxKind::modular;
  return s;
}

FluxSpec FluxSpec::quadratic() {
  FluxSpec s;
  s.kind = FluxKind::quadratic;
  return s;
}

FluxSpec FluxSpec::regularized(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ConfigError("regularized modular flux needs epsilon > 0");
  }
  FluxSpec s;
  s.kind = FluxKind::regularized_modular;
  s.epsilon = epsilon;
  return s;
}

FluxSpec FluxSpec::tabulated(SampledTable table) {
  FluxSpec s;
  s.kind = FluxKind::tabulated;
  s.table = std::make_shared<const SampledTable>(std::move(table));
  return s;
}

FluxSpec FluxSpec::with_drift(double c) const {
  FluxSpec s = *this;
  s.drift = c;
  return s;
}

std::string FluxSpec::name() const {
  switch (kind) {
    case FluxKind::modular: return "modular";
    case FluxKind::quadratic: return "quadratic";
    case FluxKind::regularized_modular: return "regularized_modular";
    case FluxKind::tabulated: return "tabulated";
  }
  return "unknown";
}

ClampedValue eval_flux_clamped(const FluxSpec& spec, double u) noexcept {
  double f = 0.0;
  bool out = false;
  switch (spec.kind) {
    case FluxKind::modular: f = std::fabs(u); break;
    case FluxKind::quadratic: f = u * u; break;
    case FluxKind::regularized_modular: f = std::hypot(spec.epsilon, u) - spec.epsilon; break;
    case FluxKind::tabulated:
      out = !spec.table->contains(u);
      f = spec.table->value(u);
      break;
  }
  return {f + spec.drift * u, out};
}

double eval_flux(const FluxSpec& spec, double u) {
  const ClampedValue v = eval_flux_clamped(spec, u);
  if (v.out_of_range) {
    throw FluxRangeError("tabulated flux evaluated outside its range at u = " +
                         std::to_string(u));
  }
  return v.value;
}

double eval_flux_derivative(const FluxSpec& spec, double u) {
  double d = 0.0;
  switch (spec.kind) {
    case FluxKind::modular: d = u > 0.0 ? 1.0 : (u < 0.0 ? -1.0 : 0.0); break;
    case FluxKind::quadratic: d = 2.0 * u; break;
    case FluxKind::regularized_modular: d = u / std::hypot(spec.epsilon, u); break;
    case FluxKind::tabulated:
      if (!spec.table->contains(u)) {
        throw FluxRangeError("tabulated flux derivative outside its range at u = " +
                             std::to_string(u));
      }
      d = spec.table->slope(u);
      break;
  }
  return d + spec.drift;
}

bool at_subdifferential_point(const FluxSpec& spec, double u) noexcept {
  return spec.kind == FluxKind::modular && u == 0.0;
}

double rankine_hugoniot_speed(const FluxSpec& spec, const ShockData& shock) {
  if (shock.phi_plus == shock.phi_minus) {
    throw DomainError("degenerate shock: phi_- == phi_+");
  }
  return (eval_flux(spec, shock.phi_minus) - eval_flux(spec, shock.phi_plus)) /
         (shock.phi_plus - shock.phi_minus);
}

EntropyResult check_entropy_condition(const FluxSpec& spec, const ShockData& shock,
                                      std::size_t n_samples) {
  if (n_samples < 2) {
    throw ConfigError("entropy check needs at least 2 samples");
  }
  const double c = rankine_hugoniot_speed(spec, shock);
  const double f_minus = eval_flux(spec, shock.phi_minus);
  const double orientation = shock.phi_plus > shock.phi_minus ? 1.0 : -1.0;
  const double lo = shock.phi_min();
  const double dz = (shock.phi_max() - lo) / static_cast<double>(n_samples);
  // The profile ODE phi' = -H(phi) must carry phi_- to phi_+ monotonically.
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double z = lo + (static_cast<double>(i) + 0.5) * dz;
    const double h = c * (z - shock.phi_minus) + eval_flux(spec, z) - f_minus;
    if (!(orientation * h < 0.0)) {
      return {false, z};
    }
  }
  return {true, std::nullopt};
}

DataClass classify_initial_data(const FluxSpec& spec, const ShockData& shock) {
  if (shock.phi_minus == 0.0 || shock.phi_plus == 0.0) {
    throw DomainError("cannot classify data with a zero asymptotic limit");
  }
  if ((shock.phi_minus > 0.0) == (shock.phi_plus > 0.0)) {
    return DataClass::class_II;
  }
  return check_entropy_condition(spec, shock).satisfied ? DataClass::class_I
                                                        : DataClass::class_III;
}

std::string to_string(DataClass c) {
  switch (c) {
    case DataClass::class_I: return "class_I";
    case DataClass::class_II: return "class_II";
    case DataClass::class_III: return "class_III";
  }
  return "unknown";
}

InitialConditionSpec InitialConditionSpec::shock(double alpha) {
  return {InitialKind::shock_alpha, alpha, nullptr, {}};
}

InitialConditionSpec InitialConditionSpec::antishock(double alpha) {
  return {InitialKind::antishock_alpha, alpha, nullptr, {}};
}

InitialConditionSpec InitialConditionSpec::tanh_shift(double x0) {
  return {InitialKind::tanh_shifted, x0, nullptr, {}};
}

InitialConditionSpec InitialConditionSpec::cole_hopf(double amplitude) {
  return {InitialKind::cole_hopf_chi0, amplitude, nullptr, {}};
}

InitialConditionSpec InitialConditionSpec::sampled(SampledTable table, std::string source) {
  return {InitialKind::sampled, 0.0, std::make_shared<const SampledTable>(std::move(table)),
          std::move(source)};
}

InitialConditionSpec InitialConditionSpec::sampled_file(const std::filesystem::path& path) {
  return sampled(SampledTable::load_csv(path), path.string());
}

std::string InitialConditionSpec::name() const {
  switch (kind) {
    case InitialKind::shock_alpha: return "shock_alpha";
    case InitialKind::antishock_alpha: return "antishock_alpha";
    case InitialKind::tanh_shifted: return "tanh_shifted";
    case InitialKind::cole_hopf_chi0: return "cole_hopf_chi0";
    case InitialKind::sampled: return "sampled";
  }
  return "unknown";
}

double cole_hopf_default_amplitude() {
  const double c = std::cosh(1.0);
  return c * c;
}

PointFunction initial_condition(const InitialConditionSpec& ic) {
  switch (ic.kind) {
    case InitialKind::shock_alpha:
    case InitialKind::antishock_alpha: {
      if (!(ic.parameter > 0.0)) {
        throw ConfigError("alpha must be positive");
      }
      const double alpha = ic.parameter;
      const double sign = ic.kind == InitialKind::shock_alpha ? 1.0 : -1.0;
      return [alpha, sign](double x) {
        return sign * std::tanh(x) * (1.0 - std::exp(alpha * (1.0 - x * x)));
      };
    }
    case InitialKind::tanh_shifted: {
      const double x0 = ic.parameter;
      return [x0](double x) { return std::tanh(x - x0); };
    }
    case InitialKind::cole_hopf_chi0: {
      if (!(ic.parameter > 0.0)) {
        throw ConfigError("chi0 amplitude must be positive");
      }
      const double k = ic.parameter;
      // (sinh + chi0') / (cosh + chi0) with chi0 = k sech, divided through by cosh.
      return [k](double x) {
        const double s = 1.0 / std::cosh(x);
        const double ks2 = k * s * s;
        return std::tanh(x) * (1.0 - ks2) / (1.0 + ks2);
      };
    }
    case InitialKind::sampled: {
      if (!ic.samples) {
        throw ConfigError("sampled initial condition has no data");
      }
      auto table = ic.samples;
      return [table](double x) { return table->value(x); };
    }
  }
  throw ConfigError("unknown initial condition kind");
}

ModularProfile::ModularProfile(const ShockData& shock) : shock_(shock) {
  if (!(shock.phi_minus < 0.0 && shock.phi_plus > 0.0)) {
    throw DomainError("modular traveling profile needs phi_- < 0 < phi_+");
  }
  speed_ = rankine_hugoniot_speed(FluxSpec::modular(), shock);
  right_rate_ = 1.0 + speed_;
  left_rate_ = 1.0 - speed_;
}

double ModularProfile::value(double x) const noexcept {
  if (x >= 0.0) return shock_.phi_plus * -std::expm1(-right_rate_ * x);
  return shock_.phi_minus * -std::expm1(left_rate_ * x);
}

double ModularProfile::derivative(double x) const noexcept {
  if (x >= 0.0) return shock_.phi_plus * right_rate_ * std::exp(-right_rate_ * x);
  return -shock_.phi_minus * left_rate_ * std::exp(left_rate_ * x);
}

double ModularProfile::second_derivative(double x) const noexcept {
  if (x >= 0.0) return -shock_.phi_plus * right_rate_ * right_rate_ * std::exp(-right_rate_ * x);
  return second_derivative_left(x);
}

double ModularProfile::second_derivative_left(double x) const noexcept {
  return -shock_.phi_minus * left_rate_ * left_rate_ * std::exp(left_rate_ * x);
}

ModularProfile modular_traveling_profile(const ShockData& shock) {
  return ModularProfile(shock);
}

}  // namespace coalesce
