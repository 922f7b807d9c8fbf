#include "coalesce/manifest.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "coalesce/io.hpp"

namespace coalesce {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"experiment", {"name", "output"}},
      {"flux", {"kind", "epsilon", "drift", "table"}},
      {"grid", {"x_min", "x_max", "h", "n_nodes"}},
      {"time", {"t_end", "tau", "n_steps"}},
      {"initial", {"kind", "parameter", "file"}},
      {"boundary", {"left", "right"}},
      {"output", {"snapshot_stride", "gnuplot"}},
      {"fit",
       {"t0_lo", "t0_hi", "t0_step", "window_floor", "window_ceiling", "t_min", "t_max",
        "drop_before_last_maximum", "refine", "sample_step", "branch"}},
      {"oracles", {"overlays"}},
      {"shock", {"phi_minus", "phi_plus"}},
      {"bounds", {"eta", "c_gn"}},
  };
  return keys;
}

class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  std::optional<std::string> str(const std::string& section, const std::string& key) const {
    const auto sec = tree_.get_child_optional(section);
    if (!sec) return std::nullopt;
    const auto v = sec->get_optional<std::string>(key);
    if (!v) return std::nullopt;
    return *v;
  }

  std::optional<double> num(const std::string& section, const std::string& key) const {
    const auto s = str(section, key);
    if (!s) return std::nullopt;
    try {
      return parse_double_field(*s, 0);
    } catch (const ParseError&) {
      throw ConfigError("[" + section + "] " + key + " is not a number: `" + *s + "`");
    }
  }

  std::optional<std::size_t> count(const std::string& section, const std::string& key) const {
    const auto v = num(section, key);
    if (!v) return std::nullopt;
    if (!(*v >= 0.0) || *v != std::floor(*v) || *v > 1e15) {
      throw ConfigError("[" + section + "] " + key + " must be a nonnegative integer");
    }
    return static_cast<std::size_t>(*v);
  }

  std::optional<bool> flag(const std::string& section, const std::string& key) const {
    const auto s = str(section, key);
    if (!s) return std::nullopt;
    if (*s == "true" || *s == "1" || *s == "yes" || *s == "on") return true;
    if (*s == "false" || *s == "0" || *s == "no" || *s == "off") return false;
    throw ConfigError("[" + section + "] " + key + " must be true or false");
  }

 private:
  const pt::ptree& tree_;
};

BoundaryCondition parse_bc(const std::string& s) {
  if (s == "dirichlet0") return BoundaryCondition::dirichlet0;
  if (s == "neumann") return BoundaryCondition::neumann;
  throw ConfigError("unknown boundary condition `" + s + "`");
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_relative() && !base.empty()) path = base / path;
  return path;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    const auto a = item.find_first_not_of(" \t");
    const auto b = item.find_last_not_of(" \t");
    if (a != std::string::npos) out.push_back(item.substr(a, b - a + 1));
  }
  return out;
}

}  // namespace

ExperimentManifest parse_manifest(std::istream& in, const std::filesystem::path& base_dir) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError(e.message(), e.line());
  }
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigError("key `" + section + "` outside a section");
    }
    const auto it = allowed_keys().find(section);
    if (it == allowed_keys().end()) {
      throw ConfigError("unknown section [" + section + "]");
    }
    for (const auto& [key, value] : body) {
      if (!it->second.count(key)) {
        throw ConfigError("unknown key `" + key + "` in [" + section + "]");
      }
    }
  }
  const Reader r(tree);
  ExperimentManifest m;

  m.name = r.str("experiment", "name").value_or("");
  if (m.name.empty()) {
    throw ConfigError("[experiment] name must be nonempty");
  }
  m.output = r.str("experiment", "output").value_or(m.name);

  SimConfig& c = m.config;
  const std::string flux_kind = r.str("flux", "kind").value_or("regularized_modular");
  if (flux_kind == "regularized_modular") {
    c.flux = FluxSpec::regularized(r.num("flux", "epsilon").value_or(1e-16));
  } else if (flux_kind == "modular") {
    c.flux = FluxSpec::modular();
  } else if (flux_kind == "quadratic") {
    c.flux = FluxSpec::quadratic();
  } else if (flux_kind == "tabulated") {
    const auto table = r.str("flux", "table");
    if (!table) throw ConfigError("[flux] tabulated needs `table`");
    c.flux = FluxSpec::tabulated(SampledTable::load_csv(resolve(base_dir, *table)));
  } else {
    throw ConfigError("unknown flux kind `" + flux_kind + "`");
  }
  if (const auto drift = r.num("flux", "drift")) c.flux = c.flux.with_drift(*drift);

  const double x_min = r.num("grid", "x_min").value_or(0.0);
  const double x_max = r.num("grid", "x_max").value_or(5.0);
  const auto h = r.num("grid", "h");
  const auto n_nodes = r.count("grid", "n_nodes");
  if (h && n_nodes) throw ConfigError("[grid] give either h or n_nodes, not both");
  if (n_nodes) {
    c.grid = SpatialGrid(x_min, x_max, *n_nodes);
  } else {
    c.grid = SpatialGrid::with_spacing(x_min, x_max, h.value_or(0.01));
  }

  const double t_end = r.num("time", "t_end").value_or(0.3);
  const auto tau = r.num("time", "tau");
  const auto n_steps = r.count("time", "n_steps");
  if (tau && n_steps) throw ConfigError("[time] give either tau or n_steps, not both");
  if (n_steps) {
    c.time = TimeGrid(t_end, *n_steps);
  } else {
    c.time = TimeGrid::with_step(t_end, tau.value_or(0.0005));
  }

  const std::string ic_kind = r.str("initial", "kind").value_or("shock_alpha");
  const auto param = r.num("initial", "parameter");
  if (ic_kind == "shock_alpha") {
    c.ic = InitialConditionSpec::shock(param.value_or(1.0));
  } else if (ic_kind == "antishock_alpha") {
    c.ic = InitialConditionSpec::antishock(param.value_or(1.0));
  } else if (ic_kind == "tanh_shifted") {
    c.ic = InitialConditionSpec::tanh_shift(param.value_or(0.0));
  } else if (ic_kind == "cole_hopf_chi0") {
    c.ic = InitialConditionSpec::cole_hopf(param.value_or(cole_hopf_default_amplitude()));
  } else if (ic_kind == "sampled") {
    const auto file = r.str("initial", "file");
    if (!file) throw ConfigError("[initial] sampled needs `file`");
    c.ic = InitialConditionSpec::sampled_file(resolve(base_dir, *file));
  } else {
    throw ConfigError("unknown initial condition kind `" + ic_kind + "`");
  }

  c.bc_left = parse_bc(r.str("boundary", "left").value_or("dirichlet0"));
  c.bc_right = parse_bc(r.str("boundary", "right").value_or("neumann"));
  c.snapshot_stride = r.count("output", "snapshot_stride").value_or(100);
  m.gnuplot = r.flag("output", "gnuplot").value_or(false);

  FitOptions& f = m.fit;
  f.t0_lo = r.num("fit", "t0_lo");
  f.t0_hi = r.num("fit", "t0_hi");
  f.t0_step = r.num("fit", "t0_step");
  if (const auto v = r.num("fit", "window_floor")) f.window_floor = *v;
  if (const auto s = r.str("fit", "window_ceiling")) {
    f.window_ceiling = (*s == "none") ? std::nullopt : r.num("fit", "window_ceiling");
  }
  f.t_min = r.num("fit", "t_min");
  f.t_max = r.num("fit", "t_max");
  if (const auto v = r.flag("fit", "drop_before_last_maximum")) f.drop_before_last_maximum = *v;
  if (const auto v = r.flag("fit", "refine")) f.refine = *v;
  f.sample_step = r.num("fit", "sample_step");
  m.fit_branch = r.count("fit", "branch");

  if (const auto s = r.str("oracles", "overlays")) {
    for (const std::string& kind : split_list(*s)) {
      if (kind != "cole-hopf" && kind != "green" && kind != "profile") {
        throw ConfigError("unknown oracle overlay `" + kind + "`");
      }
      m.oracle_overlays.push_back(kind);
    }
  }

  const auto pm = r.num("shock", "phi_minus");
  const auto pp = r.num("shock", "phi_plus");
  if (pm.has_value() != pp.has_value()) {
    throw ConfigError("[shock] needs both phi_minus and phi_plus");
  }
  if (pm) m.shock = ShockData{*pm, *pp};
  m.eta = r.num("bounds", "eta");
  if (const auto v = r.num("bounds", "c_gn")) m.c_gn = *v;

  c.validate();
  return m;
}

ExperimentManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open manifest " + path.string());
  }
  return parse_manifest(in, path.parent_path());
}

namespace {

std::string flux_kind_key(FluxKind k) {
  switch (k) {
    case FluxKind::modular: return "modular";
    case FluxKind::quadratic: return "quadratic";
    case FluxKind::regularized_modular: return "regularized_modular";
    case FluxKind::tabulated: return "tabulated";
  }
  return "unknown";
}

}  // namespace

void write_manifest(std::ostream& out, const ExperimentManifest& m) {
  const SimConfig& c = m.config;
  out << "[experiment]\n";
  out << "name = " << m.name << "\n";
  out << "output = " << m.output.string() << "\n\n";

  out << "[flux]\n";
  out << "kind = " << flux_kind_key(c.flux.kind) << "\n";
  if (c.flux.kind == FluxKind::regularized_modular) {
    out << "epsilon = " << format_double(c.flux.epsilon) << "\n";
  }
  if (c.flux.drift != 0.0) out << "drift = " << format_double(c.flux.drift) << "\n";
  out << "\n[grid]\n";
  out << "x_min = " << format_double(c.grid.x_min()) << "\n";
  out << "x_max = " << format_double(c.grid.x_max()) << "\n";
  out << "n_nodes = " << c.grid.n_nodes() << "\n\n";

  out << "[time]\n";
  out << "t_end = " << format_double(c.time.t_end()) << "\n";
  out << "n_steps = " << c.time.n_steps() << "\n\n";

  out << "[initial]\n";
  out << "kind = " << c.ic.name() << "\n";
  if (c.ic.kind == InitialKind::sampled) {
    out << "file = " << c.ic.source << "\n";
  } else {
    out << "parameter = " << format_double(c.ic.parameter) << "\n";
  }
  out << "\n[boundary]\n";
  out << "left = " << to_string(c.bc_left) << "\n";
  out << "right = " << to_string(c.bc_right) << "\n\n";

  out << "[output]\n";
  out << "snapshot_stride = " << c.snapshot_stride << "\n";
  out << "gnuplot = " << (m.gnuplot ? "true" : "false") << "\n";

  const FitOptions& f = m.fit;
  out << "\n[fit]\n";
  if (f.t0_lo) out << "t0_lo = " << format_double(*f.t0_lo) << "\n";
  if (f.t0_hi) out << "t0_hi = " << format_double(*f.t0_hi) << "\n";
  if (f.t0_step) out << "t0_step = " << format_double(*f.t0_step) << "\n";
  out << "window_floor = " << format_double(f.window_floor) << "\n";
  out << "window_ceiling = " << (f.window_ceiling ? format_double(*f.window_ceiling) : "none")
      << "\n";
  if (f.t_min) out << "t_min = " << format_double(*f.t_min) << "\n";
  if (f.t_max) out << "t_max = " << format_double(*f.t_max) << "\n";
  out << "drop_before_last_maximum = " << (f.drop_before_last_maximum ? "true" : "false") << "\n";
  out << "refine = " << (f.refine ? "true" : "false") << "\n";
  if (f.sample_step) out << "sample_step = " << format_double(*f.sample_step) << "\n";
  if (m.fit_branch) out << "branch = " << *m.fit_branch << "\n";

  if (!m.oracle_overlays.empty()) {
    out << "\n[oracles]\noverlays = ";
    for (std::size_t i = 0; i < m.oracle_overlays.size(); ++i) {
      out << (i ? ", " : "") << m.oracle_overlays[i];
    }
    out << "\n";
  }
  if (m.shock) {
    out << "\n[shock]\n";
    out << "phi_minus = " << format_double(m.shock->phi_minus) << "\n";
    out << "phi_plus = " << format_double(m.shock->phi_plus) << "\n";
  }
  out << "\n[bounds]\n";
  if (m.eta) out << "eta = " << format_double(*m.eta) << "\n";
  out << "c_gn = " << format_double(m.c_gn) << "\n";
}

void write_manifest(const std::filesystem::path& path, const ExperimentManifest& m) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot write " + path.string());
  }
  write_manifest(out, m);
}

std::vector<std::string> preset_names() { return {"shock-a1", "shock-a4", "anti-a1", "anti-a4"}; }

ExperimentManifest preset(const std::string& name) {
  struct Row {
    const char* name;
    bool anti;
    double alpha;
    double length;
    double t_end;
  };
  static const Row rows[] = {
      {"shock-a1", false, 1.0, 5.0, 0.3},
      {"shock-a4", false, 4.0, 10.0, 1.6},
      {"anti-a1", true, 1.0, 5.0, 0.4},
      {"anti-a4", true, 4.0, 10.0, 1.6},
  };
  for (const Row& row : rows) {
    if (name != row.name) continue;
    ExperimentManifest m;
    m.name = row.name;
    m.output = row.name;
    m.config.flux = FluxSpec::regularized(1e-16);
    m.config.grid = SpatialGrid::with_spacing(0.0, row.length, 0.01);
    m.config.time = TimeGrid::with_step(row.t_end, 0.0005);
    m.config.ic = row.anti ? InitialConditionSpec::antishock(row.alpha)
                           : InitialConditionSpec::shock(row.alpha);
    m.config.bc_left = BoundaryCondition::dirichlet0;
    m.config.bc_right = BoundaryCondition::neumann;
    m.config.snapshot_stride = 100;
    return m;
  }
  throw ConfigError("unknown preset `" + name + "`");
}

ExperimentManifest resolve_manifest(const std::string& ref) {
  const std::filesystem::path path(ref);
  if (std::filesystem::is_regular_file(path)) return load_manifest(path);
  for (const std::string& name : preset_names()) {
    if (ref == name) return preset(name);
  }
  throw ConfigError("no manifest file or preset named `" + ref + "`");
}

ShockData shock_data(const ExperimentManifest& m) {
  if (m.shock) return *m.shock;
  const InitialConditionSpec& ic = m.config.ic;
  switch (ic.kind) {
    case InitialKind::shock_alpha:
    case InitialKind::tanh_shifted:
    case InitialKind::cole_hopf_chi0:
      return {-1.0, 1.0};
    case InitialKind::antishock_alpha:
      return {1.0, -1.0};
    case InitialKind::sampled: {
      const auto& y = ic.samples->y();
      if (m.config.bc_left == BoundaryCondition::dirichlet0) return {-y.back(), y.back()};
      return {y.front(), y.back()};
    }
  }
  throw ConfigError("cannot infer asymptotic limits");
}

}  // namespace coalesce
