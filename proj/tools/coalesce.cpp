#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "coalesce/io.hpp"
#include "coalesce/oracles.hpp"
#include "coalesce/pipeline.hpp"
#include "coalesce/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace coalesce;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_verify_failed = 1;
constexpr int exit_config = 2;
constexpr int exit_blow_up = 3;

fs::path output_root() {
  const char* env = std::getenv("COALESCE_OUTPUT_ROOT");
  return env && *env ? fs::path(env) : fs::current_path();
}

fs::path resolve_output(const fs::path& p) { return p.is_absolute() ? p : output_root() / p; }

void write_json(const fs::path& path, const ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

using Overlay = std::pair<std::string, std::function<double(double, double)>>;

std::vector<Overlay> make_overlays(const ExperimentManifest& m) {
  std::vector<Overlay> out;
  for (const std::string& kind : m.oracle_overlays) {
    if (kind == "cole-hopf") {
      if (m.config.ic.kind != InitialKind::cole_hopf_chi0) {
        throw ConfigError("cole-hopf overlay needs cole_hopf initial data");
      }
      const auto state = std::make_shared<ColeHopfState>(ColeHopfState::sech(m.config.ic.parameter));
      out.emplace_back(kind, [state](double t, double x) { return cole_hopf_u(*state, t, x); });
    } else if (kind == "green") {
      GreenReference ref;
      ref.phi_star = std::abs(shock_data(m).phi_minus);
      ref.validate();
      out.emplace_back(kind, [ref](double t, double x) { return green_reference_u(ref, t, x); });
    } else if (kind == "profile") {
      const ModularProfile profile(shock_data(m));
      out.emplace_back(kind, [profile](double t, double x) {
        return profile.value(x - profile.speed() * t);
      });
    } else {
      throw ConfigError("unknown oracle overlay `" + kind + "`");
    }
  }
  return out;
}

void write_oracle_overlays(const std::vector<Overlay>& overlays, const Trajectory& traj,
                           const fs::path& dir) {
  if (overlays.empty()) return;
  fs::create_directories(dir);
  const SpatialGrid& grid = traj.config().grid;
  for (const auto& [kind, u] : overlays) {
    for (std::size_t i = 0; i < traj.size(); ++i) {
      const double t = traj.snapshots()[i].t();
      const Snapshot s = build_snapshot(grid, t, [&](double x) { return u(t, x); });
      write_snapshot_csv(dir / (kind + "_" + snapshot_file_name(traj.steps()[i])), s);
    }
  }
}

void write_gnuplot(const fs::path& dir, const Trajectory& traj) {
  std::ofstream gp(dir / "plot.gp");
  gp << "set datafile separator ','\n"
     << "set key off\n"
     << "set multiplot layout 1,2\n"
     << "set title 'u(t, x)'\nset xlabel 'x'\n"
     << "plot";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    gp << (i ? ", \\\n    " : " ") << "'trajectory/" << snapshot_file_name(traj.steps()[i])
       << "' skip 2 using 1:2 with lines";
  }
  gp << "\nset title 'interfaces'\nset xlabel 't'\nset ylabel 'xi'\n"
     << "plot 'track.csv' skip 1 using 1:3 with points pt 7 ps 0.3\n"
     << "unset multiplot\n";
}

int cmd_simulate(const std::string& ref) {
  const ExperimentManifest m = resolve_manifest(ref);
  const std::vector<Overlay> overlays = make_overlays(m);
  const RunOutcome o = simulate(m);
  const fs::path dir = resolve_output(m.output);
  fs::create_directories(dir);
  write_manifest(dir / "manifest.ini", m);
  write_trajectory_dir(dir / "trajectory", o.run.trajectory);
  write_track_csv(dir / "track.csv", o.branches);
  write_oracle_overlays(overlays, o.run.trajectory, dir / "oracles");
  if (m.gnuplot) write_gnuplot(dir, o.run.trajectory);

  ordered_json summary;
  summary["name"] = m.name;
  summary["flux"] = m.config.flux.name();
  summary["initial"] = m.config.ic.name();
  summary["n_steps"] = m.config.time.n_steps();
  summary["n_snapshots"] = o.run.trajectory.size();
  const ZeroSet& last = o.run.track.samples().back();
  summary["final_time"] = ordered_json(last.t);
  summary["final_zero_count"] = last.zeros.size();
  ordered_json branches = ordered_json::array();
  for (const Branch& b : o.branches) {
    ordered_json jb;
    jb["id"] = b.id;
    jb["t_first"] = ordered_json(b.t.front());
    jb["xi_first"] = ordered_json(b.xi.front());
    jb["samples"] = b.t.size();
    jb["termination"] = b.termination ? ordered_json(*b.termination) : ordered_json(nullptr);
    branches.push_back(jb);
  }
  summary["branches"] = branches;
  const auto final_t = final_coalescence_time(o.branches);
  summary["final_coalescence_time"] = final_t ? ordered_json(*final_t) : ordered_json(nullptr);
  try {
    const BranchFit f = fit_branches(o.branches, m.fit, m.fit_branch);
    write_fit_csv(dir / "fit.csv", f.report.best);
    write_curve_csv(dir / "residual_curve.csv", f.report.curve);
    summary["fit"] = {{"branch", f.branch},
                      {"t0", ordered_json(f.report.best.t0)},
                      {"c1", ordered_json(f.report.best.c1)},
                      {"c2", ordered_json(f.report.best.c2)},
                      {"residual", ordered_json(f.report.best.residual)},
                      {"n_samples", f.report.best.n_samples}};
  } catch (const InsufficientDataError& e) {
    summary["fit"] = nullptr;
    summary["fit_note"] = e.what();
  }
  summary["warnings"] = o.run.warnings;
  write_json(dir / "summary.json", summary);

  for (const std::string& w : o.run.warnings) std::cerr << "warning: " << w << '\n';
  std::cout << "wrote " << dir.string() << '\n'
            << "final zero count " << last.zeros.size() << ", final coalescence "
            << (final_t ? format_double(*final_t) : std::string("none")) << '\n';
  return exit_ok;
}

struct FitArgs {
  std::string track;
  std::optional<double> t0_lo, t0_hi, t0_step, window_floor, window_ceiling;
  std::optional<std::size_t> branch;
  std::string out;
};

int cmd_fit(const FitArgs& a) {
  const auto series = read_track_csv(fs::path(a.track));
  const std::size_t id = a.branch ? *a.branch : primary_branch(series);
  const auto it = series.find(id);
  if (it == series.end()) throw ConfigError("no branch " + std::to_string(id) + " in track");
  FitOptions opts;
  opts.t0_lo = a.t0_lo;
  opts.t0_hi = a.t0_hi;
  opts.t0_step = a.t0_step;
  if (a.window_floor) opts.window_floor = *a.window_floor;
  if (a.window_ceiling) {
    if (*a.window_ceiling > 0.0) {
      opts.window_ceiling = *a.window_ceiling;
    } else {
      opts.window_ceiling.reset();
    }
  }
  const FitReport report = fit_scaling_law(it->second.t, it->second.xi, opts);
  const fs::path dir =
      resolve_output(a.out.empty() ? fs::path(a.track).stem().string() + "-fit" : a.out);
  fs::create_directories(dir);
  write_fit_csv(dir / "fit.csv", report.best);
  write_curve_csv(dir / "residual_curve.csv", report.curve);
  const ScalingFit& f = report.best;
  std::cout << "branch " << id << "\n"
            << "t0,c1,c2,residual,n_samples,window_lo,window_hi\n"
            << format_double(f.t0) << ',' << format_double(f.c1) << ',' << format_double(f.c2)
            << ',' << format_double(f.residual) << ',' << f.n_samples << ','
            << format_double(f.window_lo) << ',' << format_double(f.window_hi) << '\n';
  return exit_ok;
}

struct OracleArgs {
  std::string kind;
  std::vector<double> times;
  std::optional<double> x_min, x_max;
  double h = 0.01;
  double amplitude = cole_hopf_default_amplitude();
  double phi_star = 1.0;
  double shift = 0.0;
  double phi_minus = -1.0;
  double phi_plus = 1.0;
  std::string out;
};

int cmd_oracle(const OracleArgs& a) {
  std::function<double(double, double)> u;
  std::vector<double> times = a.times;
  double lo = -10.0;
  double hi = 10.0;
  ordered_json summary;
  summary["kind"] = a.kind;
  if (a.kind == "cole-hopf") {
    const auto state = std::make_shared<ColeHopfState>(ColeHopfState::sech(a.amplitude));
    if (times.empty()) times = {0.0, 0.1, 0.205, 0.5};
    summary["amplitude"] = ordered_json(a.amplitude);
    const double t0 = cole_hopf_t0(*state);
    summary["t0"] = ordered_json(t0);
    std::cout << "t0 " << format_double(t0) << '\n';
    u = [state](double t, double x) { return cole_hopf_u(*state, t, x); };
  } else if (a.kind == "green") {
    GreenReference ref{a.phi_star, a.shift};
    ref.validate();
    if (times.empty()) times = {0.0, 0.5, 1.0, 2.0};
    summary["phi_star"] = ordered_json(a.phi_star);
    summary["shift"] = ordered_json(a.shift);
    u = [ref](double t, double x) { return green_reference_u(ref, t, x); };
  } else if (a.kind == "profile") {
    const ModularProfile profile(ShockData{a.phi_minus, a.phi_plus});
    if (times.empty()) times = {0.0};
    summary["phi_minus"] = ordered_json(a.phi_minus);
    summary["phi_plus"] = ordered_json(a.phi_plus);
    summary["speed"] = ordered_json(profile.speed());
    u = [profile](double t, double x) { return profile.value(x - profile.speed() * t); };
  } else {
    throw ConfigError("unknown oracle `" + a.kind + "` (cole-hopf, green, profile)");
  }
  const SpatialGrid grid = SpatialGrid::with_spacing(a.x_min.value_or(lo), a.x_max.value_or(hi), a.h);
  const fs::path dir = resolve_output(a.out.empty() ? "oracle-" + a.kind : a.out);
  fs::create_directories(dir);
  ordered_json files = ordered_json::array();
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    if (!(t >= 0.0)) throw ConfigError("oracle times must be >= 0");
    const Snapshot s = build_snapshot(grid, t, [&](double x) { return u(t, x); });
    const std::string name = snapshot_file_name(i);
    write_snapshot_csv(dir / name, s);
    files.push_back({{"t", ordered_json(t)}, {"file", name}});
  }
  summary["snapshots"] = files;
  write_json(dir / "summary.json", summary);
  std::cout << "wrote " << times.size() << " snapshots to " << dir.string() << '\n';
  return exit_ok;
}

int cmd_bounds(const std::string& ref) {
  const ExperimentManifest m = resolve_manifest(ref);
  const BoundsOutcome b = compute_bounds(m);
  ordered_json j;
  j["name"] = m.name;
  j["class"] = to_string(b.data_class);
  j["phi_minus"] = ordered_json(b.shock.phi_minus);
  j["phi_plus"] = ordered_json(b.shock.phi_plus);
  if (b.bound) {
    j["T"] = ordered_json(b.bound->T);
    j["data_in_range"] = b.bound->data_in_range;
    ordered_json inputs;
    for (const auto& [k, v] : b.bound->inputs) inputs[k] = ordered_json(v);
    j["inputs"] = inputs;
  } else {
    j["T"] = nullptr;
  }
  if (!b.note.empty()) j["note"] = b.note;
  const fs::path dir = resolve_output(m.output);
  fs::create_directories(dir);
  write_json(dir / "bounds.json", j);
  std::cout << j.dump(2) << '\n';
  return exit_ok;
}

int cmd_verify(const std::string& suite_name, unsigned threads, const std::string& report) {
  const Suite suite = parse_suite(suite_name);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const auto results = run_suite(suite, threads);
  bool all = true;
  ordered_json j;
  j["suite"] = to_string(suite);
  ordered_json arr = ordered_json::array();
  for (const CriterionResult& r : results) {
    std::cout << format_result_line(r) << '\n';
    all = all && r.passed;
    ordered_json values;
    for (const auto& [k, v] : r.values) values[k] = ordered_json(v);
    arr.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail},
                   {"values", values}});
  }
  j["criteria"] = arr;
  j["passed"] = all;
  const fs::path path = resolve_output(report.empty() ? "verify-" + to_string(suite) + ".json"
                                                      : report);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  write_json(path, j);
  std::cout << (all ? "all criteria passed" : "some criteria failed") << '\n';
  return all ? exit_ok : exit_verify_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interface dynamics of viscous shock and anti-shock waves"};
  app.require_subcommand(1);

  std::string manifest;
  auto* sim = app.add_subcommand("simulate", "run a manifest or preset");
  sim->add_option("manifest", manifest, "manifest file or preset name")->required();

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "fit the scaling law to a track CSV");
  fit_cmd->add_option("track", fit.track)->required();
  fit_cmd->add_option("--t0-lo", fit.t0_lo);
  fit_cmd->add_option("--t0-hi", fit.t0_hi);
  fit_cmd->add_option("--t0-step", fit.t0_step);
  fit_cmd->add_option("--window-floor", fit.window_floor);
  fit_cmd->add_option("--window-ceiling", fit.window_ceiling, "0 disables the ceiling");
  fit_cmd->add_option("--branch", fit.branch);
  fit_cmd->add_option("--out", fit.out, "output directory");

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "tabulate a closed-form solution");
  oracle_cmd->add_option("kind", oracle.kind, "cole-hopf, green or profile")->required();
  oracle_cmd->add_option("--times", oracle.times)->delimiter(',');
  oracle_cmd->add_option("--x-min", oracle.x_min);
  oracle_cmd->add_option("--x-max", oracle.x_max);
  oracle_cmd->add_option("--spacing", oracle.h, "grid spacing");
  oracle_cmd->add_option("--amplitude", oracle.amplitude);
  oracle_cmd->add_option("--phi-star", oracle.phi_star);
  oracle_cmd->add_option("--shift", oracle.shift);
  oracle_cmd->add_option("--phi-minus", oracle.phi_minus);
  oracle_cmd->add_option("--phi-plus", oracle.phi_plus);
  oracle_cmd->add_option("--out", oracle.out, "output directory");

  std::string bounds_manifest;
  auto* bounds = app.add_subcommand("bounds", "extinction-time bound for a manifest");
  bounds->add_option("manifest", bounds_manifest)->required();

  std::string suite;
  unsigned threads = 0;
  std::string report;
  auto* verify = app.add_subcommand("verify", "run an acceptance suite");
  verify->add_option("suite", suite, "invariants, paper-repro, bounds or all")->required();
  verify->add_option("--threads", threads, "0 uses all cores");
  verify->add_option("--report", report, "JSON report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_config;
  }

  std::cout.precision(17);
  try {
    if (*sim) return cmd_simulate(manifest);
    if (*fit_cmd) return cmd_fit(fit);
    if (*oracle_cmd) return cmd_oracle(oracle);
    if (*bounds) return cmd_bounds(bounds_manifest);
    if (*verify) return cmd_verify(suite, threads, report);
  } catch (const BlowUpError& e) {
    std::cerr << "blow-up: " << e.what() << '\n';
    return exit_blow_up;
  } catch (const SingularSystemError& e) {
    std::cerr << "blow-up: " << e.what() << '\n';
    return exit_blow_up;
  } catch (const InsufficientDataError& e) {
    std::cerr << "insufficient data: " << e.what() << '\n';
    return exit_config;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_config;
  }
  return exit_config;
}
