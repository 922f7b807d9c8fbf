#include "coalesce/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <tuple>

namespace coalesce {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open " + path.string(), 0);
  }
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot write " + path.string());
  }
  return out;
}

// Skips blank and '#' lines; returns false at end of input.
bool next_line(std::istream& in, std::string& line, std::size_t& number) {
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    line = t;
    return true;
  }
  return false;
}

void expect_header(std::istream& in, const std::string& header, std::size_t& number) {
  std::string line;
  if (!next_line(in, line, number)) {
    throw ParseError("missing header `" + header + "`", number);
  }
  std::string compact;
  for (char c : line) {
    if (c != ' ') compact.push_back(c);
  }
  if (compact != header) {
    throw ParseError("expected header `" + header + "`, got `" + line + "`", number);
  }
}

}  // namespace

double parse_double_field(const std::string& field, std::size_t line) {
  const std::string f = trim(field);
  double v = 0.0;
  const char* begin = f.data();
  const char* end = f.data() + f.size();
  if (!f.empty() && *begin == '+') ++begin;
  const auto res = std::from_chars(begin, end, v);
  if (f.empty() || res.ec != std::errc() || res.ptr != end) {
    throw ParseError("not a number: `" + f + "`", line);
  }
  return v;
}

void write_snapshot_csv(std::ostream& out, const Snapshot& snap) {
  out << "# t = " << format_double(snap.t()) << "\n";
  out << "x,u\n";
  const SpatialGrid& grid = snap.grid();
  for (std::size_t k = 0; k < snap.size(); ++k) {
    out << format_double(grid.node(k)) << ',' << format_double(snap[k]) << '\n';
  }
}

void write_snapshot_csv(const std::filesystem::path& path, const Snapshot& snap) {
  std::ofstream out = open_out(path);
  write_snapshot_csv(out, snap);
}

Snapshot read_snapshot_csv(std::istream& in) {
  std::string line;
  std::size_t number = 0;
  double t = 0.0;
  // The time lives in the leading comment.
  while (in.peek() == '#' || in.peek() == '\n' || in.peek() == '\r') {
    std::getline(in, line);
    ++number;
    const auto eq = line.find('=');
    if (line.rfind("# t", 0) == 0 && eq != std::string::npos) {
      t = parse_double_field(line.substr(eq + 1), number);
    }
  }
  expect_header(in, "x,u", number);
  std::vector<double> x;
  std::vector<double> u;
  while (next_line(in, line, number)) {
    const auto fields = split_row(line);
    if (fields.size() != 2) {
      throw ParseError("expected 2 fields", number);
    }
    x.push_back(parse_double_field(fields[0], number));
    u.push_back(parse_double_field(fields[1], number));
  }
  if (x.size() < 3) {
    throw ParseError("snapshot needs at least 3 rows", number);
  }
  SpatialGrid grid(x.front(), x.back(), x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (std::abs(grid.node(k) - x[k]) > 1e-9 * std::max(1.0, std::abs(x[k]))) {
      throw ParseError("snapshot abscissae are not uniform", k + 3);
    }
  }
  return Snapshot(grid, t, std::move(u));
}

Snapshot read_snapshot_csv(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  return read_snapshot_csv(in);
}

void write_track_csv(std::ostream& out, const std::vector<Branch>& branches) {
  std::vector<std::tuple<double, double, std::size_t>> rows;
  for (const Branch& b : branches) {
    for (std::size_t i = 0; i < b.t.size(); ++i) rows.emplace_back(b.t[i], b.xi[i], b.id);
  }
  std::sort(rows.begin(), rows.end());
  out << "t,branch_id,xi\n";
  for (const auto& [t, xi, id] : rows) {
    out << format_double(t) << ',' << id << ',' << format_double(xi) << '\n';
  }
}

void write_track_csv(const std::filesystem::path& path, const std::vector<Branch>& branches) {
  std::ofstream out = open_out(path);
  write_track_csv(out, branches);
}

std::map<std::size_t, BranchSeries> read_track_csv(std::istream& in) {
  std::size_t number = 0;
  expect_header(in, "t,branch_id,xi", number);
  std::map<std::size_t, BranchSeries> out;
  std::string line;
  while (next_line(in, line, number)) {
    const auto fields = split_row(line);
    if (fields.size() != 3) {
      throw ParseError("expected 3 fields", number);
    }
    const double t = parse_double_field(fields[0], number);
    std::size_t id = 0;
    const auto res = std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), id);
    if (fields[1].empty() || res.ec != std::errc() ||
        res.ptr != fields[1].data() + fields[1].size()) {
      throw ParseError("branch id is not a nonnegative integer", number);
    }
    const double xi = parse_double_field(fields[2], number);
    BranchSeries& s = out[id];
    if (!s.t.empty() && !(t > s.t.back())) {
      throw ParseError("branch " + std::to_string(id) + " times do not increase", number);
    }
    s.t.push_back(t);
    s.xi.push_back(xi);
  }
  return out;
}

std::map<std::size_t, BranchSeries> read_track_csv(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  return read_track_csv(in);
}

namespace {

template <typename Xi>
bool all_positive(const Xi& xi) {
  return std::all_of(xi.begin(), xi.end(), [](double v) { return v > 0.0; });
}

}  // namespace

std::size_t primary_branch(const std::map<std::size_t, BranchSeries>& branches) {
  std::optional<std::size_t> best;
  std::size_t best_count = 0;
  for (const auto& [id, s] : branches) {
    if (s.xi.empty() || !all_positive(s.xi)) continue;
    if (!best || s.xi.size() > best_count) {
      best = id;
      best_count = s.xi.size();
    }
  }
  if (!best) {
    throw InsufficientDataError("track has no strictly positive branch");
  }
  return *best;
}

std::size_t primary_branch(const std::vector<Branch>& branches) {
  std::map<std::size_t, BranchSeries> m;
  for (const Branch& b : branches) m[b.id] = {b.t, b.xi};
  return primary_branch(m);
}

void write_fit_csv(const std::filesystem::path& path, const ScalingFit& fit) {
  std::ofstream out = open_out(path);
  out << "t0,c1,c2,residual,n_samples,window_lo,window_hi\n";
  out << format_double(fit.t0) << ',' << format_double(fit.c1) << ',' << format_double(fit.c2)
      << ',' << format_double(fit.residual) << ',' << fit.n_samples << ','
      << format_double(fit.window_lo) << ',' << format_double(fit.window_hi) << '\n';
}

ScalingFit read_fit_csv(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::size_t number = 0;
  expect_header(in, "t0,c1,c2,residual,n_samples,window_lo,window_hi", number);
  std::string line;
  if (!next_line(in, line, number)) {
    throw ParseError("fit file has no data row", number);
  }
  const auto f = split_row(line);
  if (f.size() != 7) {
    throw ParseError("expected 7 fields", number);
  }
  ScalingFit fit;
  fit.t0 = parse_double_field(f[0], number);
  fit.c1 = parse_double_field(f[1], number);
  fit.c2 = parse_double_field(f[2], number);
  fit.residual = parse_double_field(f[3], number);
  fit.n_samples = static_cast<std::size_t>(parse_double_field(f[4], number));
  fit.window_lo = parse_double_field(f[5], number);
  fit.window_hi = parse_double_field(f[6], number);
  return fit;
}

void write_curve_csv(const std::filesystem::path& path, const std::vector<ResidualPoint>& curve) {
  std::ofstream out = open_out(path);
  out << "t0,residual,c1,c2\n";
  for (const ResidualPoint& p : curve) {
    out << format_double(p.t0) << ',' << format_double(p.residual) << ',' << format_double(p.c1)
        << ',' << format_double(p.c2) << '\n';
  }
}

std::string snapshot_file_name(std::size_t step) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "snapshot_%08zu.csv", step);
  return buf;
}

std::vector<std::filesystem::path> write_trajectory_dir(const std::filesystem::path& dir,
                                                        const Trajectory& trajectory) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> files;
  std::ofstream index = open_out(dir / "index.csv");
  index << "step,t,file\n";
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    const std::size_t step = trajectory.steps()[i];
    const Snapshot& snap = trajectory.snapshots()[i];
    const std::string name = snapshot_file_name(step);
    write_snapshot_csv(dir / name, snap);
    index << step << ',' << format_double(snap.t()) << ',' << name << '\n';
    files.push_back(dir / name);
  }
  return files;
}

}  // namespace coalesce
