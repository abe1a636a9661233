#pragma once

// The normal-field command line: argument grammar, dispatch, summaries on
// stdout, JSON/CSV/SVG artifacts on request.
//
// Exit codes: 0 success, 1 bad input (usage, spec, genericity), 2 a counting
// identity failed.

#include <cstdint>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"  // CLI11 (vendor/)

#include "normal_field/battery.hpp"
#include "normal_field/curve.hpp"
#include "normal_field/errors.hpp"
#include "normal_field/evolute.hpp"
#include "normal_field/io.hpp"
#include "normal_field/normal_field.hpp"
#include "normal_field/sphere_proj.hpp"
#include "normal_field/surface.hpp"
#include "normal_field/svg.hpp"

namespace nfield::cli {

inline constexpr const char* grammar =
    "usage: normal-field (curve|surface|field) (analyze|critical-points|indices|verify|emit)\n"
    "         [--spec FILE] [--point X,Y[,Z]] [--rho-range A:B] [--res NT,NR]\n"
    "         [--battery N_CURVES,N_POINTS] [--seed S] [--out FILE] [--svg FILE] [--csv FILE]\n"
    "         [--tol-genericity T] [--view cylinder|sphere]\n";

inline constexpr int exit_ok = 0;
inline constexpr int exit_input = 1;
inline constexpr int exit_identity = 2;

/// Parsed and validated command line.
struct RunConfig {
  std::string domain;
  std::string command;
  std::string spec_path;
  std::vector<double> point;  ///< empty: origin
  bool has_rho_range = false;
  double rho_min = 0.0;
  double rho_max = 0.0;
  int res_t = 48;
  int res_rho = 24;
  bool has_res = false;
  int battery_curves = 0;
  int battery_points = 0;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string svg_path;
  std::string csv_path;
  double tol_genericity = 1e-6;
  std::string view = "cylinder";
};

class UsageError : public InputError {
 public:
  using InputError::InputError;
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

inline double parse_number(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("bad number '" + s + "' in " + what);
  }
}

inline int parse_int(const std::string& s, const std::string& what) {
  const double v = parse_number(s, what);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw UsageError("expected an integer in " + what);
  return static_cast<int>(v);
}

inline std::string fixed(double v, int digits = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

inline std::string signed_int(int v) { return (v > 0 ? "+" : "") + std::to_string(v); }

}  // namespace detail

/// Parses argv-style arguments (without the program name).
inline RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  std::string point, rho_range, res, battery, seed;
  CLI::App app{"normal-field"};
  app.set_help_flag();
  app.allow_extras(false);
  app.add_option("domain", cfg.domain)
      ->required()
      ->check(CLI::IsMember({"curve", "surface", "field"}));
  app.add_option("command", cfg.command)
      ->required()
      ->check(CLI::IsMember({"analyze", "critical-points", "indices", "verify", "emit"}));
  app.add_option("--spec", cfg.spec_path);
  app.add_option("--point", point);
  app.add_option("--rho-range", rho_range);
  app.add_option("--res", res);
  app.add_option("--battery", battery);
  app.add_option("--seed", seed);
  app.add_option("--out", cfg.out_path);
  app.add_option("--svg", cfg.svg_path);
  app.add_option("--csv", cfg.csv_path);
  app.add_option("--tol-genericity", cfg.tol_genericity);
  app.add_option("--view", cfg.view)->check(CLI::IsMember({"cylinder", "sphere"}));
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (!point.empty()) {
    for (const auto& part : detail::split(point, ','))
      cfg.point.push_back(detail::parse_number(part, "--point"));
    const std::size_t want = cfg.domain == "surface" ? 3 : 2;
    if (cfg.point.size() != want)
      throw UsageError("--point needs " + std::to_string(want) + " coordinates for " + cfg.domain);
  }
  if (!rho_range.empty()) {
    const auto parts = detail::split(rho_range, ':');
    if (parts.size() != 2) throw UsageError("--rho-range is A:B");
    cfg.rho_min = detail::parse_number(parts[0], "--rho-range");
    cfg.rho_max = detail::parse_number(parts[1], "--rho-range");
    if (!(cfg.rho_min < cfg.rho_max)) throw UsageError("--rho-range needs A < B");
    cfg.has_rho_range = true;
  }
  if (!res.empty()) {
    const auto parts = detail::split(res, ',');
    if (parts.size() != 2) throw UsageError("--res is NT,NR");
    cfg.res_t = detail::parse_int(parts[0], "--res");
    cfg.res_rho = detail::parse_int(parts[1], "--res");
    if (cfg.res_t < 2 || cfg.res_rho < 2) throw UsageError("--res values must be at least 2");
    cfg.has_res = true;
  }
  if (!battery.empty()) {
    const auto parts = detail::split(battery, ',');
    if (parts.size() != 2) throw UsageError("--battery is N_CURVES,N_POINTS");
    cfg.battery_curves = detail::parse_int(parts[0], "--battery");
    cfg.battery_points = detail::parse_int(parts[1], "--battery");
    if (cfg.battery_curves < 1 || cfg.battery_points < 1)
      throw UsageError("--battery sizes must be positive");
    if (cfg.domain != "curve" || cfg.command != "verify")
      throw UsageError("--battery applies to 'curve verify'");
    if (!cfg.spec_path.empty()) throw UsageError("--battery generates its own curves; drop --spec");
  }
  if (!seed.empty()) {
    try {
      std::size_t used = 0;
      cfg.seed = std::stoull(seed, &used);
      if (used != seed.size()) throw std::invalid_argument(seed);
    } catch (const std::exception&) {
      throw UsageError("--seed must be a nonnegative integer");
    }
  }
  if (!(cfg.tol_genericity > 0.0)) throw UsageError("--tol-genericity must be positive");
  if (cfg.battery_curves == 0 && cfg.spec_path.empty()) throw UsageError("--spec is required");
  if (cfg.command == "emit" && cfg.svg_path.empty() && cfg.csv_path.empty())
    throw UsageError("emit needs --svg or --csv");
  if (cfg.domain == "surface" && !cfg.svg_path.empty())
    throw UsageError("surface output is CSV only (--csv)");
  return cfg;
}

namespace detail {

inline Vec2 point2(const RunConfig& cfg) {
  return cfg.point.empty() ? Vec2{} : Vec2{cfg.point[0], cfg.point[1]};
}

inline Vec3 point3(const RunConfig& cfg) {
  return cfg.point.empty() ? Vec3{} : Vec3{cfg.point[0], cfg.point[1], cfg.point[2]};
}

inline io::json header(const RunConfig& cfg) {
  io::json j;
  j["domain"] = cfg.domain;
  j["command"] = cfg.command;
  j["seed"] = cfg.seed;
  return j;
}

inline void no_csv(const RunConfig& cfg) {
  if (!cfg.csv_path.empty())
    throw UsageError("'" + cfg.domain + " " + cfg.command + "' has no CSV output");
}

inline void no_svg(const RunConfig& cfg) {
  if (!cfg.svg_path.empty())
    throw UsageError("'" + cfg.domain + " " + cfg.command + "' has no SVG output");
}

inline void print_critical(std::ostream& out, const std::vector<CriticalPoint>& cps) {
  out << "critical points: " << cps.size() << '\n';
  for (const auto& c : cps)
    out << "  t* = " << fixed(c.t_star) << "  rho* = " << fixed(c.rho_star) << "  1/k = "
        << fixed(c.fold_value) << "  " << to_string(c.kind) << " (" << signed_int(c.index)
        << ", D^2 " << to_string(c.d2_type) << ")\n";
}

inline void print_index_vector(std::ostream& out, const IndexReport& r) {
  auto opt = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("-"); };
  out << "r_alpha = " << r.r_alpha << "  r_beta = " << opt(r.r_beta) << "  nu = " << opt(r.nu)
      << '\n'
      << "i_N = " << r.i_N << "  i_S = " << r.i_S << '\n'
      << "n_p = " << r.n_p << "  m_p = " << r.m_p << "  N_p = " << r.N_p << '\n'
      << "w_alpha_p = " << r.w_alpha_p << "  w_beta_p = " << r.w_beta_p << '\n';
}

inline void print_checks(std::ostream& out, const std::map<std::string, bool>& checks) {
  for (const auto& [name, ok] : checks) out << "  " << (ok ? "ok    " : "FAILED") << ' ' << name << '\n';
}

inline Tolerances curve_tolerances(const RunConfig& cfg) {
  Tolerances t;
  t.genericity = cfg.tol_genericity;
  return t;
}

/// Critical points with a genericity report first, so a failure names its cause.
inline std::vector<CriticalPoint> checked_critical(const ClosedCurve& curve, Vec2 p,
                                                   const Tolerances& tol) {
  const GenericityReport g = genericity(curve, p, tol.genericity);
  if (!g.pass) throw GenericityError(g.describe());
  return critical_points(curve, p, tol);
}

inline std::pair<double, double> default_rho_range(const ClosedCurve& curve) {
  double fold_max = 0.0;
  for (int i = 0; i < 256; ++i) fold_max = std::max(fold_max, 1.0 / curve.curvature(two_pi * i / 256));
  return {-curve.extent(), 1.25 * fold_max};
}

inline int run_curve(const RunConfig& cfg, std::ostream& out, io::json& report) {
  if (cfg.battery_curves > 0) {
    no_svg(cfg);
    const auto cases = make_battery(cfg.battery_curves, cfg.battery_points, cfg.seed);
    ReportOptions opt;
    opt.tolerances = curve_tolerances(cfg);
    const auto outcomes = run_battery(cases, opt);
    int failures = 0;
    io::json rows = io::json::array();
    std::vector<IndexReport> reports;
    for (const auto& o : outcomes) {
      io::json row;
      row["curve"] = o.curve;
      row["point"] = io::to_json(o.p);
      row["ok"] = o.ok;
      row["planar_indices_agree"] = o.planar_indices_agree;
      if (!o.failure.empty()) row["failure"] = o.failure;
      if (o.report) {
        row["report"] = io::to_json(*o.report);
        reports.push_back(*o.report);
      }
      rows.push_back(row);
      if (!o.ok) ++failures;
    }
    io::json specs = io::json::array();
    for (const auto& c : cases) specs.push_back(io::to_json(c.spec));
    report["battery"] = {{"curves", cfg.battery_curves},
                         {"points_per_curve", cfg.battery_points},
                         {"specs", specs},
                         {"cases", rows},
                         {"failures", failures}};
    report["tolerances"] = io::to_json(opt.tolerances);
    if (!cfg.csv_path.empty()) io::write_text_file(cfg.csv_path, io::index_report_csv(reports));
    out << "battery: " << cfg.battery_curves << " curves x " << cfg.battery_points
        << " points (seed " << cfg.seed << ")\n"
        << "cases: " << outcomes.size() << "  failures: " << failures << '\n';
    for (const auto& o : outcomes)
      if (!o.ok)
        out << "  curve " << o.curve << " point " << o.point << ": " << o.failure << '\n';
    bool input_problem = false;
    for (const auto& o : outcomes) input_problem = input_problem || !o.report;
    if (failures == 0) return exit_ok;
    return input_problem ? exit_input : exit_identity;
  }

  const ClosedCurve curve = make_curve(io::curve_spec_from_json(io::read_json_file(cfg.spec_path)));
  const Vec2 p = point2(cfg);
  const Tolerances tol = curve_tolerances(cfg);
  report["spec"] = io::to_json(curve.spec());
  report["point"] = io::to_json(p);
  report["tolerances"] = io::to_json(tol);

  if (cfg.command == "analyze") {
    no_csv(cfg);
    no_svg(cfg);
    const int r = rotation_index(curve);
    const Evolute ev(curve);
    const GenericityReport g = genericity(curve, p, tol.genericity);
    report["length"] = curve.length();
    report["rotation_index"] = r;
    report["curvature_range"] = {curve.min_curvature(), curve.max_curvature()};
    report["nu"] = ev.degenerate() ? io::json(nullptr) : io::json(ev.nu());
    report["vertices"] = ev.cusps();
    report["winding_about_point"] = g.pass ? io::json(curve_winding(curve, p)) : io::json(nullptr);
    report["genericity"] = {{"pass", g.pass}, {"detail", g.describe()}};
    out << "length = " << fixed(curve.length()) << '\n'
        << "curvature in [" << fixed(curve.min_curvature()) << ", " << fixed(curve.max_curvature())
        << "]\n"
        << "rotation index = " << r << '\n'
        << "vertices (nu) = " << (ev.degenerate() ? std::string("none (circle)") : std::to_string(ev.nu()))
        << '\n'
        << "point (" << p.x << ", " << p.y << "): " << g.describe() << '\n';
    return exit_ok;
  }

  if (cfg.command == "critical-points") {
    no_svg(cfg);
    const auto cps = checked_critical(curve, p, tol);
    io::json list = io::json::array();
    for (const auto& c : cps) list.push_back(io::to_json(c));
    report["critical_points"] = list;
    const SegmentCounts sc = count_segments(cps);
    report["segments"] = {{"n_p", sc.n_p}, {"m_p", sc.m_p}, {"N_p", sc.N_p}};
    print_critical(out, cps);
    out << "n_p = " << sc.n_p << "  m_p = " << sc.m_p << "  N_p = " << sc.N_p << '\n';
    if (!cfg.csv_path.empty()) io::write_text_file(cfg.csv_path, io::critical_points_csv(cps));
    return exit_ok;
  }

  if (cfg.command == "indices" || cfg.command == "verify") {
    no_svg(cfg);
    checked_critical(curve, p, tol);
    ReportOptions opt;
    opt.tolerances = tol;
    opt.throw_on_mismatch = false;
    const IndexReport r = index_report(curve, p, opt);
    report["report"] = io::to_json(r);
    print_index_vector(out, r);
    if (cfg.command == "verify") {
      out << "identities:\n";
      print_checks(out, r.checks);
    }
    if (!cfg.csv_path.empty()) io::write_text_file(cfg.csv_path, io::index_report_csv({r}));
    out << (r.all_checks_pass() ? "all identities hold\n" : "IDENTITY FAILURE\n");
    return r.all_checks_pass() ? exit_ok : exit_identity;
  }

  // emit
  no_csv(cfg);
  std::vector<CriticalPoint> cps;
  const GenericityReport g = genericity(curve, p, tol.genericity);
  if (g.pass && curve.strictly_convex()) {
    cps = critical_points(curve, p, tol);
  } else {
    out << "normals omitted: " << g.describe() << '\n';
  }
  io::write_text_file(cfg.svg_path, svg::curve_plot(curve, p, cps));
  report["svg"] = cfg.svg_path;
  report["critical_points_drawn"] = cps.size();
  out << "wrote " << cfg.svg_path << '\n';
  return exit_ok;
}

inline int run_field(const RunConfig& cfg, std::ostream& out, io::json& report) {
  const ClosedCurve curve = make_curve(io::curve_spec_from_json(io::read_json_file(cfg.spec_path)));
  const Vec2 p = point2(cfg);
  const Tolerances tol = curve_tolerances(cfg);
  report["spec"] = io::to_json(curve.spec());
  report["point"] = io::to_json(p);
  report["tolerances"] = io::to_json(tol);
  const auto [auto_lo, auto_hi] = default_rho_range(curve);
  const double rho_lo = cfg.has_rho_range ? cfg.rho_min : auto_lo;
  const double rho_hi = cfg.has_rho_range ? cfg.rho_max : auto_hi;

  if (cfg.command == "analyze") {
    no_svg(cfg);
    const FieldGrid grid = field_grid(curve, rho_lo, rho_hi, cfg.res_t, cfg.res_rho, p);
    int folded = 0;
    for (const auto& s : grid.samples) folded += s.jacobian < 0.0 ? 1 : 0;
    const int i_n = pole_index(curve, Pole::north, 1e6, p);
    const int i_s = pole_index(curve, Pole::south, 1e6, p);
    report["rho_range"] = {rho_lo, rho_hi};
    report["resolution"] = {cfg.res_t, cfg.res_rho};
    report["samples"] = grid.samples.size();
    report["samples_beyond_fold"] = folded;
    report["i_N"] = i_n;
    report["i_S"] = i_s;
    out << "grid " << cfg.res_t << " x " << cfg.res_rho << " on rho in [" << fixed(rho_lo, 3)
        << ", " << fixed(rho_hi, 3) << "]: " << folded << " of " << grid.samples.size()
        << " samples beyond the fold\n"
        << "pole indices: i_N = " << i_n << "  i_S = " << i_s << '\n';
    if (!cfg.csv_path.empty()) io::write_text_file(cfg.csv_path, io::field_grid_csv(grid));
    return exit_ok;
  }

  if (cfg.command == "critical-points") {
    no_svg(cfg);
    const auto cps = checked_critical(curve, p, tol);
    io::json list = io::json::array();
    for (const auto& c : cps) list.push_back(io::to_json(c));
    report["critical_points"] = list;
    print_critical(out, cps);
    if (!cfg.csv_path.empty()) io::write_text_file(cfg.csv_path, io::critical_points_csv(cps));
    return exit_ok;
  }

  if (cfg.command == "indices" || cfg.command == "verify") {
    no_svg(cfg);
    no_csv(cfg);
    const auto cps = checked_critical(curve, p, tol);
    const int r = rotation_index(curve);
    const int i_n = pole_index(curve, Pole::north, 1e6, p);
    const int i_s = pole_index(curve, Pole::south, 1e6, p);
    int finite = 0;
    bool planar = true;
    io::json list = io::json::array();
    for (std::size_t i = 0; i < cps.size(); ++i) {
      finite += cps[i].index;
      io::json row = io::to_json(cps[i]);
      if (cfg.command == "verify") {
        const int measured = critical_point_planar_index(curve, p, cps, i);
        row["planar_index"] = measured;
        planar = planar && measured == cps[i].index;
      }
      list.push_back(row);
    }
    std::map<std::string, bool> checks;
    checks["pole_north"] = i_n == 1 + r;
    checks["pole_south"] = i_s == 1 - r;
    checks["finite_index_sum_zero"] = finite == 0;
    checks["index_sum_two"] = i_n + i_s + finite == 2;
    if (cfg.command == "verify") checks["planar_index_matches_sign"] = planar;
    bool ok = true;
    for (const auto& [name, pass] : checks) ok = ok && pass;
    report["critical_points"] = list;
    report["rotation_index"] = r;
    report["i_N"] = i_n;
    report["i_S"] = i_s;
    report["finite_index_sum"] = finite;
    report["checks"] = checks;
    report["all_checks_pass"] = ok;
    report["tolerances"]["rho0"] = 1e6;
    out << "i_N = " << i_n << "  i_S = " << i_s << "  finite sum = " << finite
        << "  (r_alpha = " << r << ")\n";
    if (cfg.command == "verify") print_checks(out, checks);
    out << (ok ? "all identities hold\n" : "IDENTITY FAILURE\n");
    return ok ? exit_ok : exit_identity;
  }

  // emit
  std::vector<CriticalPoint> cps;
  const GenericityReport g = genericity(curve, p, tol.genericity);
  if (g.pass) {
    cps = critical_points(curve, p, tol);
  } else {
    out << "critical points omitted: " << g.describe() << '\n';
  }
  report["view"] = cfg.view;
  if (cfg.view == "sphere") {
    no_csv(cfg);
    const int res_t = cfg.has_res ? cfg.res_t : 36;
    const int res_lat = cfg.has_res ? cfg.res_rho : 17;
    SphereField field = project_field(curve, p, res_t, res_lat, g.pass ? tol : Tolerances{});
    if (!g.pass) field.critical.clear();
    io::write_text_file(cfg.svg_path, svg::sphere_plot(field));
    report["i_N"] = field.i_north;
    report["i_S"] = field.i_south;
    out << "wrote " << cfg.svg_path << " (i_N = " << field.i_north << ", i_S = " << field.i_south
        << ")\n";
    return exit_ok;
  }
  const FieldGrid grid = field_grid(curve, rho_lo, rho_hi, cfg.res_t, cfg.res_rho, p);
  report["rho_range"] = {rho_lo, rho_hi};
  report["resolution"] = {cfg.res_t, cfg.res_rho};
  if (!cfg.svg_path.empty()) {
    io::write_text_file(cfg.svg_path, svg::cylinder_plot(grid, cps));
    out << "wrote " << cfg.svg_path << '\n';
  }
  if (!cfg.csv_path.empty()) {
    io::write_text_file(cfg.csv_path, io::field_grid_csv(grid));
    out << "wrote " << cfg.csv_path << '\n';
  }
  return exit_ok;
}

inline int run_surface(const RunConfig& cfg, std::ostream& out, io::json& report) {
  const Surface surface =
      make_surface(io::surface_spec_from_json(io::read_json_file(cfg.spec_path)));
  const Vec3 p = point3(cfg);
  SurfaceTolerances tol;
  tol.genericity = cfg.tol_genericity;
  report["spec"] = io::to_json(surface.spec());
  report["point"] = io::to_json(p);
  report["tolerances"] = {{"genericity", tol.genericity},
                          {"degenerate", tol.degenerate},
                          {"gradient", tol.gradient},
                          {"merge_radius", tol.merge_radius},
                          {"degree_residual", degree_residual_limit}};

  if (cfg.command == "analyze") {
    no_csv(cfg);
    io::json list = io::json::array();
    try {
      const auto us = umbilics(surface);
      for (const auto& u : us) list.push_back(io::to_json(surface.position(chart_to_direction(u))));
      out << "umbilics: " << us.size() << '\n';
      for (const auto& u : us) {
        const Vec3 x = surface.position(chart_to_direction(u));
        out << "  (" << fixed(x.x) << ", " << fixed(x.y) << ", " << fixed(x.z) << ")\n";
      }
      report["umbilics"] = list;
    } catch (const TotallyUmbilicError&) {
      out << "umbilics: every point (round sphere)\n";
      report["umbilics"] = "all";
    }
    return exit_ok;
  }

  if (cfg.command == "critical-points") {
    const auto cps = surface_critical_points(surface, p, SurfaceGrid{}, tol);
    io::json list = io::json::array();
    for (const auto& c : cps) list.push_back(io::to_json(c));
    report["critical_points"] = list;
    out << "critical points: " << cps.size() << '\n';
    for (const auto& c : cps)
      out << "  (" << fixed(c.position.x) << ", " << fixed(c.position.y) << ", "
          << fixed(c.position.z) << ")  rho* = " << fixed(c.rho_star) << "  "
          << to_string(c.d2_type) << " (" << signed_int(c.index) << ")\n";
    if (!cfg.csv_path.empty()) io::write_text_file(cfg.csv_path, io::surface_critical_csv(cps));
    return exit_ok;
  }

  if (cfg.command == "indices" || cfg.command == "verify") {
    no_csv(cfg);
    SurfaceReportOptions opt;
    opt.tolerances = tol;
    opt.throw_on_mismatch = false;
    const SurfaceIndexReport r = surface_report(surface, p, opt);
    report["report"] = io::to_json(r);
    out << "n+ = " << r.n_plus << "  n- = " << r.n_minus << "  n0 = " << r.n_zero
        << "  N_p = " << r.N_p << '\n'
        << "w_beta1_p = " << r.w_beta1_p << "  w_beta2_p = " << r.w_beta2_p
        << "  index sum = " << r.index_sum << '\n';
    if (cfg.command == "verify") {
      out << "identities:\n";
      print_checks(out, r.checks);
    }
    out << (r.all_checks_pass() ? "all identities hold\n" : "IDENTITY FAILURE\n");
    return r.all_checks_pass() ? exit_ok : exit_identity;
  }

  // emit
  const int lon = cfg.has_res ? cfg.res_t : 96;
  const int lat = cfg.has_res ? cfg.res_rho : 48;
  io::write_text_file(cfg.csv_path, io::focal_sheets_csv(surface, lon, lat));
  report["csv"] = cfg.csv_path;
  out << "wrote " << cfg.csv_path << '\n';
  return exit_ok;
}

}  // namespace detail

/// Runs one command. Never throws; the return value is the process exit code.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_args(args);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n' << grammar;
    return exit_input;
  }
  io::json report = detail::header(cfg);
  int code = exit_ok;
  try {
    if (cfg.domain == "curve") {
      code = detail::run_curve(cfg, out, report);
    } else if (cfg.domain == "field") {
      code = detail::run_field(cfg, out, report);
    } else {
      code = detail::run_surface(cfg, out, report);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n' << grammar;
    return exit_input;
  } catch (const IdentityError& e) {
    err << "identity failure: " << e.what() << '\n';
    report["error"] = {{"kind", "identity"}, {"message", e.what()}};
    code = exit_identity;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    report["error"] = {{"kind", "input"}, {"message", e.what()}};
    code = exit_input;
  }
  report["exit_code"] = code;
  if (!cfg.out_path.empty()) {
    try {
      io::write_text_file(cfg.out_path, report.dump(2) + "\n");
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return exit_input;
    }
  }
  return code;
}

}  // namespace nfield::cli
