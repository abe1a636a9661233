#pragma once

// Spec files, JSON reports, and CSV tables.

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"  // nlohmann/json (vendor/)

#include "normal_field/curve.hpp"
#include "normal_field/errors.hpp"
#include "normal_field/evolute.hpp"
#include "normal_field/normal_field.hpp"
#include "normal_field/surface.hpp"

namespace nfield::io {

using json = nlohmann::json;

inline CurveSpec curve_spec_from_json(const json& j) {
  try {
    if (j.contains("preset")) {
      const auto& p = j.at("preset");
      return CurveSpec::from_preset(p.at("name").get<std::string>(),
                                    p.value("params", std::vector<double>{}));
    }
    if (j.contains("fourier")) {
      const auto& f = j.at("fourier");
      CurveSpec s;
      s.ax = f.value("ax", std::vector<double>{});
      s.bx = f.value("bx", std::vector<double>{});
      s.ay = f.value("ay", std::vector<double>{});
      s.by = f.value("by", std::vector<double>{});
      return s;
    }
  } catch (const json::exception& e) {
    throw SpecError(std::string("malformed curve spec: ") + e.what());
  }
  throw SpecError("curve spec needs a \"fourier\" or \"preset\" object");
}

inline json to_json(const CurveSpec& s) {
  if (!s.preset.empty()) {
    const CurveSpec canonical = CurveSpec::from_preset(s.preset, s.params);
    if (canonical.ax == s.ax && canonical.bx == s.bx && canonical.ay == s.ay && canonical.by == s.by)
      return {{"preset", {{"name", s.preset}, {"params", s.params}}}};
  }
  return {{"fourier", {{"ax", s.ax}, {"bx", s.bx}, {"ay", s.ay}, {"by", s.by}}}};
}

inline SurfaceSpec surface_spec_from_json(const json& j) {
  try {
    if (j.contains("preset")) {
      const auto& p = j.at("preset");
      const auto name = p.at("name").get<std::string>();
      const auto params = p.value("params", std::vector<double>{});
      if (name == "ellipsoid" && params.size() == 3)
        return SurfaceSpec::ellipsoid(params[0], params[1], params[2]);
      if (name == "sphere" && params.size() <= 1) {
        const double r = params.empty() ? 1.0 : params[0];
        return SurfaceSpec::ellipsoid(r, r, r);
      }
      throw SpecError("unknown surface preset '" + name + "' or wrong parameter count");
    }
    if (j.contains("radial_harmonics")) {
      std::vector<Harmonic> terms;
      for (const auto& t : j.at("radial_harmonics")) {
        if (!t.is_array() || t.size() != 3) throw SpecError("harmonic entries are [l, m, coeff]");
        terms.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<double>()});
      }
      return SurfaceSpec::radial(std::move(terms));
    }
  } catch (const json::exception& e) {
    throw SpecError(std::string("malformed surface spec: ") + e.what());
  }
  throw SpecError("surface spec needs a \"preset\" or \"radial_harmonics\" entry");
}

inline json to_json(const SurfaceSpec& s) {
  if (s.kind == SurfaceSpec::Kind::ellipsoid)
    return {{"preset", {{"name", "ellipsoid"}, {"params", s.axes}}}};
  json terms = json::array();
  for (const auto& h : s.harmonics) terms.push_back({h.l, h.m, h.coeff});
  return {{"radial_harmonics", terms}};
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw SpecError("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw Error("write to '" + path + "' failed");
}

inline json to_json(Vec2 p) { return json::array({p.x, p.y}); }
inline json to_json(const Vec3& p) { return json::array({p.x, p.y, p.z}); }

inline json to_json(const Tolerances& t) {
  return {{"genericity", t.genericity},
          {"degenerate", t.degenerate},
          {"root_bisection", t.roots.tolerance},
          {"root_samples", t.roots.samples},
          {"degree_residual", degree_residual_limit}};
}

inline json to_json(const CriticalPoint& c) {
  return {{"t_star", c.t_star},       {"rho_star", c.rho_star},
          {"kind", to_string(c.kind)}, {"index", c.index},
          {"d2_type", to_string(c.d2_type)}, {"fold_value", c.fold_value}};
}

inline json to_json(const IndexReport& r) {
  json j;
  j["p"] = to_json(r.p);
  j["r_alpha"] = r.r_alpha;
  j["r_beta"] = r.r_beta ? json(*r.r_beta) : json(nullptr);
  j["nu"] = r.nu ? json(*r.nu) : json(nullptr);
  j["i_N"] = r.i_N;
  j["i_S"] = r.i_S;
  j["n_p"] = r.n_p;
  j["m_p"] = r.m_p;
  j["N_p"] = r.N_p;
  j["w_alpha_p"] = r.w_alpha_p;
  j["w_beta_p"] = r.w_beta_p;
  j["finite_index_sum"] = r.finite_index_sum;
  j["matrix_formula"] = {{"r_alpha", r.matrix.r_alpha},
                         {"r_beta", r.matrix.r_beta ? json(*r.matrix.r_beta) : json(nullptr)},
                         {"w_alpha_p", r.matrix.w_alpha_p},
                         {"w_beta_p", r.matrix.w_beta_p}};
  j["r_beta_cusp_formula"] = r.r_beta_formula ? json(*r.r_beta_formula) : json(nullptr);
  json cps = json::array();
  for (const auto& c : r.critical) cps.push_back(to_json(c));
  j["critical_points"] = cps;
  j["checks"] = r.checks;
  j["all_checks_pass"] = r.all_checks_pass();
  j["tolerances"] = to_json(r.tolerances);
  j["tolerances"]["rho0"] = r.rho0;
  return j;
}

inline json to_json(const SurfaceCriticalPoint& c) {
  return {{"position", to_json(c.position)}, {"rho_star", c.rho_star},
          {"d2_type", to_string(c.d2_type)}, {"index", c.index},
          {"k1", c.k1},                      {"k2", c.k2},
          {"sheet_rule_agrees", c.sheet_rule_agrees}};
}

inline json to_json(const SurfaceIndexReport& r) {
  json j;
  j["p"] = to_json(r.p);
  j["n_plus"] = r.n_plus;
  j["n_minus"] = r.n_minus;
  j["n_zero"] = r.n_zero;
  j["w_beta1_p"] = r.w_beta1_p;
  j["w_beta2_p"] = r.w_beta2_p;
  j["deg_beta1"] = r.deg_beta1;
  j["deg_beta2"] = r.deg_beta2;
  j["N_p"] = r.N_p;
  j["d"] = r.d;
  j["index_sum"] = r.index_sum;
  json cps = json::array();
  for (const auto& c : r.critical) cps.push_back(to_json(c));
  j["critical_points"] = cps;
  j["checks"] = r.checks;
  j["all_checks_pass"] = r.all_checks_pass();
  return j;
}

namespace detail {

inline std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace detail

inline constexpr const char* critical_csv_header = "t_star,rho_star,kind,index,fold_value";
inline constexpr const char* index_csv_header =
    "r_alpha,r_beta,nu,i_N,i_S,n_p,m_p,N_p,w_alpha_p,w_beta_p";

inline std::string critical_points_csv(const std::vector<CriticalPoint>& points) {
  std::ostringstream os;
  os << critical_csv_header << '\n';
  for (const auto& c : points)
    os << detail::num(c.t_star) << ',' << detail::num(c.rho_star) << ',' << to_string(c.kind)
       << ',' << c.index << ',' << detail::num(c.fold_value) << '\n';
  return os.str();
}

inline std::string index_report_csv(const std::vector<IndexReport>& reports) {
  std::ostringstream os;
  os << index_csv_header << '\n';
  auto opt = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); };
  for (const auto& r : reports)
    os << r.r_alpha << ',' << opt(r.r_beta) << ',' << opt(r.nu) << ',' << r.i_N << ',' << r.i_S
       << ',' << r.n_p << ',' << r.m_p << ',' << r.N_p << ',' << r.w_alpha_p << ','
       << r.w_beta_p << '\n';
  return os.str();
}

inline std::string field_grid_csv(const FieldGrid& g) {
  std::ostringstream os;
  os << "t,rho,F_x,F_y,jacobian\n";
  for (const auto& s : g.samples)
    os << detail::num(s.t) << ',' << detail::num(s.rho) << ',' << detail::num(s.value.x) << ','
       << detail::num(s.value.y) << ',' << detail::num(s.jacobian) << '\n';
  return os.str();
}

inline std::string surface_critical_csv(const std::vector<SurfaceCriticalPoint>& points) {
  std::ostringstream os;
  os << "x,y,z,rho_star,d2_type,index,k1,k2\n";
  for (const auto& c : points)
    os << detail::num(c.position.x) << ',' << detail::num(c.position.y) << ','
       << detail::num(c.position.z) << ',' << detail::num(c.rho_star) << ','
       << to_string(c.d2_type) << ',' << c.index << ',' << detail::num(c.k1) << ','
       << detail::num(c.k2) << '\n';
  return os.str();
}

/// Focal sheet point clouds on a longitude/latitude sample of the domain.
inline std::string focal_sheets_csv(const Surface& surface, int longitudes = 96,
                                    int latitudes = 48) {
  std::ostringstream os;
  os << "sheet,x,y,z\n";
  for (int j = 0; j < latitudes; ++j) {
    const double theta = std::numbers::pi * (j + 0.5) / latitudes;
    for (int i = 0; i < longitudes; ++i) {
      const double phi = two_pi * i / longitudes;
      const Vec3 d{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                   std::cos(theta)};
      const PrincipalData pd = principal_data(surface, d);
      os << "1," << detail::num(pd.beta1.x) << ',' << detail::num(pd.beta1.y) << ','
         << detail::num(pd.beta1.z) << '\n';
      os << "2," << detail::num(pd.beta2.x) << ',' << detail::num(pd.beta2.y) << ','
         << detail::num(pd.beta2.z) << '\n';
    }
  }
  return os.str();
}

}  // namespace nfield::io
