#pragma once

// CSV and JSON export. Floats are written with 17 significant digits so that
// files round-trip exactly and identical runs give identical bytes.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "catsense/errors.hpp"
#include "catsense/fock.hpp"
#include "catsense/statistics.hpp"
#include "catsense/subplanck.hpp"
#include "catsense/wigner.hpp"

namespace catsense::io {

using json = nlohmann::ordered_json;

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_field_csv(std::ostream& os, const WignerField& f) {
  os << "x,p,W\n";
  const auto& g = f.grid;
  for (std::size_t i = 0; i < g.nx; ++i)
    for (std::size_t j = 0; j < g.np; ++j) os << fmt(g.x(i)) << ',' << fmt(g.p(j)) << ',' << fmt(f.at(i, j)) << '\n';
}

inline void write_tiles_csv(std::ostream& os, const TileReport& r) {
  os << "x,p,W,kind\n";
  for (const auto& e : r.extrema)
    os << fmt(e.x) << ',' << fmt(e.p) << ',' << fmt(e.value) << ',' << to_string(e.kind) << '\n';
}

inline void write_sensitivity_csv(std::ostream& os, const std::vector<SensitivityCurve>& curves) {
  os << "re_delta,im_delta,overlap_sq\n";
  for (const auto& c : curves)
    for (const auto& s : c.samples)
      os << fmt(s.delta.real()) << ',' << fmt(s.delta.imag()) << ',' << fmt(s.overlap_sq) << '\n';
}

inline void write_sweep_csv(std::ostream& os, const std::vector<QSweepRow>& rows) {
  os << "theta,alpha_abs,q_closed,q_oracle,class\n";
  for (const auto& r : rows)
    os << fmt(r.theta) << ',' << fmt(r.alpha_abs) << ',' << (r.q_closed ? fmt(*r.q_closed) : std::string("nan"))
       << ',' << fmt(r.q_oracle) << ',' << to_string(r.cls) << '\n';
}

inline json to_json(const PhaseSpaceGrid& g) {
  return {{"x_min", g.x_min}, {"x_max", g.x_max}, {"p_min", g.p_min},
          {"p_max", g.p_max}, {"nx", g.nx},       {"np", g.np}};
}

inline json to_json(const CatSpec& s) {
  const auto q = to_quadrature(s.alpha);
  return {{"components", s.components},
          {"alpha_re", s.alpha.real()},
          {"alpha_im", s.alpha.imag()},
          {"alpha1", q.x0},
          {"alpha2", q.p0},
          {"theta", s.theta},
          {"added_photons", s.added_photons}};
}

inline json to_json(const WignerField& f) {
  json values = json::array();
  const auto& g = f.grid;
  for (std::size_t i = 0; i < g.nx; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < g.np; ++j) row.push_back(f.at(i, j));
    values.push_back(std::move(row));
  }
  return {{"backend", to_string(f.backend)}, {"state", f.state_id}, {"grid", to_json(g)}, {"W", std::move(values)}};
}

inline json to_json(const TileReport& r) {
  json ex = json::array();
  for (const auto& e : r.extrema) ex.push_back({{"x", e.x}, {"p", e.p}, {"W", e.value}, {"kind", to_string(e.kind)}});
  return {{"extrema", std::move(ex)},
          {"center", {{"x", r.center.x}, {"p", r.center.p}, {"kind", to_string(r.center.kind)}}},
          {"lattice_angle", r.lattice_angle},
          {"spacing_u", r.spacing_u},
          {"spacing_v", r.spacing_v},
          {"tile_area", r.tile_area},
          {"planck_ratio", r.planck_ratio()},
          {"window", to_json(r.window)}};
}

inline json to_json(const std::vector<SensitivityCurve>& curves) {
  json out = json::array();
  for (const auto& c : curves) {
    json samples = json::array();
    for (const auto& s : c.samples)
      samples.push_back({{"re_delta", s.delta.real()}, {"im_delta", s.delta.imag()}, {"overlap_sq", s.overlap_sq}});
    json first = c.first_zero ? json(*c.first_zero) : json(nullptr);
    out.push_back({{"direction", {c.direction.real(), c.direction.imag()}},
                   {"first_zero", std::move(first)},
                   {"samples", std::move(samples)}});
  }
  return out;
}

inline json to_json(const std::vector<QSweepRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    json qc = r.q_closed ? json(*r.q_closed) : json(nullptr);
    out.push_back({{"theta", r.theta},
                   {"alpha_abs", r.alpha_abs},
                   {"q_closed", std::move(qc)},
                   {"q_oracle", r.q_oracle},
                   {"class", to_string(r.cls)}});
  }
  return out;
}

/// Opens `path` for writing, creating parent directories.
inline std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return os;
}

/// `<stem>.meta.json` next to `data_path`.
inline std::filesystem::path meta_path(const std::filesystem::path& data_path) {
  auto p = data_path;
  p.replace_extension(".meta.json");
  return p;
}

inline void write_json(const std::filesystem::path& path, const json& j) {
  auto os = open_output(path);
  os << j.dump(2) << '\n';
}

}  // namespace catsense::io
