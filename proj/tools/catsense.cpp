// catsense: phase-space data and checks for photon-added cat and compass states.

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "catsense/acceptance.hpp"
#include "catsense/catsense.hpp"

namespace fs = std::filesystem;
using namespace catsense;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_verify_failed = 1;
constexpr int exit_usage = 2;
constexpr int exit_numerical = 3;

// "1.2", "pi", "-pi/2", "3pi/4", "0.5*pi"
double parse_angle(const std::string& text) {
  static const std::regex re(R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?|[+-])?\s*\*?\s*(pi)?\s*(?:/\s*(\d+\.?\d*))?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re) || (!m[1].matched && !m[2].matched))
    throw UnsupportedSpec("cannot parse angle '" + text + "'");
  double v = 1.0;
  if (m[1].matched) {
    const std::string num = m[1].str();
    v = (num == "+" || num == "-") ? (num == "-" ? -1.0 : 1.0) : std::stod(num);
  }
  if (m[2].matched) v *= std::numbers::pi;
  if (m[3].matched) v /= std::stod(m[3].str());
  return v;
}

std::vector<double> parse_angle_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_angle(item));
  if (out.empty()) throw UnsupportedSpec("empty angle list");
  return out;
}

struct StateOptions {
  std::string kind = "cat";  // cat | compass | coherent
  std::optional<double> alpha, alpha_re, alpha_im, alpha1, alpha2;
  std::string theta = "0";
  int added = 0;
  int components = 0;

  void attach(CLI::App& app, double default_alpha) {
    fallback = default_alpha;
    app.add_option("--state", kind, "State family")->check(CLI::IsMember({"cat", "compass", "coherent"}));
    app.add_option("--alpha", alpha, "Real amplitude alpha (standard convention, a|alpha> = alpha|alpha>)");
    app.add_option("--alpha-re", alpha_re, "Re(alpha)");
    app.add_option("--alpha-im", alpha_im, "Im(alpha)");
    app.add_option("--alpha1", alpha1, "x displacement, sqrt(2) Re(alpha)");
    app.add_option("--alpha2", alpha2, "p displacement, sqrt(2) Im(alpha)");
    app.add_option("--theta", theta, "Relative phase in [0, pi]; accepts pi expressions such as pi/2");
    app.add_option("--added", added, "Photons added")->check(CLI::NonNegativeNumber);
    app.add_option("--components", components, "2 (cat) or 4 (compass); overrides --state cat/compass");
  }

  complex amplitude() const {
    const bool std_form = alpha || alpha_re || alpha_im;
    const bool quad_form = alpha1 || alpha2;
    if (std_form && quad_form) throw UnsupportedSpec("give alpha either as --alpha/--alpha-re/--alpha-im or as --alpha1/--alpha2");
    if (alpha && alpha_re) throw UnsupportedSpec("--alpha and --alpha-re are the same quantity");
    if (quad_form) return from_quadrature(alpha1.value_or(0.0), alpha2.value_or(0.0));
    if (std_form) return {alpha ? *alpha : alpha_re.value_or(0.0), alpha_im.value_or(0.0)};
    return {fallback, 0.0};
  }

  bool coherent() const { return kind == "coherent"; }

  CatSpec spec() const {
    if (coherent()) throw UnsupportedSpec("coherent state is not a cat specification");
    int comps = components;
    if (comps == 0) comps = kind == "compass" ? 4 : 2;
    CatSpec s{amplitude(), parse_angle(theta), added, comps};
    validate(s);
    return s;
  }

  FockVector fock(std::size_t dim) const {
    if (coherent()) {
      FockVector s = coherent_fock(amplitude(), dim);
      for (int k = 0; k < added; ++k) s = add_photon(s);
      return s;
    }
    return state_fock(spec(), dim);
  }

  WaveSuperposition wave() const {
    if (coherent()) {
      auto w = coherent_wave(amplitude());
      for (int k = 0; k < added; ++k) w = raise_term(w);
      return normalized(w);
    }
    return photon_added_wave(spec());
  }

  Quadrature extent() const {
    if (coherent()) {
      const auto q = to_quadrature(amplitude());
      return {std::abs(q.x0), std::abs(q.p0)};
    }
    return catsense::extent(spec());
  }

  std::string describe() const {
    if (!coherent()) return spec().describe();
    char buf[128];
    std::snprintf(buf, sizeof buf, "coherent alpha=(%.6g,%.6g) added=%d", amplitude().real(), amplitude().imag(), added);
    return buf;
  }

  io::json to_json() const {
    if (!coherent()) return io::to_json(spec());
    const auto a = amplitude();
    const auto q = to_quadrature(a);
    return {{"state", "coherent"}, {"alpha_re", a.real()}, {"alpha_im", a.imag()},
            {"alpha1", q.x0},      {"alpha2", q.p0},       {"added_photons", added}};
  }

 private:
  double fallback = 0.0;
};

struct GridOptions {
  std::size_t nx = 401, np = 401;
  std::optional<double> x_min, x_max, p_min, p_max;

  void attach(CLI::App& app) {
    app.add_option("--nx", nx, "Samples along x")->check(CLI::Range(2, 100000));
    app.add_option("--np", np, "Samples along p")->check(CLI::Range(2, 100000));
    app.add_option("--x-min", x_min);
    app.add_option("--x-max", x_max);
    app.add_option("--p-min", p_min);
    app.add_option("--p-max", p_max);
  }

  PhaseSpaceGrid grid(Quadrature ext) const {
    auto g = default_grid(ext, nx, np);
    if (x_min) g.x_min = *x_min;
    if (x_max) g.x_max = *x_max;
    if (p_min) g.p_min = *p_min;
    if (p_max) g.p_max = *p_max;
    g.validate();
    return g;
  }
};

struct OutputOptions {
  std::string path;
  std::string format = "csv";

  void attach(CLI::App& app, std::string default_path) {
    path = std::move(default_path);
    app.add_option("-o,--output", path, "Output file (metadata goes to <stem>.meta.json)");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  }

  fs::path data_path() const {
    fs::path p(path);
    if (!p.has_extension()) p += "." + format;
    return p;
  }
};

std::size_t resolve_dim(std::size_t dim, const StateOptions& st) {
  if (dim != 0) return dim;
  return st.coherent() ? recommended_dim(CatSpec{st.amplitude(), 0.0, st.added, 2}) : recommended_dim(st.spec());
}

WignerField make_field(const StateOptions& st, const std::string& backend, const PhaseSpaceGrid& g, std::size_t dim) {
  if (backend == "fock") return wigner_fock(st.fock(dim), g, st.describe());
  if (backend == "transform") return wigner_transform(st.wave(), g, st.describe());
  if (st.coherent()) throw UnsupportedSpec("closed-form backend covers two-component cats only");
  auto f = wigner_cat_closed(st.spec(), g);
  f.state_id = st.describe();
  return f;
}

io::json field_checks(const WignerField& f) {
  const double integral = integrate(f);
  const double peak = max_abs(f);
  return {{"integral", integral},
          {"integral_ok", std::abs(integral - 1.0) < 2e-3},
          {"max_abs", peak},
          {"bound_ok", peak <= 1.0 / std::numbers::pi + 1e-9},
          {"origin", origin_value(f)},
          {"negativity_volume", negativity_volume(f)}};
}

// ---------------------------------------------------------------------------

struct WignerCmd {
  StateOptions state;
  GridOptions grid;
  OutputOptions out;
  std::string backend = "fock";
  std::size_t dim = 96;
  std::optional<int> compare_with;

  void attach(CLI::App& app) {
    state.attach(app, 0.3);
    grid.attach(app);
    out.attach(app, "wigner.csv");
    app.add_option("--backend", backend, "fock, transform or closed")
        ->check(CLI::IsMember({"fock", "transform", "closed"}));
    app.add_option("--dim", dim, "Fock truncation (0 picks one from alpha)");
    app.add_option("--compare-with", compare_with,
                   "Also build the same state with this many added photons and report origin flip and fringe shift");
  }

  int run() const {
    const std::size_t d = resolve_dim(dim, state);
    const auto g = grid.grid(state.extent());
    const auto f = make_field(state, backend, g, d);
    const auto path = out.data_path();
    io::json meta{{"command", "wigner"},
                  {"state", state.to_json()},
                  {"state_id", f.state_id},
                  {"backend", to_string(f.backend)},
                  {"dim", d},
                  {"grid", io::to_json(g)},
                  {"checks", field_checks(f)}};
    std::printf("state     %s\nbackend   %s\norigin    %.10g  (pi W = %.10g)\nnegvol    %.10g\n",
                f.state_id.c_str(), to_string(f.backend), origin_value(f), std::numbers::pi * origin_value(f),
                negativity_volume(f));
    if (compare_with) {
      StateOptions ref = state;
      ref.added = *compare_with;
      const auto fr = make_field(ref, backend, g, resolve_dim(dim, ref));
      const bool flip = (origin_value(fr) > 0) != (origin_value(f) > 0);
      io::json cmp{{"added_photons", *compare_with}, {"origin", origin_value(fr)}, {"origin_sign_flip", flip}};
      std::printf("reference %s\nref origin %.10g\nsign flip %s\n", fr.state_id.c_str(), origin_value(fr),
                  flip ? "yes" : "no");
      try {
        const double period = fringe_period(fr);
        const double shift = fringe_shift(fr, f);
        cmp["fringe_period"] = period;
        cmp["fringe_shift"] = shift;
        std::printf("period    %.10g\nshift     %.10g\n", period, shift);
      } catch (const NoFringesDetected& e) {
        cmp["fringe_shift"] = nullptr;
        std::printf("shift     n/a (%s)\n", e.what());
      }
      meta["compare"] = cmp;
    }
    auto os = io::open_output(path);
    if (out.format == "csv")
      io::write_field_csv(os, f);
    else
      os << io::to_json(f).dump() << '\n';
    io::write_json(io::meta_path(path), meta);
    std::printf("wrote     %s\n", path.string().c_str());
    return exit_ok;
  }
};

struct QSweepCmd {
  std::string thetas = "0,pi/4,pi/2,3pi/4,pi";
  double alpha_min = 0.05, alpha_max = 3.0;
  std::size_t steps = 60;
  int added = 1;
  OutputOptions out;

  void attach(CLI::App& app) {
    app.add_option("--thetas", thetas, "Comma-separated phases");
    app.add_option("--alpha-min", alpha_min);
    app.add_option("--alpha-max", alpha_max);
    app.add_option("--steps", steps);
    app.add_option("--added", added, "Photons added")->check(CLI::NonNegativeNumber);
    out.attach(app, "qsweep.csv");
  }

  int run() const {
    const auto rows = q_sweep(parse_angle_list(thetas), alpha_min, alpha_max, steps, added);
    const auto path = out.data_path();
    auto os = io::open_output(path);
    if (out.format == "csv")
      io::write_sweep_csv(os, rows);
    else
      os << io::to_json(rows).dump(1) << '\n';
    double agree = 0.0;
    for (const auto& r : rows)
      if (r.q_closed) agree = std::max(agree, std::abs(*r.q_closed - r.q_oracle));
    io::json meta{{"command", "qsweep"}, {"thetas", parse_angle_list(thetas)}, {"alpha_min", alpha_min},
                  {"alpha_max", alpha_max}, {"steps", steps}, {"added_photons", added},
                  {"checks", {{"closed_vs_oracle_max", agree}}}};
    io::write_json(io::meta_path(path), meta);
    std::printf("rows      %zu\nclosed vs oracle max |dQ| %.3e\nwrote     %s\n", rows.size(), agree,
                path.string().c_str());
    return exit_ok;
  }
};

struct TilesCmd {
  StateOptions state;
  GridOptions grid;
  OutputOptions out;
  double halfwidth = default_tile_window;
  std::size_t dim = 96;

  void attach(CLI::App& app) {
    state.kind = "compass";
    state.attach(app, 2.5);
    grid.attach(app);
    out.attach(app, "tiles.csv");
    app.add_option("--halfwidth", halfwidth, "Central window half-width");
    app.add_option("--dim", dim, "Fock truncation (0 picks one from alpha)");
  }

  int run() const {
    StateOptions next = state;
    next.added = state.added + 1;
    const auto g = grid.grid(next.extent());
    const auto f0 = wigner_fock(state.fock(resolve_dim(dim, state)), g, state.describe());
    const auto f1 = wigner_fock(next.fock(resolve_dim(dim, next)), g, next.describe());
    const auto t0 = tile_extrema(f0, halfwidth);
    const auto t1 = tile_extrema(f1, halfwidth);
    const auto ic = tile_interchange(f0, f1, halfwidth);
    const double pairing = max_pairing_distance(t0, t1);

    const auto base = out.data_path();
    auto sibling = [&](int k) {
      fs::path p = base;
      p.replace_filename(base.stem().string() + "_k" + std::to_string(k) + base.extension().string());
      return p;
    };
    const auto p0 = sibling(state.added), p1 = sibling(next.added);
    for (const auto& [p, t] : {std::pair{p0, &t0}, std::pair{p1, &t1}}) {
      auto os = io::open_output(p);
      if (out.format == "csv")
        io::write_tiles_csv(os, *t);
      else
        os << io::to_json(*t).dump(1) << '\n';
    }
    io::json meta{{"command", "tiles"},
                  {"state", state.to_json()},
                  {"grid", io::to_json(g)},
                  {"halfwidth", halfwidth},
                  {"files", {p0.string(), p1.string()}},
                  {"reports", {io::to_json(t0), io::to_json(t1)}},
                  {"interchange", {{"correlation", ic.correlation}, {"origin_sign_flip", ic.origin_sign_flip},
                                   {"max_pairing_distance", pairing}}}};
    io::write_json(io::meta_path(base), meta);
    std::printf("tile area k=%d  %.6f  (/pi %.6f)\ntile area k=%d  %.6f  (/pi %.6f)\n", state.added, t0.tile_area,
                t0.planck_ratio(), next.added, t1.tile_area, t1.planck_ratio());
    std::printf("correlation   %.6f\norigin flip   %s\nmax pairing   %.6f (half tile %.6f)\nwrote         %s, %s\n",
                ic.correlation, ic.origin_sign_flip ? "yes" : "no", pairing,
                0.5 * std::min(t0.spacing_u, t0.spacing_v), p0.string().c_str(), p1.string().c_str());
    return exit_ok;
  }
};

struct SensitivityCmd {
  StateOptions state;
  OutputOptions out;
  std::string directions = "0,pi/2";
  double delta_max = 1.5;
  std::size_t steps = 150;
  std::size_t dim = 96;

  void attach(CLI::App& app) {
    state.kind = "compass";
    state.attach(app, 2.5);
    out.attach(app, "sensitivity.csv");
    app.add_option("--directions", directions, "Comma-separated direction angles in phase space");
    app.add_option("--delta-max", delta_max);
    app.add_option("--steps", steps);
    app.add_option("--dim", dim, "Fock truncation (0 picks one from alpha)");
  }

  int run() const {
    std::vector<complex> dirs;
    for (double a : parse_angle_list(directions)) dirs.push_back(std::polar(1.0, a));
    const auto curves = sensitivity_scan(state.fock(resolve_dim(dim, state)), dirs, delta_max, steps);
    const auto path = out.data_path();
    auto os = io::open_output(path);
    if (out.format == "csv")
      io::write_sensitivity_csv(os, curves);
    else
      os << io::to_json(curves).dump(1) << '\n';
    io::json firsts = io::json::array();
    for (const auto& c : curves) {
      if (c.first_zero)
        std::printf("direction (%.4f,%.4f) first minimum |delta| = %.6f\n", c.direction.real(), c.direction.imag(),
                    *c.first_zero);
      else
        std::printf("direction (%.4f,%.4f) no minimum up to %.4f\n", c.direction.real(), c.direction.imag(), delta_max);
      firsts.push_back(c.first_zero ? io::json(*c.first_zero) : io::json(nullptr));
    }
    io::json meta{{"command", "sensitivity"}, {"state", state.to_json()}, {"delta_max", delta_max},
                  {"steps", steps}, {"first_zero", firsts}};
    io::write_json(io::meta_path(path), meta);
    std::printf("wrote %s\n", path.string().c_str());
    return exit_ok;
  }
};

int verify(bool quick) {
  const auto results = acceptance::run(quick, [](const acceptance::Result& r) {
    std::printf("%s\n", acceptance::format(r).c_str());
    std::fflush(stdout);
  });
  std::vector<int> failed;
  for (const auto& r : results)
    if (!r.passed) failed.push_back(r.id);
  if (failed.empty()) {
    std::printf("all %zu criteria passed\n", results.size());
    return exit_ok;
  }
  std::printf("failed:");
  for (int id : failed) std::printf(" %d", id);
  std::printf("\n");
  return exit_verify_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wigner functions, sub-Planck tiles and photon statistics of photon-added cat states"};
  app.require_subcommand(1);

  WignerCmd wigner;
  QSweepCmd qsweep;
  TilesCmd tiles;
  SensitivityCmd sensitivity;
  bool quick = false;

  wigner.attach(*app.add_subcommand("wigner", "Sample W(x, p) on a grid"));
  qsweep.attach(*app.add_subcommand("qsweep", "Mandel Q against |alpha| for several phases"));
  tiles.attach(*app.add_subcommand("tiles", "Central tile lattice before and after adding a photon"));
  sensitivity.attach(*app.add_subcommand("sensitivity", "|<psi|D(delta)|psi>|^2 along chosen directions"));
  auto* ver = app.add_subcommand("verify", "Run the acceptance criteria");
  ver->add_flag("--quick", quick, "Fast subset");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (app.got_subcommand("wigner")) return wigner.run();
    if (app.got_subcommand("qsweep")) return qsweep.run();
    if (app.got_subcommand("tiles")) return tiles.run();
    if (app.got_subcommand("sensitivity")) return sensitivity.run();
    if (app.got_subcommand("verify")) return verify(quick);
  } catch (const spec_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const numerical_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_numerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_numerical;
  }
  return exit_usage;
}
