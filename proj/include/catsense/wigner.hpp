#pragma once

// Wigner functions on rectangular phase-space grids, from three independent
// routes, and the scalar observables read off them.
//
// Normalization throughout: integral of W over dx dp is 1, vacuum peak is 1/pi.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "catsense/errors.hpp"
#include "catsense/fock.hpp"
#include "catsense/parallel.hpp"
#include "catsense/wavefunction.hpp"

namespace catsense {

struct PhaseSpaceGrid {
  double x_min = -6.0;
  double x_max = 6.0;
  double p_min = -6.0;
  double p_max = 6.0;
  std::size_t nx = 401;
  std::size_t np = 401;

  double dx() const { return (x_max - x_min) / static_cast<double>(nx - 1); }
  double dp() const { return (p_max - p_min) / static_cast<double>(np - 1); }
  double x(std::size_t i) const { return x_min + static_cast<double>(i) * dx(); }
  double p(std::size_t j) const { return p_min + static_cast<double>(j) * dp(); }

  void validate() const {
    if (nx < 2 || np < 2) throw UnsupportedSpec("grid needs at least 2 samples per axis");
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(p_min) ||
        !std::isfinite(p_max) || !(x_max > x_min) || !(p_max > p_min))
      throw UnsupportedSpec("grid bounds must be finite with max > min");
  }

  friend bool operator==(const PhaseSpaceGrid&, const PhaseSpaceGrid&) = default;
};

/// Default bounds: lobes plus six units of margin in x, and at least three
/// fringe periods beyond the lobes in p.
inline PhaseSpaceGrid default_grid(Quadrature extent, std::size_t nx = 401, std::size_t np = 401) {
  const double hx = 6.0 + extent.x0;
  const double hp = 6.0 + extent.p0 + std::numbers::pi / std::max(extent.x0, 1.0);
  return {-hx, hx, -hp, hp, nx, np};
}

/// Largest quadrature displacement over the branches of a spec.
inline Quadrature extent(const CatSpec& spec) {
  Quadrature q{0.0, 0.0};
  for (const auto& [amp, weight] : branches(spec)) {
    const auto b = to_quadrature(amp);
    q.x0 = std::max(q.x0, std::abs(b.x0));
    q.p0 = std::max(q.p0, std::abs(b.p0));
  }
  return q;
}

inline PhaseSpaceGrid default_grid(const CatSpec& spec, std::size_t nx = 401, std::size_t np = 401) {
  return default_grid(extent(spec), nx, np);
}

enum class Backend { closed_form, transform, fock };

inline const char* to_string(Backend b) {
  switch (b) {
    case Backend::closed_form: return "closed_form";
    case Backend::transform: return "transform";
    case Backend::fock: return "fock";
  }
  return "?";
}

/// Sampled W(x, p), row-major with x as the slow index.
struct WignerField {
  PhaseSpaceGrid grid;
  std::vector<double> values;
  Backend backend = Backend::fock;
  std::string state_id;

  double at(std::size_t i, std::size_t j) const { return values[i * grid.np + j]; }
  double& at(std::size_t i, std::size_t j) { return values[i * grid.np + j]; }
};

namespace detail {

inline WignerField make_field(const PhaseSpaceGrid& grid, Backend backend, std::string id) {
  grid.validate();
  return {grid, std::vector<double>(grid.nx * grid.np, 0.0), backend, std::move(id)};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Fock backend

/// W(x, p) = sum_{m,n} rho_mn W_{mn}(x, p) with the Laguerre matrix elements
/// generated by a stable two-index recurrence in beta = (x + i p)/sqrt(2).
inline WignerField wigner_fock(const FockVector& state, const PhaseSpaceGrid& grid,
                               std::string state_id = {}) {
  check_truncation(state);
  auto field = detail::make_field(grid, Backend::fock, std::move(state_id));
  const FockVector psi = state.normalized();
  // Amplitudes below 1e-18 contribute nothing at double precision; skipping
  // them keeps generous truncations cheap.
  std::size_t dim = psi.dim();
  while (dim > 1 && std::abs(psi[dim - 1]) < 1e-18) --dim;

  // Upper triangle of rho, row by row.
  std::vector<complex> rho;
  rho.reserve(dim * (dim + 1) / 2);
  for (std::size_t m = 0; m < dim; ++m)
    for (std::size_t n = m; n < dim; ++n) rho.push_back(psi[m] * std::conj(psi[n]));
  std::vector<double> root(dim + 1);
  for (std::size_t k = 0; k <= dim; ++k) root[k] = std::sqrt(static_cast<double>(k));

  parallel_for(grid.nx, [&](std::size_t i) {
    std::vector<complex> w(dim);
    const double x = grid.x(i);
    for (std::size_t j = 0; j < grid.np; ++j) {
      const complex a{x / std::numbers::sqrt2, grid.p(j) / std::numbers::sqrt2};
      const complex two_a = 2.0 * a;
      const complex two_a_conj = std::conj(two_a);
      w[0] = std::exp(-2.0 * std::norm(a)) / std::numbers::pi;
      std::size_t idx = 0;
      double acc = rho[idx++].real() * w[0].real();
      for (std::size_t n = 1; n < dim; ++n) {
        w[n] = two_a * w[n - 1] / root[n];
        acc += 2.0 * std::real(rho[idx++] * w[n]);
      }
      for (std::size_t m = 1; m < dim; ++m) {
        complex temp = w[m];
        w[m] = (two_a_conj * temp - root[m] * w[m - 1]) / root[m];
        acc += std::real(rho[idx++] * w[m]);
        for (std::size_t n = m + 1; n < dim; ++n) {
          const complex next = (two_a * w[n - 1] - root[m] * temp) / root[n];
          temp = w[n];
          w[n] = next;
          acc += 2.0 * std::real(rho[idx++] * w[n]);
        }
      }
      field.at(i, j) = acc;
    }
  });
  return field;
}

// ---------------------------------------------------------------------------
// Transform backend

namespace detail {

inline constexpr double transform_tolerance = 1e-10;
inline constexpr double transform_min_step = 1.0 / 512.0;

}  // namespace detail

/// W(x, p) = (1/pi) * integral psi^*(x+y) psi(x-y) e^{2 i p y} dy over
/// |y| <= 6 + max|d1| + 3, by the trapezoid rule with step halving until
/// successive estimates agree to 1e-10 on the whole row.
inline WignerField wigner_transform(const WaveSuperposition& psi_in, const PhaseSpaceGrid& grid,
                                    std::string state_id = {}) {
  auto field = detail::make_field(grid, Backend::transform, std::move(state_id));
  const WaveSuperposition psi = psi_in.is_normalized() ? psi_in : normalized(psi_in);
  const double half_range = 6.0 + psi.extent().x0 + 3.0;
  const double h0 = 0.25;
  const auto base_nodes = static_cast<long>(std::ceil(half_range / h0));
  const double length = static_cast<double>(base_nodes) * h0;

  parallel_for(grid.nx, [&](std::size_t i) {
    const double x = grid.x(i);
    std::vector<double> sum(grid.np, 0.0);
    const complex step_phase_base{0.0, 2.0 * grid.dp()};
    auto add_node = [&](double y) {
      const complex g = std::conj(psi(x + y)) * psi(x - y);
      if (g == complex{0.0, 0.0}) return;
      complex rot = g * std::polar(1.0, 2.0 * grid.p_min * y);
      const complex step = std::exp(step_phase_base * y);
      for (std::size_t j = 0; j < grid.np; ++j) {
        sum[j] += rot.real();
        rot *= step;
      }
    };
    for (long k = -base_nodes; k <= base_nodes; ++k) add_node(static_cast<double>(k) * h0);

    double h = h0;
    long intervals = 2 * base_nodes;
    std::vector<double> prev(grid.np);
    for (std::size_t j = 0; j < grid.np; ++j) prev[j] = h * sum[j] / std::numbers::pi;
    for (;;) {
      const double half = 0.5 * h;
      if (half < detail::transform_min_step)
        throw QuadratureNotConverged("Wigner transform row at x = " + std::to_string(x));
      for (long m = 0; m < intervals; ++m) add_node(-length + static_cast<double>(2 * m + 1) * half);
      intervals *= 2;
      h = half;
      double diff = 0.0;
      for (std::size_t j = 0; j < grid.np; ++j) {
        const double cur = h * sum[j] / std::numbers::pi;
        diff = std::max(diff, std::abs(cur - prev[j]));
        prev[j] = cur;
      }
      if (diff < detail::transform_tolerance) break;
    }
    for (std::size_t j = 0; j < grid.np; ++j) field.at(i, j) = prev[j];
  });
  return field;
}

// ---------------------------------------------------------------------------
// Closed-form backend for two-component cats, k in {0, 1}

/// Pointwise components in an unnormalized scale
/// (Gaussians of unit peak); `scale` maps their sum onto a unit-integral W.
/// A = alpha1^2 + alpha2^2 = 2|alpha|^2 is the squared quadrature displacement.
struct ClosedFormCat {
  double a1 = 0.0;
  double a2 = 0.0;
  double theta = 0.0;
  int added = 0;
  double scale = 0.0;

  explicit ClosedFormCat(const CatSpec& spec) {
    validate(spec);
    if (spec.components != 2) throw UnsupportedSpec("closed form covers two-component cats only");
    if (spec.added_photons > 1) throw UnsupportedSpec("closed form covers k = 0 and k = 1");
    if (spec.added_photons == 1 && std::abs(spec.theta) > 1e-12)
      throw UnsupportedSpec("closed form for k = 1 is the even cat (theta = 0)");
    const auto q = to_quadrature(spec.alpha);
    a1 = q.x0;
    a2 = q.p0;
    theta = spec.theta;
    added = spec.added_photons;
    const double A = a1 * a1 + a2 * a2;
    const double overlap = std::exp(-A);
    if (added == 0) {
      // W++ and W-- integrate to pi each, the interference term to 2 pi e^{-A} cos(theta).
      scale = 1.0 / (std::numbers::pi * (2.0 + 2.0 * overlap * std::cos(theta)));
    } else {
      // W++ + W-- integrate to 2 pi^{3/2} (2 + A), interference to 2 pi^{3/2} (2 - A) e^{-A}.
      scale = 1.0 / (2.0 * std::pow(std::numbers::pi, 1.5) * ((2.0 + A) + (2.0 - A) * overlap));
    }
  }

  double squared_displacement() const { return a1 * a1 + a2 * a2; }

  /// W++ (sign = +1) or W-- (sign = -1).
  double localized(double x, double p, int sign) const {
    const double u = x - sign * a1;
    const double v = p - sign * a2;
    const double gauss = std::exp(-(u * u + v * v));
    if (added == 0) return gauss;
    const double A = squared_displacement();
    return std::sqrt(std::numbers::pi) *
           (4.0 * (x * (x - sign * a1) + p * (p - sign * a2)) - 2.0 + A) * gauss;
  }

  /// W+- + W-+.
  double interference(double x, double p) const {
    const double s = a2 * x - a1 * p;
    const double envelope = std::exp(-(x * x + p * p));
    if (added == 0) return 2.0 * envelope * std::cos(2.0 * s - theta);
    const double A = squared_displacement();
    return 4.0 * std::sqrt(std::numbers::pi) *
           (2.0 * s * std::sin(2.0 * s) + (2.0 * (x * x + p * p) - 1.0 - 0.5 * A) * std::cos(2.0 * s)) *
           envelope;
  }

  double operator()(double x, double p) const {
    return scale * (localized(x, p, +1) + localized(x, p, -1) + interference(x, p));
  }
};

struct ClosedFormComponents {
  WignerField plus;           ///< W++ (unscaled)
  WignerField minus;          ///< W-- (unscaled)
  WignerField interference;   ///< W+- + W-+ (unscaled)
  double scale = 0.0;
};

inline ClosedFormComponents wigner_cat_closed_components(const CatSpec& spec, const PhaseSpaceGrid& grid) {
  const ClosedFormCat cf(spec);
  ClosedFormComponents out{detail::make_field(grid, Backend::closed_form, spec.describe() + " W++"),
                           detail::make_field(grid, Backend::closed_form, spec.describe() + " W--"),
                           detail::make_field(grid, Backend::closed_form, spec.describe() + " W+-+W-+"),
                           cf.scale};
  for (std::size_t i = 0; i < grid.nx; ++i)
    for (std::size_t j = 0; j < grid.np; ++j) {
      const double x = grid.x(i), p = grid.p(j);
      out.plus.at(i, j) = cf.localized(x, p, +1);
      out.minus.at(i, j) = cf.localized(x, p, -1);
      out.interference.at(i, j) = cf.interference(x, p);
    }
  return out;
}

inline WignerField wigner_cat_closed(const CatSpec& spec, const PhaseSpaceGrid& grid) {
  const ClosedFormCat cf(spec);
  auto field = detail::make_field(grid, Backend::closed_form, spec.describe());
  for (std::size_t i = 0; i < grid.nx; ++i)
    for (std::size_t j = 0; j < grid.np; ++j) field.at(i, j) = cf(grid.x(i), grid.p(j));
  return field;
}

/// Origin value of the k = 1 even cat, times pi, including the Gaussian tails:
/// -[(4 + 2A) + 2(2 - A)e^{-A}] / (2[(2 + A) + (2 - A)e^{-A}]).
inline double photon_added_cat_origin_full(double A) {
  const double e = std::exp(-A);
  return -((4.0 + 2.0 * A) + 2.0 * (2.0 - A) * e) / (2.0 * ((2.0 + A) + (2.0 - A) * e));
}

/// Same with the interference contribution only, -(4 + 2A) / (2[(2 + A) + (2 - A)e^{-A}]);
/// the factor 2 converts the unit-peak scale to the unit-integral one.
inline double photon_added_cat_origin_interference(double A) {
  const double e = std::exp(-A);
  return -(4.0 + 2.0 * A) / (2.0 * ((2.0 + A) + (2.0 - A) * e));
}

// ---------------------------------------------------------------------------
// Observables

/// 2-D trapezoid rule.
inline double integrate(const WignerField& f) {
  const auto& g = f.grid;
  double s = 0.0;
  for (std::size_t i = 0; i < g.nx; ++i) {
    const double wi = (i == 0 || i + 1 == g.nx) ? 0.5 : 1.0;
    for (std::size_t j = 0; j < g.np; ++j) {
      const double wj = (j == 0 || j + 1 == g.np) ? 0.5 : 1.0;
      s += wi * wj * f.at(i, j);
    }
  }
  return s * g.dx() * g.dp();
}

inline double max_abs(const WignerField& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

/// Sup-norm distance; grids must match.
inline double sup_distance(const WignerField& a, const WignerField& b) {
  if (!(a.grid == b.grid)) throw GridMismatch("fields sampled on different grids");
  double m = 0.0;
  for (std::size_t k = 0; k < a.values.size(); ++k) m = std::max(m, std::abs(a.values[k] - b.values[k]));
  return m;
}

/// Bilinear interpolation; points outside the grid are clamped to the edge.
inline double value_at(const WignerField& f, double x, double p) {
  const auto& g = f.grid;
  const double fx = std::clamp((x - g.x_min) / g.dx(), 0.0, static_cast<double>(g.nx - 1));
  const double fp = std::clamp((p - g.p_min) / g.dp(), 0.0, static_cast<double>(g.np - 1));
  const auto i = std::min(static_cast<std::size_t>(fx), g.nx - 2);
  const auto j = std::min(static_cast<std::size_t>(fp), g.np - 2);
  const double tx = fx - static_cast<double>(i);
  const double tp = fp - static_cast<double>(j);
  return (1 - tx) * (1 - tp) * f.at(i, j) + tx * (1 - tp) * f.at(i + 1, j) +
         (1 - tx) * tp * f.at(i, j + 1) + tx * tp * f.at(i + 1, j + 1);
}

inline double origin_value(const WignerField& f) { return value_at(f, 0.0, 0.0); }

/// Integral of the negative part, (|W| - W)/2.
inline double negativity_volume(const WignerField& f) {
  auto neg = f;
  for (auto& v : neg.values) v = v < 0.0 ? -v : 0.0;
  return integrate(neg);
}

/// Integral over p at each grid x (trapezoid).
inline std::vector<double> marginal_x(const WignerField& f) {
  const auto& g = f.grid;
  std::vector<double> m(g.nx, 0.0);
  for (std::size_t i = 0; i < g.nx; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < g.np; ++j) s += ((j == 0 || j + 1 == g.np) ? 0.5 : 1.0) * f.at(i, j);
    m[i] = s * g.dp();
  }
  return m;
}

enum class Axis { x, p };

struct ProfilePoint {
  double coord;
  double value;
};

/// Cut through the origin: along p at x = 0 (Axis::p) or along x at p = 0 (Axis::x).
inline std::vector<ProfilePoint> fringe_profile(const WignerField& f, Axis axis) {
  const auto& g = f.grid;
  std::vector<ProfilePoint> out;
  if (axis == Axis::p) {
    out.reserve(g.np);
    for (std::size_t j = 0; j < g.np; ++j) out.push_back({g.p(j), value_at(f, 0.0, g.p(j))});
  } else {
    out.reserve(g.nx);
    for (std::size_t i = 0; i < g.nx; ++i) out.push_back({g.x(i), value_at(f, g.x(i), 0.0)});
  }
  return out;
}

/// Sign changes of a profile restricted to [from, to], located by linear
/// interpolation between samples.
inline std::vector<double> zero_crossings(const std::vector<ProfilePoint>& prof, double from, double to) {
  std::vector<double> z;
  for (std::size_t k = 0; k + 1 < prof.size(); ++k) {
    const auto& a = prof[k];
    const auto& b = prof[k + 1];
    if (a.coord < from || b.coord > to) continue;
    if ((a.value < 0.0) != (b.value < 0.0) && a.value != b.value) {
      z.push_back(a.coord + (b.coord - a.coord) * a.value / (a.value - b.value));
    }
  }
  return z;
}

namespace detail {

inline constexpr double fringe_floor = 1e-6;

inline void require_fringes(const std::vector<ProfilePoint>& prof) {
  double m = 0.0;
  for (const auto& pt : prof) m = std::max(m, std::abs(pt.value));
  if (m < fringe_floor) throw NoFringesDetected("interference amplitude below 1e-6");
}

}  // namespace detail

/// Fringe period along p through the origin: twice the mean spacing of the two
/// zero crossings nearest the origin on each side.
inline double fringe_period(const WignerField& f) {
  const auto prof = fringe_profile(f, Axis::p);
  detail::require_fringes(prof);
  auto z = zero_crossings(prof, f.grid.p_min, f.grid.p_max);
  std::vector<double> below, above;
  for (double c : z) (c < 0.0 ? below : above).push_back(c);
  if (below.size() < 2 || above.size() < 2) throw NoFringesDetected("fewer than four zero crossings");
  std::sort(below.begin(), below.end(), [](double a, double b) { return a > b; });
  std::sort(above.begin(), above.end());
  const double span = above[1] - below[1];
  return 2.0 * span / 3.0;
}

/// Carrier phase of a profile at the origin for angular frequency omega:
/// least-squares fit of a cos(omega p) + b sin(omega p) over one period.
inline double carrier_phase(const std::vector<ProfilePoint>& prof, double omega) {
  const double half = std::numbers::pi / omega;
  double cc = 0, ss = 0, cs = 0, fc = 0, fs = 0;
  for (const auto& pt : prof) {
    if (std::abs(pt.coord) > half) continue;
    const double c = std::cos(omega * pt.coord);
    const double s = std::sin(omega * pt.coord);
    cc += c * c;
    ss += s * s;
    cs += c * s;
    fc += pt.value * c;
    fs += pt.value * s;
  }
  const double det = cc * ss - cs * cs;
  if (!(std::abs(det) > 0.0)) throw NoFringesDetected("window too small to fit a fringe");
  const double a = (fc * ss - fs * cs) / det;
  const double b = (fs * cc - fc * cs) / det;
  if (std::hypot(a, b) < detail::fringe_floor) throw NoFringesDetected("no carrier at the origin");
  return std::atan2(b, a);
}

/// Shift in p of the interference fringes of f1 relative to f0 at the origin.
/// The fringe frequency comes from f0; the shift is the carrier-phase
/// difference divided by it, so a sign flip at the origin reads as half a period.
inline double fringe_shift(const WignerField& f0, const WignerField& f1) {
  if (!(f0.grid == f1.grid)) throw GridMismatch("fringe_shift needs fields on one grid");
  const double omega = 2.0 * std::numbers::pi / fringe_period(f0);
  const auto prof0 = fringe_profile(f0, Axis::p);
  const auto prof1 = fringe_profile(f1, Axis::p);
  detail::require_fringes(prof1);
  double dphi = carrier_phase(prof1, omega) - carrier_phase(prof0, omega);
  dphi = std::remainder(dphi, 2.0 * std::numbers::pi);
  return std::abs(dphi) / omega;
}

/// Extremum of a profile nearest the origin, refined by a 3-point parabola;
/// ties go to the smaller |coordinate|.
inline std::optional<ProfilePoint> central_extremum(const std::vector<ProfilePoint>& prof) {
  std::optional<ProfilePoint> best;
  for (std::size_t k = 1; k + 1 < prof.size(); ++k) {
    const double l = prof[k - 1].value, c = prof[k].value, r = prof[k + 1].value;
    const bool is_max = c > l && c >= r;
    const bool is_min = c < l && c <= r;
    if (!is_max && !is_min) continue;
    const double denom = l - 2.0 * c + r;
    const double h = prof[k + 1].coord - prof[k].coord;
    const double off = denom != 0.0 ? 0.5 * (l - r) / denom : 0.0;
    const ProfilePoint pt{prof[k].coord + off * h, c - 0.25 * (l - r) * off};
    if (!best || std::abs(pt.coord) < std::abs(best->coord)) best = pt;
  }
  return best;
}

/// Variances of one Gaussian lobe (vacuum: 1/2 each).
struct LobeSpread {
  double var_x;
  double var_p;
  double center_x;
};

/// Second moments of the lobe displaced to x = alpha1, computed over the half
/// plane on its side of the p axis. Interference terms average out over p.
inline LobeSpread squeezing_indicator(const WignerField& f, double alpha1) {
  if (std::abs(alpha1) < 2.0) throw LobesNotSeparated("need |alpha1| >= 2, got " + std::to_string(alpha1));
  const auto& g = f.grid;
  const double side = alpha1 > 0 ? 1.0 : -1.0;
  double m0 = 0, mx = 0, mp = 0, mxx = 0, mpp = 0;
  for (std::size_t i = 0; i < g.nx; ++i) {
    const double x = g.x(i);
    if (side * x < 0.0) continue;
    const double wi = (i == 0 || i + 1 == g.nx || x == 0.0) ? 0.5 : 1.0;
    for (std::size_t j = 0; j < g.np; ++j) {
      const double p = g.p(j);
      const double w = wi * ((j == 0 || j + 1 == g.np) ? 0.5 : 1.0) * f.at(i, j);
      m0 += w;
      mx += w * x;
      mp += w * p;
      mxx += w * x * x;
      mpp += w * p * p;
    }
  }
  const double cx = mx / m0, cp = mp / m0;
  return {mxx / m0 - cx * cx, mpp / m0 - cp * cp, cx};
}

/// Sign changes along the x axis (p = 0) between x_from and x_to.
inline std::size_t sign_changes_along_x(const WignerField& f, double x_from, double x_to) {
  return zero_crossings(fringe_profile(f, Axis::x), x_from, x_to).size();
}

}  // namespace catsense
