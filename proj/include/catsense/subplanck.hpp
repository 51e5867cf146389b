#pragma once

// Compass-state phase-space analysis: the central interference lattice
// (sub-Planck tiles), how it changes under photon addition, and the
// displacement sensitivity it implies.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "catsense/errors.hpp"
#include "catsense/fock.hpp"
#include "catsense/wigner.hpp"

namespace catsense {

enum class ExtremumKind { max, min };

inline const char* to_string(ExtremumKind k) { return k == ExtremumKind::max ? "max" : "min"; }

struct Extremum {
  double x;
  double p;
  double value;
  ExtremumKind kind;
};

struct TileReport {
  std::vector<Extremum> extrema;  ///< all local extrema in the window
  Extremum center{};              ///< the one nearest the origin
  double lattice_angle = 0.0;     ///< direction from center to nearest opposite extremum
  double spacing_u = 0.0;         ///< zero-to-zero width along lattice_angle
  double spacing_v = 0.0;         ///< zero-to-zero width perpendicular to it
  double tile_area = 0.0;
  PhaseSpaceGrid window;

  /// Tile area relative to the coherent-state cell, the unit disc of area pi
  /// inside which the vacuum W exceeds its peak / e.
  double planck_ratio() const { return tile_area / std::numbers::pi; }
};

inline constexpr double default_tile_window = 1.5;

namespace detail {

// Distance from (x0, p0) along (ux, up) to the first sign change of the
// bilinear interpolant, or nullopt within max_t.
inline std::optional<double> distance_to_zero(const WignerField& f, double x0, double p0, double ux,
                                              double up, double max_t) {
  const double step = 0.25 * std::min(f.grid.dx(), f.grid.dp());
  const double v0 = value_at(f, x0, p0);
  double prev_t = 0.0, prev_v = v0;
  for (double t = step; t <= max_t; t += step) {
    const double v = value_at(f, x0 + t * ux, p0 + t * up);
    if ((v < 0.0) != (v0 < 0.0)) return prev_t + step * prev_v / (prev_v - v);
    prev_t = t;
    prev_v = v;
  }
  return std::nullopt;
}

}  // namespace detail

/// Local extrema of the central interference pattern within |x|, |p| <= halfwidth,
/// refined by separable 3-point parabolas, plus the tile geometry at the
/// extremum nearest the origin.
inline TileReport tile_extrema(const WignerField& f, double halfwidth = default_tile_window) {
  const auto& g = f.grid;
  TileReport report;
  report.window = {-halfwidth, halfwidth, -halfwidth, halfwidth, g.nx, g.np};

  double peak = 0.0;
  for (std::size_t i = 0; i < g.nx; ++i)
    for (std::size_t j = 0; j < g.np; ++j)
      if (std::abs(g.x(i)) <= halfwidth && std::abs(g.p(j)) <= halfwidth)
        peak = std::max(peak, std::abs(f.at(i, j)));
  if (peak < 1e-6) throw NoCentralPattern("|W| below 1e-6 in the central window");

  for (std::size_t i = 1; i + 1 < g.nx; ++i) {
    if (std::abs(g.x(i)) > halfwidth) continue;
    for (std::size_t j = 1; j + 1 < g.np; ++j) {
      if (std::abs(g.p(j)) > halfwidth) continue;
      const double c = f.at(i, j);
      bool is_max = true, is_min = true;
      for (int di = -1; di <= 1; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          const double n = f.at(i + di, j + dj);
          is_max = is_max && c > n;
          is_min = is_min && c < n;
        }
      if (!is_max && !is_min) continue;
      const double l = f.at(i - 1, j), r = f.at(i + 1, j);
      const double d = f.at(i, j - 1), u = f.at(i, j + 1);
      const double cx = l - 2 * c + r, cp = d - 2 * c + u;
      const double ox = cx != 0 ? 0.5 * (l - r) / cx : 0.0;
      const double op = cp != 0 ? 0.5 * (d - u) / cp : 0.0;
      const double v = c - 0.25 * (l - r) * ox - 0.25 * (d - u) * op;
      report.extrema.push_back({g.x(i) + ox * g.dx(), g.p(j) + op * g.dp(), v,
                                is_max ? ExtremumKind::max : ExtremumKind::min});
    }
  }
  if (report.extrema.empty()) throw NoCentralPattern("no local extrema in the central window");

  auto dist2 = [](const Extremum& e, double x, double p) {
    return (e.x - x) * (e.x - x) + (e.p - p) * (e.p - p);
  };
  report.center = *std::min_element(report.extrema.begin(), report.extrema.end(),
                                    [&](const Extremum& a, const Extremum& b) {
                                      return dist2(a, 0, 0) < dist2(b, 0, 0);
                                    });
  const Extremum* partner = nullptr;
  for (const auto& e : report.extrema) {
    if (e.kind == report.center.kind) continue;
    if (!partner || dist2(e, report.center.x, report.center.p) < dist2(*partner, report.center.x, report.center.p))
      partner = &e;
  }
  if (!partner) throw NoCentralPattern("no interference lattice: extrema of one kind only");

  const double ux0 = partner->x - report.center.x;
  const double up0 = partner->p - report.center.p;
  const double len = std::hypot(ux0, up0);
  const double ux = ux0 / len, up = up0 / len;
  report.lattice_angle = std::atan2(up, ux);

  const double reach = 2.0 * halfwidth;
  auto width = [&](double dx, double dp) {
    const auto a = detail::distance_to_zero(f, report.center.x, report.center.p, dx, dp, reach);
    const auto b = detail::distance_to_zero(f, report.center.x, report.center.p, -dx, -dp, reach);
    if (!a || !b) throw NoCentralPattern("tile boundary not found around the central extremum");
    return *a + *b;
  };
  report.spacing_u = width(ux, up);
  report.spacing_v = width(-up, ux);
  report.tile_area = report.spacing_u * report.spacing_v;
  return report;
}

struct InterchangeReport {
  double correlation;     ///< Pearson correlation over the central window
  bool origin_sign_flip;  ///< sign(W0(0,0)) == -sign(W1(0,0))
};

/// Compares two fields over |x|, |p| <= halfwidth. A strongly negative
/// correlation means maxima and minima have swapped places.
inline InterchangeReport tile_interchange(const WignerField& f0, const WignerField& f1,
                                          double halfwidth = default_tile_window) {
  if (!(f0.grid == f1.grid)) throw GridMismatch("tile_interchange needs fields on one grid");
  const auto& g = f0.grid;
  double n = 0, s0 = 0, s1 = 0, s00 = 0, s11 = 0, s01 = 0;
  for (std::size_t i = 0; i < g.nx; ++i) {
    if (std::abs(g.x(i)) > halfwidth) continue;
    for (std::size_t j = 0; j < g.np; ++j) {
      if (std::abs(g.p(j)) > halfwidth) continue;
      const double a = f0.at(i, j), b = f1.at(i, j);
      n += 1;
      s0 += a;
      s1 += b;
      s00 += a * a;
      s11 += b * b;
      s01 += a * b;
    }
  }
  const double cov = s01 / n - (s0 / n) * (s1 / n);
  const double var0 = s00 / n - (s0 / n) * (s0 / n);
  const double var1 = s11 / n - (s1 / n) * (s1 / n);
  const double o0 = origin_value(f0), o1 = origin_value(f1);
  return {cov / std::sqrt(var0 * var1), (o0 > 0.0 && o1 < 0.0) || (o0 < 0.0 && o1 > 0.0)};
}

/// Largest distance from a maximum of `before` to the nearest minimum of `after`.
inline double max_pairing_distance(const TileReport& before, const TileReport& after) {
  double worst = 0.0;
  for (const auto& a : before.extrema) {
    if (a.kind != ExtremumKind::max) continue;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& b : after.extrema)
      if (b.kind == ExtremumKind::min) best = std::min(best, std::hypot(a.x - b.x, a.p - b.p));
    worst = std::max(worst, best);
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Displacement sensitivity

/// exp(A) by scaling and squaring with a Taylor kernel.
inline Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a) {
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  const Eigen::MatrixXcd b = a / std::ldexp(1.0, squarings);
  Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  Eigen::MatrixXcd term = result;
  for (int k = 1; k <= 30; ++k) {
    term = (term * b) / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

/// D(delta) = exp(delta a^dag - delta^* a) in a basis truncated at dim.
inline Eigen::MatrixXcd displacement_matrix(std::size_t dim, complex delta) {
  const auto n = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    const double r = std::sqrt(static_cast<double>(k + 1));
    gen(k + 1, k) += delta * r;           // a^dag
    gen(k, k + 1) -= std::conj(delta) * r;  // a
  }
  return expm(gen);
}

struct SensitivitySample {
  complex delta;
  double overlap_sq;
};

struct SensitivityCurve {
  complex direction;
  std::vector<SensitivitySample> samples;
  /// |delta| of the first local minimum of overlap_sq, refined by a parabola.
  std::optional<double> first_zero;
};

namespace detail {

inline std::optional<double> first_minimum(const std::vector<SensitivitySample>& s) {
  for (std::size_t k = 1; k + 1 < s.size(); ++k) {
    const double l = s[k - 1].overlap_sq, c = s[k].overlap_sq, r = s[k + 1].overlap_sq;
    if (c < l && c <= r) {
      const double h = std::abs(s[k + 1].delta) - std::abs(s[k].delta);
      const double denom = l - 2 * c + r;
      const double off = denom != 0 ? 0.5 * (l - r) / denom : 0.0;
      return std::abs(s[k].delta) + off * h;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// |<psi| D(t u) |psi>|^2 for t = 0 .. delta_max in `steps` equal increments,
/// one curve per unit direction u. Collinear displacements compose without a
/// phase, so one step operator is applied repeatedly in an enlarged basis.
inline std::vector<SensitivityCurve> sensitivity_scan(const FockVector& state,
                                                      std::span<const complex> directions,
                                                      double delta_max, std::size_t steps) {
  if (steps == 0) throw UnsupportedSpec("sensitivity_scan needs at least one step");
  check_truncation(state);
  const FockVector psi = state.normalized();
  const std::size_t headroom =
      static_cast<std::size_t>(std::ceil(delta_max * delta_max + 6.0 * delta_max + 10.0));
  const std::size_t big = psi.dim() + headroom;
  Eigen::VectorXcd base = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(big));
  for (std::size_t n = 0; n < psi.dim(); ++n) base[static_cast<Eigen::Index>(n)] = psi[n];

  std::vector<SensitivityCurve> curves;
  for (complex dir : directions) {
    const complex u = dir / std::abs(dir);
    const complex step = u * (delta_max / static_cast<double>(steps));
    const Eigen::MatrixXcd d = displacement_matrix(big, step);
    SensitivityCurve curve{u, {{0.0, 1.0}}, std::nullopt};
    Eigen::VectorXcd moved = base;
    for (std::size_t k = 1; k <= steps; ++k) {
      moved = d * moved;
      const double tail = moved.tail(4).squaredNorm();
      if (!(tail < tail_tolerance))
        throw TruncationTooSmall("displaced state reaches the top of the enlarged basis");
      const complex ov = base.dot(moved);  // conjugates the first argument
      curve.samples.push_back({step * static_cast<double>(k), std::norm(ov)});
    }
    curve.first_zero = detail::first_minimum(curve.samples);
    curves.push_back(std::move(curve));
  }
  return curves;
}

/// |<psi | a^dag psi / ||a^dag psi||>|.
inline double orthogonality_check(const FockVector& state) {
  return std::abs(overlap(state.normalized(), add_photon(state)));
}

}  // namespace catsense
