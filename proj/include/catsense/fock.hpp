#pragma once

// Truncated number-basis states and the ladder-operator algebra on them.
// Everything else in the library is checked against these constructions.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdio>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "catsense/errors.hpp"
#include "catsense/special.hpp"

namespace catsense {

/// Upper bound on the probability mass allowed in the last four basis states.
inline constexpr double tail_tolerance = 1e-10;

/// Convention: a = (x + i p)/sqrt(2), hbar = 1. A coherent state |alpha> is
/// centred at x0 = sqrt(2) Re(alpha), p0 = sqrt(2) Im(alpha).
struct Quadrature {
  double x0;
  double p0;
};

inline Quadrature to_quadrature(complex alpha) {
  return {std::numbers::sqrt2 * alpha.real(), std::numbers::sqrt2 * alpha.imag()};
}

inline complex from_quadrature(double alpha1, double alpha2) {
  return {alpha1 / std::numbers::sqrt2, alpha2 / std::numbers::sqrt2};
}

/// A member of the cat / compass family with photons added.
///   components == 2: |alpha> + e^{i theta} |-alpha>
///   components == 4: sum_j |i^j alpha>  (theta ignored)
/// followed by added_photons applications of a^dag.
struct CatSpec {
  complex alpha{0.0, 0.0};
  double theta = 0.0;
  int added_photons = 0;
  int components = 2;

  std::string describe() const;
};

inline std::string CatSpec::describe() const {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s alpha=(%.6g,%.6g) theta=%.6g added=%d",
                components == 4 ? "compass" : "cat", alpha.real(), alpha.imag(), theta,
                added_photons);
  return buf;
}

/// Raw squared norm below which a superposition is treated as zero.
inline constexpr double degenerate_norm = 1e-9;

/// Rejects malformed specs and the zero-norm odd cat at alpha = 0.
inline void validate(const CatSpec& spec) {
  if (spec.components != 2 && spec.components != 4)
    throw UnsupportedSpec("components must be 2 or 4, got " + std::to_string(spec.components));
  if (spec.added_photons < 0) throw UnsupportedSpec("added_photons must be non-negative");
  if (!std::isfinite(spec.alpha.real()) || !std::isfinite(spec.alpha.imag()) ||
      !std::isfinite(spec.theta))
    throw UnsupportedSpec("non-finite state parameter");
  if (spec.components == 2) {
    if (spec.theta < -1e-12 || spec.theta > std::numbers::pi + 1e-12)
      throw UnsupportedSpec("theta must lie in [0, pi]");
    // |alpha> + e^{i theta}|-alpha> has squared norm 2 + 2 e^{-2|alpha|^2} cos(theta).
    const double a2 = std::norm(spec.alpha);
    const double raw = 2.0 + 2.0 * std::exp(-2.0 * a2) * std::cos(spec.theta);
    if (raw < degenerate_norm)
      throw DegenerateState("alpha = 0 with theta = pi has zero norm");
  }
}

/// Pure state in the truncated Fock basis. Immutable once built.
class FockVector {
 public:
  FockVector() = default;
  explicit FockVector(std::vector<complex> amps) : amps_(std::move(amps)) {
    if (amps_.empty()) throw DimensionMismatch("FockVector needs dim >= 1");
  }

  static FockVector number_state(std::size_t n, std::size_t dim) {
    if (n >= dim) throw TruncationTooSmall("number state exceeds truncation");
    std::vector<complex> a(dim);
    a[n] = 1.0;
    return FockVector(std::move(a));
  }

  std::size_t dim() const { return amps_.size(); }
  std::span<const complex> amps() const { return amps_; }
  const complex& operator[](std::size_t n) const { return amps_[n]; }

  double norm_sq() const {
    double s = 0.0;
    for (const auto& c : amps_) s += std::norm(c);
    return s;
  }

  FockVector normalized() const {
    const double n2 = norm_sq();
    if (!(n2 > 0.0)) throw ZeroImage("cannot normalize the zero vector");
    const double inv = 1.0 / std::sqrt(n2);
    std::vector<complex> a(amps_);
    for (auto& c : a) c *= inv;
    return FockVector(std::move(a));
  }

  /// Mass in the last four basis states.
  double tail_mass() const {
    double s = 0.0;
    const std::size_t from = amps_.size() > 4 ? amps_.size() - 4 : 0;
    for (std::size_t n = from; n < amps_.size(); ++n) s += std::norm(amps_[n]);
    return s / norm_sq();
  }

 private:
  std::vector<complex> amps_;
};

inline void check_truncation(const FockVector& state) {
  const double tail = state.tail_mass();
  if (!(tail < tail_tolerance))
    throw TruncationTooSmall("tail mass " + std::to_string(tail) + " at dim " +
                             std::to_string(state.dim()));
}

namespace detail {

inline void require_headroom(complex alpha, std::size_t dim) {
  const double r = std::abs(alpha);
  if (dim < 1 || !(r * r + 6.0 * r + 8.0 < static_cast<double>(dim)))
    throw TruncationTooSmall("dim " + std::to_string(dim) + " too small for |alpha| = " +
                             std::to_string(r));
}

// Unnormalized-by-truncation coherent amplitudes e^{-|a|^2/2} a^n / sqrt(n!).
inline std::vector<complex> coherent_amplitudes(complex alpha, std::size_t dim) {
  std::vector<complex> c(dim);
  c[0] = std::exp(-0.5 * std::norm(alpha));
  for (std::size_t n = 1; n < dim; ++n) c[n] = c[n - 1] * alpha / std::sqrt(static_cast<double>(n));
  return c;
}

}  // namespace detail

inline FockVector coherent_fock(complex alpha, std::size_t dim) {
  detail::require_headroom(alpha, dim);
  return FockVector(detail::coherent_amplitudes(alpha, dim)).normalized();
}

/// Complex amplitudes of the branches of a spec, with their weights.
inline std::vector<std::pair<complex, complex>> branches(const CatSpec& spec) {
  if (spec.components == 4) {
    const complex i{0.0, 1.0};
    return {{spec.alpha, 1.0}, {i * spec.alpha, 1.0}, {-spec.alpha, 1.0}, {-i * spec.alpha, 1.0}};
  }
  return {{spec.alpha, 1.0}, {-spec.alpha, std::polar(1.0, spec.theta)}};
}

/// Normalized cat (components = 2) or compass (components = 4) state; spec
/// must have no added photons.
inline FockVector cat_fock(const CatSpec& spec, std::size_t dim) {
  validate(spec);
  if (spec.added_photons != 0) throw UnsupportedSpec("cat_fock builds k = 0 states only");
  detail::require_headroom(spec.alpha, dim);
  std::vector<complex> sum(dim);
  for (const auto& [amp, weight] : branches(spec)) {
    const auto c = detail::coherent_amplitudes(amp, dim);
    for (std::size_t n = 0; n < dim; ++n) sum[n] += weight * c[n];
  }
  FockVector raw(std::move(sum));
  if (raw.norm_sq() < degenerate_norm) throw DegenerateState("superposition has zero norm");
  return raw.normalized();
}

/// Normalized a^dag |state>.
inline FockVector add_photon(const FockVector& state) {
  const std::size_t dim = state.dim();
  const double lost = static_cast<double>(dim) * std::norm(state[dim - 1]) / state.norm_sq();
  if (!(lost < tail_tolerance))
    throw TruncationTooSmall("a^dag would push mass " + std::to_string(lost) +
                             " past the truncation");
  std::vector<complex> out(dim);
  for (std::size_t n = 0; n + 1 < dim; ++n) out[n + 1] = std::sqrt(static_cast<double>(n + 1)) * state[n];
  return FockVector(std::move(out)).normalized();
}

/// Normalized a |state>.
inline FockVector annihilate(const FockVector& state) {
  const std::size_t dim = state.dim();
  std::vector<complex> out(dim);
  for (std::size_t n = 1; n < dim; ++n) out[n - 1] = std::sqrt(static_cast<double>(n)) * state[n];
  FockVector image(std::move(out));
  if (!(image.norm_sq() > 1e-300)) throw ZeroImage("a annihilates the vacuum");
  return image.normalized();
}

/// Smallest truncation we trust for a spec: room for the Poisson tail plus two
/// basis states per added photon.
inline std::size_t recommended_dim(const CatSpec& spec) {
  const double r = std::abs(spec.alpha);
  const auto base = static_cast<std::size_t>(std::floor(r * r + 8.0 * r + 12.0));
  return std::max<std::size_t>(16, base + 2 * static_cast<std::size_t>(spec.added_photons));
}

/// Cat/compass state with spec.added_photons photons added. dim == 0 selects
/// recommended_dim(spec).
inline FockVector state_fock(const CatSpec& spec, std::size_t dim = 0) {
  if (dim == 0) dim = recommended_dim(spec);
  CatSpec core = spec;
  core.added_photons = 0;
  FockVector s = cat_fock(core, dim);
  for (int k = 0; k < spec.added_photons; ++k) s = add_photon(s);
  return s;
}

inline complex overlap(const FockVector& a, const FockVector& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatch(std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  complex s{0.0, 0.0};
  for (std::size_t n = 0; n < a.dim(); ++n) s += std::conj(a[n]) * b[n];
  return s;
}

inline double fidelity(const FockVector& a, const FockVector& b) { return std::norm(overlap(a, b)); }

inline double expect_n(const FockVector& s) {
  double acc = 0.0;
  for (std::size_t n = 0; n < s.dim(); ++n) acc += static_cast<double>(n) * std::norm(s[n]);
  return acc / s.norm_sq();
}

inline double expect_n2(const FockVector& s) {
  double acc = 0.0;
  for (std::size_t n = 0; n < s.dim(); ++n) {
    const double nd = static_cast<double>(n);
    acc += nd * nd * std::norm(s[n]);
  }
  return acc / s.norm_sq();
}

/// Q = (<n^2> - <n>^2) / <n>; Q = 1 is Poissonian.
inline double mandel_q(const FockVector& s) {
  const double n1 = expect_n(s);
  if (!(n1 > 1e-15)) throw UndefinedQ("<n> = 0");
  return (expect_n2(s) - n1 * n1) / n1;
}

}  // namespace catsense
