#pragma once

// Position-representation states as finite sums of displaced Hermite-Gaussian
// terms. Photon addition acts on the coefficients exactly, so every closed-form
// wavefunction of the cat family is a short list of terms.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "catsense/errors.hpp"
#include "catsense/fock.hpp"
#include "catsense/special.hpp"

namespace catsense {

/// coeff * phi_n(x - d1) * exp(i d2 (x - d1/2)), i.e. coeff * <x| D(alpha) |n>
/// with alpha = (d1 + i d2)/sqrt(2).
struct HermiteTerm {
  std::size_t n = 0;
  double d1 = 0.0;
  double d2 = 0.0;
  complex coeff{1.0, 0.0};

  complex displacement() const { return from_quadrature(d1, d2); }

  complex operator()(double x) const {
    const double u = x - d1;
    return coeff * hermite_function(n, u) * std::polar(1.0, d2 * (x - 0.5 * d1));
  }
};

class WaveSuperposition {
 public:
  WaveSuperposition() = default;
  explicit WaveSuperposition(std::vector<HermiteTerm> terms, bool normalized = false)
      : terms_(std::move(terms)), normalized_(normalized) {}

  const std::vector<HermiteTerm>& terms() const { return terms_; }
  bool is_normalized() const { return normalized_; }

  complex operator()(double x) const {
    complex s{0.0, 0.0};
    for (const auto& t : terms_) s += t(x);
    return s;
  }

  /// Largest |d1| and |d2| over the terms.
  Quadrature extent() const {
    Quadrature q{0.0, 0.0};
    for (const auto& t : terms_) {
      q.x0 = std::max(q.x0, std::abs(t.d1));
      q.p0 = std::max(q.p0, std::abs(t.d2));
    }
    return q;
  }

  std::size_t max_order() const {
    std::size_t m = 0;
    for (const auto& t : terms_) m = std::max(m, t.n);
    return m;
  }

 private:
  std::vector<HermiteTerm> terms_;
  bool normalized_ = false;
};

inline complex eval_wave(const WaveSuperposition& psi, double x) { return psi(x); }

/// <a|b> for two terms, closed form:
/// <D(beta) m | D(alpha) n> = e^{i Im(beta^* alpha)} <m| D(alpha - beta) |n>.
inline complex term_overlap(const HermiteTerm& a, const HermiteTerm& b) {
  const complex beta = a.displacement();
  const complex alpha = b.displacement();
  const double phase = std::imag(std::conj(beta) * alpha);
  return std::conj(a.coeff) * b.coeff * std::polar(1.0, phase) *
         displaced_number_element(a.n, b.n, alpha - beta);
}

inline complex inner_product(const WaveSuperposition& a, const WaveSuperposition& b) {
  complex s{0.0, 0.0};
  for (const auto& ta : a.terms())
    for (const auto& tb : b.terms()) s += term_overlap(ta, tb);
  return s;
}

inline double norm_sq(const WaveSuperposition& psi) { return std::real(inner_product(psi, psi)); }

inline WaveSuperposition normalized(const WaveSuperposition& psi) {
  const double n2 = norm_sq(psi);
  if (!(n2 > degenerate_norm)) throw DegenerateState("wavefunction has zero norm");
  const double inv = 1.0 / std::sqrt(n2);
  auto terms = psi.terms();
  for (auto& t : terms) t.coeff *= inv;
  return WaveSuperposition(std::move(terms), true);
}

namespace detail {

inline constexpr std::size_t gh_start = 64;
inline constexpr std::size_t gh_cap = 1024;
inline constexpr double gh_tolerance = 1e-10;

inline double max_abs_difference(double a, double b) { return std::abs(a - b); }

inline double max_abs_difference(const std::vector<complex>& a, const std::vector<complex>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Doubles the Gauss-Hermite order until two successive results agree.
template <class Eval>
auto adaptive_gauss_hermite(Eval&& eval) {
  auto prev = eval(gauss_hermite(gh_start));
  for (std::size_t order = 2 * gh_start; order <= gh_cap; order *= 2) {
    auto cur = eval(gauss_hermite(order));
    if (max_abs_difference(prev, cur) < gh_tolerance) return cur;
    prev = std::move(cur);
  }
  throw QuadratureNotConverged("Gauss-Hermite did not settle by order " + std::to_string(gh_cap));
}

}  // namespace detail

/// Integral of |psi(x)|^2 by adaptive Gauss-Hermite quadrature; independent of
/// the closed-form term overlaps.
inline double norm_sq_quadrature(const WaveSuperposition& psi) {
  return detail::adaptive_gauss_hermite(
      [&](const GaussHermiteRule& rule) { return rule.integrate([&](double x) { return std::norm(psi(x)); }); });
}

/// Single displaced vacuum term at alpha.
inline WaveSuperposition coherent_wave(complex alpha) {
  const auto q = to_quadrature(alpha);
  return WaveSuperposition({HermiteTerm{0, q.x0, q.p0, 1.0}}, true);
}

/// Photon addition on every term: D(alpha)(a^dag + alpha^*)|n> gives
/// sqrt(n+1) D(alpha)|n+1> + alpha^* D(alpha)|n>. Like terms are merged;
/// the result is not normalized.
inline WaveSuperposition raise_term(const WaveSuperposition& psi) {
  std::vector<HermiteTerm> out;
  auto accumulate = [&out](HermiteTerm t) {
    for (auto& o : out) {
      if (o.n == t.n && o.d1 == t.d1 && o.d2 == t.d2) {
        o.coeff += t.coeff;
        return;
      }
    }
    out.push_back(t);
  };
  for (const auto& t : psi.terms()) {
    const complex alpha_conj = std::conj(t.displacement());
    accumulate({t.n + 1, t.d1, t.d2, std::sqrt(static_cast<double>(t.n + 1)) * t.coeff});
    if (alpha_conj != complex{0.0, 0.0}) accumulate({t.n, t.d1, t.d2, alpha_conj * t.coeff});
  }
  return WaveSuperposition(std::move(out), false);
}

namespace detail {

inline WaveSuperposition branch_sum(const CatSpec& spec) {
  std::vector<HermiteTerm> terms;
  for (const auto& [amp, weight] : branches(spec)) {
    const auto q = to_quadrature(amp);
    terms.push_back({0, q.x0, q.p0, weight});
  }
  return WaveSuperposition(std::move(terms), false);
}

}  // namespace detail

/// Normalized cat / compass wavefunction (no added photons).
inline WaveSuperposition cat_wave(const CatSpec& spec) {
  validate(spec);
  if (spec.added_photons != 0) throw UnsupportedSpec("cat_wave builds k = 0 states only");
  return normalized(detail::branch_sum(spec));
}

/// Any number of added photons, built by repeated raise_term.
inline WaveSuperposition photon_added_wave(const CatSpec& spec) {
  validate(spec);
  auto psi = detail::branch_sum(spec);
  for (int k = 0; k < spec.added_photons; ++k) psi = raise_term(psi);
  return normalized(psi);
}

/// Named constructor for the k = 0, 1, 2 members of the family.
inline WaveSuperposition photon_added_cat_wave(const CatSpec& spec) {
  if (spec.added_photons > 2)
    throw UnsupportedK("named constructor covers k <= 2; use photon_added_wave for k = " +
                       std::to_string(spec.added_photons));
  return photon_added_wave(spec);
}

/// Fock coefficients <k|psi> from the closed-form displaced-number elements.
inline FockVector project_to_fock(const WaveSuperposition& psi, std::size_t dim) {
  std::vector<complex> amps(dim);
  for (const auto& t : psi.terms()) {
    const complex alpha = t.displacement();
    for (std::size_t k = 0; k < dim; ++k) amps[k] += t.coeff * displaced_number_element(k, t.n, alpha);
  }
  return FockVector(std::move(amps));
}

/// Same projection by adaptive Gauss-Hermite quadrature of phi_k(x) psi(x).
inline FockVector project_to_fock_quadrature(const WaveSuperposition& psi, std::size_t dim) {
  auto amps = detail::adaptive_gauss_hermite([&](const GaussHermiteRule& rule) {
    std::vector<complex> a(dim);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      if (rule.weights[i] == 0.0) continue;
      const double x = rule.nodes[i];
      const complex v = psi(x) * rule.weights[i];
      const auto phi = hermite_functions(dim - 1, x);
      for (std::size_t k = 0; k < dim; ++k) a[k] += phi[k] * v;
    }
    return a;
  });
  return FockVector(std::move(amps));
}

}  // namespace catsense
