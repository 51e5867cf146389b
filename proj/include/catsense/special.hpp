#pragma once

// Special functions used across the library: harmonic-oscillator eigenfunctions,
// generalized Laguerre polynomials, displaced-number-state matrix elements and
// Gauss-Hermite rules.

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>

namespace catsense {

using complex = std::complex<double>;

/// Normalized oscillator eigenfunctions phi_0..phi_nmax at x.
/// phi_0(x) = pi^{-1/4} exp(-x^2/2); the three-term recurrence is stable for
/// all orders used here.
inline std::vector<double> hermite_functions(std::size_t nmax, double x) {
  std::vector<double> phi(nmax + 1);
  phi[0] = std::exp(-0.5 * x * x) / std::sqrt(std::sqrt(std::numbers::pi));
  if (nmax >= 1) phi[1] = std::sqrt(2.0) * x * phi[0];
  for (std::size_t k = 1; k < nmax; ++k) {
    const double kd = static_cast<double>(k);
    phi[k + 1] = std::sqrt(2.0 / (kd + 1.0)) * x * phi[k] -
                 std::sqrt(kd / (kd + 1.0)) * phi[k - 1];
  }
  return phi;
}

inline double hermite_function(std::size_t n, double x) {
  return hermite_functions(n, x)[n];
}

/// Generalized Laguerre polynomial L_n^{(a)}(x) by forward recurrence.
inline double laguerre(std::size_t n, double a, double x) {
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + a - x;
  for (std::size_t k = 1; k < n; ++k) {
    const double kd = static_cast<double>(k);
    const double next = ((2.0 * kd + 1.0 + a - x) * cur - (kd + a) * prev) / (kd + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// <m| D(gamma) |n> for the displacement operator D(gamma) = exp(gamma a^dag - gamma^* a).
inline complex displaced_number_element(std::size_t m, std::size_t n, complex gamma) {
  const double r = std::abs(gamma);
  if (r == 0.0) return m == n ? complex{1.0, 0.0} : complex{0.0, 0.0};
  const double r2 = r * r;
  const double phase_arg = std::arg(gamma);
  if (m >= n) {
    const std::size_t d = m - n;
    const double log_pref = 0.5 * (std::lgamma(n + 1.0) - std::lgamma(m + 1.0)) +
                            static_cast<double>(d) * std::log(r) - 0.5 * r2;
    return std::polar(std::exp(log_pref), static_cast<double>(d) * phase_arg) *
           laguerre(n, static_cast<double>(d), r2);
  }
  // (-gamma^*)^{n-m}
  const std::size_t d = n - m;
  const double log_pref = 0.5 * (std::lgamma(m + 1.0) - std::lgamma(n + 1.0)) +
                          static_cast<double>(d) * std::log(r) - 0.5 * r2;
  return std::polar(std::exp(log_pref), static_cast<double>(d) * (std::numbers::pi - phase_arg)) *
         laguerre(m, static_cast<double>(d), r2);
}

/// Gauss-Hermite rule with weights pre-multiplied by exp(x^2), so that
/// sum_i w_i f(x_i) approximates the plain integral of f over the real line.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  template <class F>
  auto integrate(F&& f) const {
    decltype(f(0.0)) acc{};
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (weights[i] != 0.0) acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

namespace detail {

// Golub-Welsch nodes (eigenvalues of the Jacobi matrix, off-diagonal sqrt(k/2)).
// Scaled weights come from the Christoffel function, w e^{x^2} = 1 / sum_k phi_k(x)^2,
// which keeps full relative accuracy at the outer nodes where the eigenvector
// components do not.
inline GaussHermiteRule build_gauss_hermite(std::size_t order) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(order));
  Eigen::VectorXd sub(static_cast<Eigen::Index>(order > 0 ? order - 1 : 0));
  for (Eigen::Index k = 0; k < sub.size(); ++k) sub[k] = std::sqrt(0.5 * static_cast<double>(k + 1));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  GaussHermiteRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (std::size_t i = 0; i < order; ++i) {
    const double x = solver.eigenvalues()[static_cast<Eigen::Index>(i)];
    rule.nodes[i] = x;
    // Past x^2 = 700 the e^{-x^2/2} seed underflows; those nodes carry no weight anyway.
    if (x * x >= 700.0) {
      rule.weights[i] = 0.0;
      continue;
    }
    double christoffel = 0.0;
    for (double v : hermite_functions(order - 1, x)) christoffel += v * v;
    rule.weights[i] = 1.0 / christoffel;
  }
  return rule;
}

}  // namespace detail

/// Cached rule of the given order (thread-safe).
inline const GaussHermiteRule& gauss_hermite(std::size_t order) {
  static std::mutex mu;
  static std::map<std::size_t, std::unique_ptr<GaussHermiteRule>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<GaussHermiteRule>(detail::build_gauss_hermite(order));
  return *slot;
}

}  // namespace catsense
