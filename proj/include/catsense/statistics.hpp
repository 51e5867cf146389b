#pragma once

// Photon-number statistics of photon-added cat states: the closed form for one
// added photon and the number-basis route that covers everything else.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <vector>

#include "catsense/errors.hpp"
#include "catsense/fock.hpp"

namespace catsense {

enum class PoissonClass { sub, poissonian, super };

inline const char* to_string(PoissonClass c) {
  switch (c) {
    case PoissonClass::sub: return "sub";
    case PoissonClass::poissonian: return "poissonian";
    case PoissonClass::super: return "super";
  }
  return "?";
}

/// Half-width of the band around Q = 1 that counts as Poissonian.
inline constexpr double poisson_band = 1e-9;

inline PoissonClass classify(double q) {
  if (q < 1.0 - poisson_band) return PoissonClass::sub;
  if (q > 1.0 + poisson_band) return PoissonClass::super;
  return PoissonClass::poissonian;
}

struct QStats {
  double mean_n = 0.0;
  double mean_n2 = 0.0;
  double q = 0.0;
  double b_plus = 0.0;   ///< 1 + e^{-2|alpha|^2} cos(theta)
  double b_minus = 0.0;  ///< 1 - e^{-2|alpha|^2} cos(theta)
  PoissonClass cls = PoissonClass::poissonian;
};

namespace detail {

inline QStats finish(double n1, double n2, double bp, double bm) {
  const double q = (n2 - n1 * n1) / n1;
  return {n1, n2, q, bp, bm, classify(q)};
}

}  // namespace detail

/// One photon added to |alpha> + e^{i theta}|-alpha>:
///   <n>   = [B+(|a|^4 + 1) + 3|a|^2 B-] / (|a|^2 B- + B+)
///   <n^2> = [B-(|a|^6 + 7|a|^2) + B+(6|a|^4 + 1)] / (|a|^2 B- + B+)
inline QStats q_closed_form(double alpha_abs, double theta) {
  if (!(alpha_abs >= 0.0)) throw UnsupportedSpec("alpha_abs must be non-negative");
  if (theta < -1e-12 || theta > std::numbers::pi + 1e-12) throw UnsupportedSpec("theta must lie in [0, pi]");
  const double a2 = alpha_abs * alpha_abs;
  const double e = std::exp(-2.0 * a2) * std::cos(theta);
  const double bp = 1.0 + e;
  const double bm = 1.0 - e;
  const double denom = a2 * bm + bp;
  if (!(denom > degenerate_norm)) throw DegenerateState("alpha = 0 with theta = pi has zero norm");
  const double n1 = (bp * (a2 * a2 + 1.0) + 3.0 * a2 * bm) / denom;
  const double n2 = (bm * (a2 * a2 * a2 + 7.0 * a2) + bp * (6.0 * a2 * a2 + 1.0)) / denom;
  return detail::finish(n1, n2, bp, bm);
}

/// Moments by direct summation over the number-basis state. dim == 0 selects
/// recommended_dim(spec).
inline QStats q_oracle(const CatSpec& spec, std::size_t dim = 0) {
  const FockVector s = state_fock(spec, dim);
  const double e = std::exp(-2.0 * std::norm(spec.alpha)) * std::cos(spec.theta);
  const double n1 = expect_n(s);
  if (!(n1 > 1e-15)) throw UndefinedQ("<n> = 0");
  return detail::finish(n1, expect_n2(s), 1.0 + e, 1.0 - e);
}

struct QSweepRow {
  double theta;
  double alpha_abs;
  std::optional<double> q_closed;  ///< present for k = 1
  double q_oracle;
  PoissonClass cls;                ///< from q_closed when present, else q_oracle
};

/// Q over a grid of theta values and `steps` evenly spaced |alpha| in
/// [alpha_min, alpha_max] for two-component cats with k added photons.
inline std::vector<QSweepRow> q_sweep(const std::vector<double>& thetas, double alpha_min, double alpha_max,
                                      std::size_t steps, int k) {
  if (!(alpha_min > 0.0) || alpha_max < alpha_min) throw UnsupportedSpec("need 0 < alpha_min <= alpha_max");
  if (steps == 0) throw UnsupportedSpec("steps must be positive");
  std::vector<QSweepRow> rows;
  rows.reserve(thetas.size() * steps);
  for (double theta : thetas) {
    for (std::size_t s = 0; s < steps; ++s) {
      const double a = steps == 1 ? alpha_min
                                  : alpha_min + (alpha_max - alpha_min) * static_cast<double>(s) /
                                                    static_cast<double>(steps - 1);
      const CatSpec spec{{a, 0.0}, theta, k, 2};
      const double qo = q_oracle(spec).q;
      std::optional<double> qc;
      if (k == 1) qc = q_closed_form(a, theta).q;
      rows.push_back({theta, a, qc, qo, classify(qc.value_or(qo))});
    }
  }
  return rows;
}

}  // namespace catsense
