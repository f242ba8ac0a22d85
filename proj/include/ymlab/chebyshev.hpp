#pragma once

#include <vector>

#include "ymlab/operators.hpp"

namespace ymlab {

// Chebyshev expansion of the heat semigroup on a spectral interval [lo, hi]:
//   e^{-t lam} = e^{-t lo} [ b_0(s) + 2 sum_k (-1)^k b_k(s) T_k(y) ],
//   y = (2 lam - hi - lo)/(hi - lo),  s = t (hi - lo)/2,
// with b_k(s) = e^{-s} I_k(s) computed by Miller's downward recurrence
// (normalization b_0 + 2 sum b_k = 1). The tail bound is the coefficient sum.

// Scaled coefficients b_0..b_K, K chosen so the truncated tail is < tol.
std::vector<double> scaled_bessel_coeffs(double s, double tol);

// Degree needed for e^{-s y} truncation error < tol.
int chebyshev_degree(double s, double tol);

// Signed expansion coefficients c_k(t) with e^{-t lam} = sum_k c_k T_k(y):
// c_0 = e^{-t lo} b_0, c_k = 2 e^{-t lo} (-1)^k b_k.
std::vector<double> heat_coeffs(double t, double lo, double hi, double tol);

// y = e^{-tM} v via the forward Chebyshev recurrence; uniform spectral error
// <= tol relative to |v|.
AdjointField chebyshev_heat_apply(const BackgroundField& bg, OperatorKind which,
                                  const SpectralBounds& bounds, const AdjointField& v, double t,
                                  double tol, int max_degree = 40000);

// Chebyshev moments m_k = <z, T_k(Y) z>, k = 0..degree. One operator pass per
// degree; every later trace evaluation is a dot with heat_coeffs.
std::vector<double> chebyshev_moments(const BackgroundField& bg, OperatorKind which,
                                      const SpectralBounds& bounds, const AdjointField& z,
                                      int degree);

inline double moments_trace(const std::vector<double>& coeffs, const std::vector<double>& moments) {
  double acc = 0.0;
  const size_t n = std::min(coeffs.size(), moments.size());
  for (size_t k = 0; k < n; ++k) acc += coeffs[k] * moments[k];
  return acc;
}

}  // namespace ymlab
