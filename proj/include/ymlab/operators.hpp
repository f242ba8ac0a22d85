#pragma once

#include <string>
#include <vector>

#include "ymlab/field.hpp"

namespace ymlab {

enum class OperatorKind { M0, M1 };

inline std::string operator_name(OperatorKind k) { return k == OperatorKind::M0 ? "M0" : "M1"; }
inline FieldRank operator_rank(OperatorKind k) {
  return k == OperatorKind::M0 ? FieldRank::scalar : FieldRank::vector;
}

// Matrix-free application of the gauge-covariant quadratic operators
//   M0 = -nabla^2                    (scalar adjoint fields)
//   M1 = -nabla^2 delta_{mu nu} - 2[F_{mu nu}, . ]   (vector adjoint fields)
// with the 9-point covariant Laplacian
//   (-nabla^2 v)(x) = sum_mu (2 v(x) - U_mu(x) v(x+mu) - U_mu(x-mu)^T v(x-mu)) / a^2.
// Both are symmetric; M0 is positive semidefinite for every background.
void apply_operator(const BackgroundField& bg, OperatorKind which, const AdjointField& in,
                    AdjointField& out);

AdjointField apply_operator(const BackgroundField& bg, OperatorKind which,
                            const AdjointField& in);

namespace ref {
// Serial reference implementation (independent loop structure), kept for
// kernel tests and the benchmark.
void apply_operator(const BackgroundField& bg, OperatorKind which, const AdjointField& in,
                    AdjointField& out);
}

// Safe two-sided spectral interval for Chebyshev evaluation:
// M0 in [0, 16/a^2]; M1 in [-kbar, 16/a^2 + kbar], kbar the largest per-site
// |eigenvalue| of the local -2 ad_F coupling block (computed exactly).
struct SpectralBounds {
  double lo = 0.0;
  double hi = 0.0;
};
SpectralBounds spectral_bounds(const BackgroundField& bg, OperatorKind which);

// Dense row-major assembly (columnwise application of the matrix-free kernel);
// gated by the exact-trace size limit.
std::vector<double> dense_operator(const BackgroundField& bg, OperatorKind which,
                                   std::int64_t max_dim = 20000);

// Ascending eigenvalues of the dense operator (LAPACK dsyevd).
std::vector<double> dense_spectrum(const BackgroundField& bg, OperatorKind which,
                                   std::int64_t max_dim = 20000);

// Smallest Ritz value from a short plain Lanczos run; reported alongside heat
// traces when M1 develops negative modes.
double lowest_ritz_value(const BackgroundField& bg, OperatorKind which, int iterations = 40,
                         std::uint64_t seed = 7);

std::int64_t operator_dimension(const BackgroundField& bg, OperatorKind which);

}  // namespace ymlab
