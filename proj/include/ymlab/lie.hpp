#pragma once

#include <string>
#include <vector>

#include "ymlab/errors.hpp"

namespace ymlab {

enum class AlgebraFamily { su };

std::string family_name(AlgebraFamily f);

// Compact Lie algebra data in a fixed orthogonal basis of anti-Hermitian
// generators with tr(t^a t^b) = -kappa * delta^{ab}, kappa = 1/2.
// Structure constants are computed from explicit matrix generators at
// construction, never tabulated by hand.
class LieAlgebra {
public:
  static LieAlgebra build(AlgebraFamily family, int n);

  AlgebraFamily family() const { return family_; }
  int n() const { return n_; }
  int dim() const { return dim_; }
  double kappa() const { return kappa_; }

  // f^{abc}, totally antisymmetric
  double f(int a, int b, int c) const {
    return f_[(static_cast<size_t>(a) * dim_ + b) * dim_ + c];
  }

  // Nonzero structure constants with a < b < c, lexicographic order.
  struct FEntry {
    int a, b, c;
    double value;
  };
  const std::vector<FEntry>& nonzeros() const { return nonzeros_; }

  // Adjoint Casimir C with f^{acd} f^{bcd} = C delta^{ab}; verifies the
  // proportionality before returning.
  double casimir_adjoint() const;

  // (ad_X v)^a = f^{abc} X^b v^c, returned as a dim x dim row-major matrix
  // acting on coefficient vectors. Antisymmetric.
  std::vector<double> adjoint_matrix(const std::vector<double>& x) const;

  // y += scale * ad_X v, all length dim. Hot path for operator kernels.
  void ad_apply(const double* x, const double* v, double scale, double* y) const;

  // Coefficients of [X, Y]: z^c = f^{abc} X^a Y^b.
  std::vector<double> bracket(const std::vector<double>& x, const std::vector<double>& y) const;

private:
  AlgebraFamily family_ = AlgebraFamily::su;
  int n_ = 0;
  int dim_ = 0;
  double kappa_ = 0.5;
  std::vector<double> f_;           // dense d^3 tensor
  std::vector<FEntry> nonzeros_;    // canonical a<b<c entries
  std::vector<FEntry> sparse_all_;  // all nonzero (a,b,c) for ad_apply
};

}  // namespace ymlab
