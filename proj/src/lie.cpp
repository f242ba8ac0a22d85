#include "ymlab/lie.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>

namespace ymlab {

std::string family_name(AlgebraFamily f) {
  switch (f) {
    case AlgebraFamily::su: return "su";
  }
  return "?";
}

namespace {

using CMat = Eigen::MatrixXcd;

// Generalized Gell-Mann matrices for su(N): Hermitian, traceless,
// tr(lambda^a lambda^b) = 2 delta^{ab}. Generators are t^a = -i/2 lambda^a,
// anti-Hermitian with tr(t^a t^b) = -1/2 delta^{ab}.
std::vector<CMat> gell_mann(int n) {
  std::vector<CMat> out;
  const std::complex<double> I(0.0, 1.0);
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      CMat s = CMat::Zero(n, n);
      s(j, k) = 1.0;
      s(k, j) = 1.0;
      out.push_back(s);
      CMat a = CMat::Zero(n, n);
      a(j, k) = -I;
      a(k, j) = I;
      out.push_back(a);
    }
  }
  for (int l = 1; l < n; ++l) {
    CMat d = CMat::Zero(n, n);
    const double norm = std::sqrt(2.0 / (static_cast<double>(l) * (l + 1)));
    for (int j = 0; j < l; ++j) d(j, j) = norm;
    d(l, l) = -norm * l;
    out.push_back(d);
  }
  return out;
}

}  // namespace

LieAlgebra LieAlgebra::build(AlgebraFamily family, int n) {
  if (family != AlgebraFamily::su)
    throw unsupported_algebra("unsupported algebra family");
  if (n < 1) throw parameter_error("N must be >= 1");
  if (n == 1) throw degenerate_algebra("su(1) has dimension 0");

  LieAlgebra alg;
  alg.family_ = family;
  alg.n_ = n;
  alg.dim_ = n * n - 1;
  alg.kappa_ = 0.5;

  const std::complex<double> I(0.0, 1.0);
  std::vector<CMat> lambda = gell_mann(n);
  const int d = alg.dim_;
  std::vector<CMat> t(d);
  for (int a = 0; a < d; ++a) t[a] = -0.5 * I * lambda[a];

  // f^{abc} = -tr([t^a, t^b] t^c) / kappa, real for su(N).
  alg.f_.assign(static_cast<size_t>(d) * d * d, 0.0);
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      CMat comm = t[a] * t[b] - t[b] * t[a];
      for (int c = 0; c < d; ++c) {
        std::complex<double> tr = (comm * t[c]).trace();
        double val = -tr.real() / alg.kappa_;
        if (std::abs(tr.imag()) > 1e-12)
          throw inconsistent_structure("complex structure constant");
        if (std::abs(val) < 1e-13) val = 0.0;
        // total antisymmetry fills the six permutations
        auto set = [&](int i, int j, int k, double v) {
          alg.f_[(static_cast<size_t>(i) * d + j) * d + k] = v;
        };
        set(a, b, c, val);
        set(b, a, c, -val);
        set(b, c, a, val);
        set(c, b, a, -val);
        set(c, a, b, val);
        set(a, c, b, -val);
      }
    }
  }

  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c) {
        double v = alg.f(a, b, c);
        if (v == 0.0) continue;
        alg.sparse_all_.push_back({a, b, c, v});
        if (a < b && b < c) alg.nonzeros_.push_back({a, b, c, v});
      }

  return alg;
}

double LieAlgebra::casimir_adjoint() const {
  const int d = dim_;
  double diag = 0.0;
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      double s = 0.0;
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) s += f(a, c, e) * f(b, c, e);
      if (a == b) {
        if (a == 0)
          diag = s;
        else if (std::abs(s - diag) > 1e-12)
          throw inconsistent_structure("f.f contraction not proportional to identity");
      } else if (std::abs(s) > 1e-12) {
        throw inconsistent_structure("f.f contraction has off-diagonal part");
      }
    }
  }
  return diag;
}

std::vector<double> LieAlgebra::adjoint_matrix(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != dim_)
    throw dimension_error("coefficient vector length != dim");
  std::vector<double> m(static_cast<size_t>(dim_) * dim_, 0.0);
  for (const FEntry& e : sparse_all_)
    m[static_cast<size_t>(e.a) * dim_ + e.c] += e.value * x[e.b];
  return m;
}

void LieAlgebra::ad_apply(const double* x, const double* v, double scale, double* y) const {
  for (const FEntry& e : sparse_all_)
    y[e.a] += scale * e.value * x[e.b] * v[e.c];
}

std::vector<double> LieAlgebra::bracket(const std::vector<double>& x,
                                        const std::vector<double>& y) const {
  if (static_cast<int>(x.size()) != dim_ || static_cast<int>(y.size()) != dim_)
    throw dimension_error("coefficient vector length != dim");
  std::vector<double> z(dim_, 0.0);
  for (const FEntry& e : sparse_all_) z[e.c] += e.value * x[e.a] * y[e.b];
  return z;
}

}  // namespace ymlab
