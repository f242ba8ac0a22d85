#include "ymlab/operators.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstring>
#include <lapacke.h>

#include "ymlab/parallel.hpp"
#include "ymlab/rng.hpp"

namespace ymlab {

namespace {

inline void matvec_acc(const double* m, const double* v, double coeff, double* y, int d) {
  for (int r = 0; r < d; ++r) {
    double acc = 0.0;
    const double* row = m + r * d;
    for (int c = 0; c < d; ++c) acc += row[c] * v[c];
    y[r] += coeff * acc;
  }
}

inline void matTvec_acc(const double* m, const double* v, double coeff, double* y, int d) {
  for (int r = 0; r < d; ++r) {
    double acc = 0.0;
    for (int c = 0; c < d; ++c) acc += m[c * d + r] * v[c];
    y[r] += coeff * acc;
  }
}

void check_shapes(const BackgroundField& bg, OperatorKind which, const AdjointField& in,
                  const AdjointField& out) {
  if (in.rank() != operator_rank(which))
    throw shape_error("operator rank mismatch: M0 needs scalar, M1 needs vector fields");
  if (!(in.geometry() == bg.geometry()) || in.algebra().dim() != bg.dim())
    throw shape_error("field does not live on the background's lattice");
  if (!in.compatible(out)) throw shape_error("output field incompatible with input");
}

}  // namespace

std::int64_t operator_dimension(const BackgroundField& bg, OperatorKind which) {
  return bg.geometry().nsites() * (which == OperatorKind::M0 ? 1 : 4) * bg.dim();
}

void apply_operator(const BackgroundField& bg, OperatorKind which, const AdjointField& in,
                    AdjointField& out) {
  check_shapes(bg, which, in, out);
  const int d = bg.dim();
  const int nc = in.ncomp();
  const double inv_a2 = 1.0 / (bg.geometry().spacing() * bg.geometry().spacing());
  const LatticeGeometry& g = bg.geometry();
  const double* src = in.data();
  double* dst = out.data();

  parallel_for(g.nsites(), [&](index_t s) {
    const std::int64_t base = s * nc * d;
    for (int comp = 0; comp < nc; ++comp) {
      double* y = dst + base + comp * d;
      const double* vx = src + base + comp * d;
      for (int c = 0; c < d; ++c) y[c] = 8.0 * inv_a2 * vx[c];
      for (int mu = 0; mu < 4; ++mu) {
        const std::int64_t sf = g.forward(s, mu);
        const std::int64_t sb = g.backward(s, mu);
        matvec_acc(bg.link(s, mu), src + (sf * nc + comp) * d, -inv_a2, y, d);
        matTvec_acc(bg.link(sb, mu), src + (sb * nc + comp) * d, -inv_a2, y, d);
      }
    }
    if (which == OperatorKind::M1) {
      // (M1 v)_mu += -2 [F_{mu nu}, v_nu]; cached blocks hold -2 ad_{F_plane}
      for (int mu = 0; mu < 4; ++mu) {
        double* y = dst + base + mu * d;
        for (int nu = 0; nu < 4; ++nu) {
          if (nu == mu) continue;
          const int p = BackgroundField::plane_index(std::min(mu, nu), std::max(mu, nu));
          const double sign = mu < nu ? 1.0 : -1.0;  // F_{nu mu} = -F_{mu nu}
          matvec_acc(bg.minus2_ad_f(s, p), src + base + nu * d, sign, y, d);
        }
      }
    }
  });
}

AdjointField apply_operator(const BackgroundField& bg, OperatorKind which,
                            const AdjointField& in) {
  AdjointField out(in.geometry_ptr(), in.algebra_ptr(), in.rank());
  apply_operator(bg, which, in, out);
  return out;
}

namespace ref {

void apply_operator(const BackgroundField& bg, OperatorKind which, const AdjointField& in,
                    AdjointField& out) {
  check_shapes(bg, which, in, out);
  const int d = bg.dim();
  const int nc = in.ncomp();
  const double inv_a2 = 1.0 / (bg.geometry().spacing() * bg.geometry().spacing());
  const LatticeGeometry& g = bg.geometry();
  out.set_zero();

  for (std::int64_t s = 0; s < g.nsites(); ++s) {
    for (int comp = 0; comp < nc; ++comp) {
      for (int c = 0; c < d; ++c) out.at(s, comp, c) += 8.0 * inv_a2 * in.at(s, comp, c);
      for (int mu = 0; mu < 4; ++mu) {
        const std::int64_t sf = g.forward(s, mu);
        const std::int64_t sb = g.backward(s, mu);
        const double* uf = bg.link(s, mu);
        const double* ub = bg.link(sb, mu);
        for (int r = 0; r < d; ++r) {
          double acc = 0.0;
          for (int c = 0; c < d; ++c) {
            acc += uf[r * d + c] * in.at(sf, comp, c);
            acc += ub[c * d + r] * in.at(sb, comp, c);
          }
          out.at(s, comp, r) -= inv_a2 * acc;
        }
      }
    }
    if (which == OperatorKind::M1) {
      for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
          if (nu == mu) continue;
          const int p = BackgroundField::plane_index(std::min(mu, nu), std::max(mu, nu));
          const double sign = mu < nu ? 1.0 : -1.0;
          const double* m = bg.minus2_ad_f(s, p);
          for (int r = 0; r < d; ++r) {
            double acc = 0.0;
            for (int c = 0; c < d; ++c) acc += m[r * d + c] * in.at(s, nu, c);
            out.at(s, mu, r) += sign * acc;
          }
        }
    }
  }
}

}  // namespace ref

SpectralBounds spectral_bounds(const BackgroundField& bg, OperatorKind which) {
  const double inv_a2 = 1.0 / (bg.geometry().spacing() * bg.geometry().spacing());
  SpectralBounds b;
  b.lo = 0.0;
  b.hi = 16.0 * inv_a2;
  if (which == OperatorKind::M1) {
    // exact norm of the local coupling block E(x), E_{(mu a)(nu b)} = (-2 ad_F)_{ab}
    const int d = bg.dim();
    const int dim = 4 * d;
    double kbar = 0.0;
    Eigen::MatrixXd block(dim, dim);
    for (std::int64_t s = 0; s < bg.geometry().nsites(); ++s) {
      block.setZero();
      for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
          if (mu == nu) continue;
          const int p = BackgroundField::plane_index(std::min(mu, nu), std::max(mu, nu));
          const double sign = mu < nu ? 1.0 : -1.0;
          const double* m = bg.minus2_ad_f(s, p);
          for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) block(mu * d + r, nu * d + c) = sign * m[r * d + c];
        }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block, Eigen::EigenvaluesOnly);
      const double lo = es.eigenvalues().minCoeff();
      const double hi = es.eigenvalues().maxCoeff();
      kbar = std::max({kbar, std::abs(lo), std::abs(hi)});
    }
    b.lo = -kbar;
    b.hi += kbar;
  }
  // small safety margin: Chebyshev needs the spectrum strictly inside
  const double margin = 1e-6 * (b.hi - b.lo) + 1e-12;
  b.lo -= margin;
  b.hi += margin;
  return b;
}

std::vector<double> dense_operator(const BackgroundField& bg, OperatorKind which,
                                   std::int64_t max_dim) {
  const std::int64_t dim = operator_dimension(bg, which);
  if (dim > max_dim) throw size_error("operator dimension exceeds the exact-method limit");
  std::vector<double> mat(static_cast<size_t>(dim) * dim, 0.0);
  AdjointField e(bg.geometry_ptr(), bg.algebra_ptr(), operator_rank(which));
  AdjointField col(bg.geometry_ptr(), bg.algebra_ptr(), operator_rank(which));
  for (std::int64_t j = 0; j < dim; ++j) {
    e.set_zero();
    e.data()[j] = 1.0;
    apply_operator(bg, which, e, col);
    for (std::int64_t i = 0; i < dim; ++i) mat[static_cast<size_t>(i) * dim + j] = col.data()[i];
  }
  return mat;
}

std::vector<double> dense_spectrum(const BackgroundField& bg, OperatorKind which,
                                   std::int64_t max_dim) {
  std::vector<double> mat = dense_operator(bg, which, max_dim);
  const auto dim = static_cast<lapack_int>(operator_dimension(bg, which));
  std::vector<double> w(static_cast<size_t>(dim));
  lapack_int info = LAPACKE_dsyevd(LAPACK_ROW_MAJOR, 'N', 'U', dim, mat.data(), dim, w.data());
  if (info != 0) throw convergence_error("dsyevd failed with info=" + std::to_string(info));
  return w;
}

double lowest_ritz_value(const BackgroundField& bg, OperatorKind which, int iterations,
                         std::uint64_t seed) {
  const std::int64_t dim = operator_dimension(bg, which);
  const int m = static_cast<int>(std::min<std::int64_t>(iterations, dim));
  AdjointField v(bg.geometry_ptr(), bg.algebra_ptr(), operator_rank(which));
  v.fill_rademacher_from(seed);
  double nv = norm(v);
  for (std::int64_t i = 0; i < v.size(); ++i) v.data()[i] /= nv;

  AdjointField vprev(bg.geometry_ptr(), bg.algebra_ptr(), operator_rank(which));
  AdjointField w(bg.geometry_ptr(), bg.algebra_ptr(), operator_rank(which));
  std::vector<double> alpha, beta;
  double beta_prev = 0.0;
  for (int it = 0; it < m; ++it) {
    apply_operator(bg, which, v, w);
    double a = dot(w, v);
    alpha.push_back(a);
    for (std::int64_t i = 0; i < w.size(); ++i)
      w.data()[i] -= a * v.data()[i] + beta_prev * vprev.data()[i];
    double b = norm(w);
    if (b < 1e-13) break;
    beta.push_back(b);
    beta_prev = b;
    vprev = v;
    for (std::int64_t i = 0; i < v.size(); ++i) v.data()[i] = w.data()[i] / b;
  }
  const int k = static_cast<int>(alpha.size());
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < k; ++i) {
    t(i, i) = alpha[static_cast<size_t>(i)];
    if (i + 1 < k) t(i, i + 1) = t(i + 1, i) = beta[static_cast<size_t>(i)];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace ymlab
