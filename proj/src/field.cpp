#include "ymlab/field.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <cstring>

#include "ymlab/parallel.hpp"
#include "ymlab/rng.hpp"

namespace ymlab {

AdjointField::AdjointField(GeometryPtr geom, AlgebraPtr alg, FieldRank rank)
    : geom_(std::move(geom)), alg_(std::move(alg)), rank_(rank) {
  data_.assign(static_cast<size_t>(geom_->nsites()) * ncomp() * alg_->dim(), 0.0);
}

void AdjointField::set_zero() { std::fill(data_.begin(), data_.end(), 0.0); }

void AdjointField::fill_rademacher_from(std::uint64_t seed) {
  SplitMix64 g(seed);
  fill_rademacher(g, data_);
}

bool AdjointField::compatible(const AdjointField& o) const {
  return rank_ == o.rank_ && geometry() == o.geometry() && alg_->dim() == o.alg_->dim();
}

double dot(const AdjointField& a, const AdjointField& b) {
  if (!a.compatible(b)) throw shape_error("inner product on incompatible fields");
  const double* x = a.data();
  const double* y = b.data();
  return deterministic_sum(a.size(), [&](index_t i) { return x[i] * y[i]; });
}

double norm(const AdjointField& a) { return std::sqrt(dot(a, a)); }

namespace ref {
double dot(const AdjointField& a, const AdjointField& b) {
  if (!a.compatible(b)) throw shape_error("inner product on incompatible fields");
  const double* x = a.data();
  const double* y = b.data();
  return ref::serial_sum(a.size(), [&](index_t i) { return x[i] * y[i]; });
}
}  // namespace ref

int BackgroundField::plane_index(int mu, int nu) {
  static constexpr int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
  return table[mu][nu];
}

std::pair<int, int> BackgroundField::plane_dirs(int plane) {
  static constexpr std::pair<int, int> dirs[6] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  return dirs[plane];
}

namespace {

using Mat = Eigen::MatrixXd;

Mat ad_matrix(const LieAlgebra& alg, const double* x) {
  const int d = alg.dim();
  std::vector<double> coeff(x, x + d);
  std::vector<double> m = alg.adjoint_matrix(coeff);
  Mat out(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) out(r, c) = m[static_cast<size_t>(r) * d + c];
  return out;
}

// Z^b = (1/C) sum_{a,c} f^{abc} A_{ac} -- inverse of Z -> ad_Z for A in the
// image of ad.
std::vector<double> project_to_algebra(const LieAlgebra& alg, const Mat& a, double casimir) {
  const int d = alg.dim();
  std::vector<double> z(static_cast<size_t>(d), 0.0);
  for (const auto& e : alg.nonzeros()) {
    // six permutations of the canonical entry contribute; exploit antisymmetry
    // of both f and A
    const double v = e.value;
    z[static_cast<size_t>(e.b)] += v * (a(e.a, e.c) - a(e.c, e.a));
    z[static_cast<size_t>(e.a)] += v * (a(e.c, e.b) - a(e.b, e.c));
    z[static_cast<size_t>(e.c)] += v * (a(e.b, e.a) - a(e.a, e.b));
  }
  for (double& x : z) x /= casimir;
  return z;
}

}  // namespace

void BackgroundField::derive_links_from_b() {
  const int d = dim();
  const double a = geom_->spacing();
  const std::int64_t n = geom_->nsites();
  links_.assign(static_cast<size_t>(n) * 4 * d * d, 0.0);
  parallel_for(n, [&](index_t s) {
    for (int mu = 0; mu < 4; ++mu) {
      const double* bx = b(s, mu);
      double norm2 = 0.0;
      for (int c = 0; c < d; ++c) norm2 += bx[c] * bx[c];
      double* u = &links_[static_cast<size_t>((s * 4 + mu) * d * d)];
      if (norm2 == 0.0) {
        for (int r = 0; r < d; ++r) u[r * d + r] = 1.0;
        continue;
      }
      Mat m = (a * ad_matrix(*alg_, bx)).exp();
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) u[r * d + c] = m(r, c);
    }
  });
}

void BackgroundField::derive_field_strength() {
  const int d = dim();
  const double a2 = geom_->spacing() * geom_->spacing();
  const std::int64_t n = geom_->nsites();
  const double casimir = alg_->casimir_adjoint();
  fs_.assign(static_cast<size_t>(n) * 6 * d, 0.0);
  adf_.assign(static_cast<size_t>(n) * 6 * d * d, 0.0);

  auto link_mat = [&](std::int64_t s, int mu) {
    Mat m(d, d);
    const double* u = link(s, mu);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) m(r, c) = u[r * d + c];
    return m;
  };

  std::vector<double> fsmax_block(static_cast<size_t>(n), 0.0);
  parallel_for(n, [&](index_t s) {
    for (int p = 0; p < 6; ++p) {
      auto [mu, nu] = plane_dirs(p);
      const std::int64_t xpm = geom_->forward(s, mu);
      const std::int64_t xpn = geom_->forward(s, nu);
      const std::int64_t xmm = geom_->backward(s, mu);
      const std::int64_t xmn = geom_->backward(s, nu);
      const std::int64_t xmm_pn = geom_->forward(xmm, nu);
      const std::int64_t xmn_pm = geom_->forward(xmn, mu);
      const std::int64_t xmm_mn = geom_->backward(xmm, nu);

      // the four clover leaves around x in the (mu,nu) plane, each orthogonal
      Mat l1 = link_mat(s, mu) * link_mat(xpm, nu) * link_mat(xpn, mu).transpose() *
               link_mat(s, nu).transpose();
      Mat l2 = link_mat(s, nu) * link_mat(xmm_pn, mu).transpose() *
               link_mat(xmm, nu).transpose() * link_mat(xmm, mu);
      Mat l3 = link_mat(xmm, mu).transpose() * link_mat(xmm_mn, nu).transpose() *
               link_mat(xmm_mn, mu) * link_mat(xmn, nu);
      Mat l4 = link_mat(xmn, nu).transpose() * link_mat(xmn, mu) * link_mat(xmn_pm, nu) *
               link_mat(s, mu).transpose();

      // principal log per leaf keeps the abelian constant case exact
      Mat avg = 0.25 * (l1.log() + l2.log() + l3.log() + l4.log());
      Mat anti = 0.5 * (avg - avg.transpose());
      std::vector<double> z = project_to_algebra(*alg_, anti, casimir);
      double* f = &fs_[static_cast<size_t>((s * 6 + p) * d)];
      for (int c = 0; c < d; ++c) {
        f[c] = z[static_cast<size_t>(c)] / a2;
        double av = std::abs(f[c]);
        if (av > fsmax_block[static_cast<size_t>(s)]) fsmax_block[static_cast<size_t>(s)] = av;
      }
      Mat adf = ad_matrix(*alg_, f);
      double* m2 = &adf_[static_cast<size_t>((s * 6 + p) * d * d)];
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) m2[r * d + c] = -2.0 * adf(r, c);
    }
  });
  fs_max_ = 0.0;
  for (double v : fsmax_block)
    if (v > fs_max_) fs_max_ = v;
}

BackgroundField make_background(GeometryPtr geom, AlgebraPtr alg, const BackgroundParams& p) {
  const int d = alg->dim();
  const double a = geom->spacing();
  BackgroundField bg;
  bg.geom_ = geom;
  bg.alg_ = alg;
  bg.params_ = p;
  bg.b_.assign(static_cast<size_t>(geom->nsites()) * 4 * d, 0.0);

  switch (p.kind) {
    case BackgroundKind::zero:
      break;
    case BackgroundKind::constant_abelian: {
      if (p.plane_mu == p.plane_nu || p.plane_mu < 0 || p.plane_nu < 0 || p.plane_mu > 3 ||
          p.plane_nu > 3)
        throw parameter_error("plane indices must be distinct directions in 0..3");
      if (static_cast<int>(p.color_dir.size()) != d)
        throw dimension_error("color direction must have d components");
      double cn = 0.0;
      for (double v : p.color_dir) cn += v * v;
      if (std::abs(cn - 1.0) > 1e-10) throw parameter_error("color direction must be a unit vector");
      if (std::abs(p.strength) * a * a > 1.0)
        throw discretization_unsafe("a^2 |fbar| > 1: field too strong for the lattice");
      const int mu = p.plane_mu, nu = p.plane_nu;
      const int lmu = geom->extent(mu);
      // B_nu(x) = fbar * (a x_mu) * n; transition wrap on the mu boundary:
      // B_mu(x_mu = L_mu - 1) = -fbar * L_mu * (a x_nu) * n. All plaquettes in
      // the plane then equal exp(a^2 fbar ad_n) exactly when a^2 fbar L_mu L_nu
      // is a multiple of 2 pi.
      for (std::int64_t s = 0; s < geom->nsites(); ++s) {
        auto x = geom->coords(s);
        double* bnu = &bg.b_[static_cast<size_t>((s * 4 + nu) * d)];
        for (int c = 0; c < d; ++c)
          bnu[c] = p.strength * (a * x[static_cast<size_t>(mu)]) * p.color_dir[static_cast<size_t>(c)];
        if (x[static_cast<size_t>(mu)] == lmu - 1) {
          double* bmu = &bg.b_[static_cast<size_t>((s * 4 + mu) * d)];
          for (int c = 0; c < d; ++c)
            bmu[c] = -p.strength * lmu * (a * x[static_cast<size_t>(nu)]) *
                     p.color_dir[static_cast<size_t>(c)];
        }
      }
      break;
    }
    case BackgroundKind::random_smooth: {
      // superposition of the lowest Fourier modes, reproducible from the seed
      SplitMix64 rng(p.seed);
      struct ModeCoeff {
        std::array<int, 4> m;
        double c, sn;
      };
      const auto& L = geom->extents();
      std::vector<std::array<int, 4>> modes;
      for (int m0 = -1; m0 <= 1; ++m0)
        for (int m1 = -1; m1 <= 1; ++m1)
          for (int m2 = -1; m2 <= 1; ++m2)
            for (int m3 = -1; m3 <= 1; ++m3) modes.push_back({m0, m1, m2, m3});
      const double scale = p.amplitude / std::sqrt(static_cast<double>(modes.size()));
      std::vector<std::vector<ModeCoeff>> coeffs(static_cast<size_t>(4 * d));
      for (int mu = 0; mu < 4; ++mu)
        for (int c = 0; c < d; ++c) {
          auto& list = coeffs[static_cast<size_t>(mu * d + c)];
          for (const auto& m : modes) list.push_back({m, rng.normal(), rng.normal()});
        }
      parallel_for(geom->nsites(), [&](index_t s) {
        auto x = geom->coords(s);
        for (int mu = 0; mu < 4; ++mu)
          for (int c = 0; c < d; ++c) {
            double v = 0.0;
            for (const auto& mc : coeffs[static_cast<size_t>(mu * d + c)]) {
              double phase = 0.0;
              for (int rho = 0; rho < 4; ++rho)
                phase += 2.0 * M_PI * mc.m[static_cast<size_t>(rho)] *
                         x[static_cast<size_t>(rho)] / L[static_cast<size_t>(rho)];
              v += mc.c * std::cos(phase) + mc.sn * std::sin(phase);
            }
            bg.b_[static_cast<size_t>((s * 4 + mu) * d + c)] = scale * v;
          }
      });
      break;
    }
    case BackgroundKind::transformed:
      throw parameter_error("transformed backgrounds come from gauge_transform");
  }

  bg.derive_links_from_b();
  bg.derive_field_strength();
  return bg;
}

double quantized_strength(const LatticeGeometry& g, int plane_mu, int plane_nu, int k) {
  const double a2 = g.spacing() * g.spacing();
  return 2.0 * M_PI * k / (a2 * g.extent(plane_mu) * g.extent(plane_nu));
}

BackgroundField background_from_b(GeometryPtr geom, AlgebraPtr alg, const BackgroundParams& p,
                                  std::vector<double> b) {
  BackgroundField bg;
  bg.geom_ = geom;
  bg.alg_ = alg;
  bg.params_ = p;
  if (b.size() != static_cast<size_t>(geom->nsites()) * 4 * alg->dim())
    throw shape_error("B payload size mismatch");
  bg.b_ = std::move(b);
  bg.derive_links_from_b();
  bg.derive_field_strength();
  return bg;
}

double classical_action(const BackgroundField& bg, double g_squared) {
  if (g_squared <= 0) throw parameter_error("g^2 must be positive");
  const int d = bg.dim();
  const double a4 = std::pow(bg.geometry().spacing(), 4);
  double sum = deterministic_sum(bg.geometry().nsites(), [&](index_t s) {
    double acc = 0.0;
    for (int p = 0; p < 6; ++p) {
      const double* f = bg.field_strength(s, p);
      for (int c = 0; c < d; ++c) acc += f[c] * f[c];
    }
    return acc;
  });
  return sum * 2.0 * a4 / (4.0 * g_squared);
}

std::vector<double> random_gauge(const LatticeGeometry& g, const LieAlgebra& alg,
                                 std::uint64_t seed, double amplitude) {
  const int d = alg.dim();
  std::vector<double> h(static_cast<size_t>(g.nsites()) * d * d);
  std::vector<double> theta(static_cast<size_t>(g.nsites()) * d);
  SplitMix64 rng(seed);
  for (double& t : theta) t = amplitude * rng.normal();
  parallel_for(g.nsites(), [&](index_t s) {
    Mat m = ad_matrix(alg, &theta[static_cast<size_t>(s) * d]).exp();
    double* hs = &h[static_cast<size_t>(s) * d * d];
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) hs[r * d + c] = m(r, c);
  });
  return h;
}

namespace {

void check_orthogonal(const std::vector<double>& h, std::int64_t nsites, int d) {
  if (h.size() != static_cast<size_t>(nsites) * d * d)
    throw invalid_gauge("transform has wrong size");
  for (std::int64_t s = 0; s < nsites; ++s) {
    const double* hs = &h[static_cast<size_t>(s) * d * d];
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) {
        double acc = 0.0;
        for (int e = 0; e < d; ++e) acc += hs[r * d + e] * hs[c * d + e];
        if (std::abs(acc - (r == c ? 1.0 : 0.0)) > 1e-10)
          throw invalid_gauge("per-site matrix is not orthogonal");
      }
  }
}

}  // namespace

BackgroundField gauge_transform(const BackgroundField& bg, const std::vector<double>& h) {
  const int d = bg.dim();
  const std::int64_t n = bg.geometry().nsites();
  check_orthogonal(h, n, d);

  BackgroundField out;
  out.geom_ = bg.geom_;
  out.alg_ = bg.alg_;
  out.params_ = bg.params_;
  out.params_.kind = BackgroundKind::transformed;
  out.links_.assign(bg.links_.size(), 0.0);
  out.b_.assign(bg.b_.size(), 0.0);

  // U'_mu(x) = h(x)^T U_mu(x) h(x+mu)
  using RMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  parallel_for(n, [&](index_t s) {
    Eigen::Map<const RMat> hx(&h[static_cast<size_t>(s) * d * d], d, d);
    for (int mu = 0; mu < 4; ++mu) {
      const std::int64_t sp = bg.geometry().forward(s, mu);
      Eigen::Map<const RMat> hxp(&h[static_cast<size_t>(sp) * d * d], d, d);
      Eigen::Map<const RMat> u(bg.link(s, mu), d, d);
      RMat up = hx.transpose() * u * hxp;
      double* dst = &out.links_[static_cast<size_t>((s * 4 + mu) * d * d)];
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) dst[r * d + c] = up(r, c);
    }
  });

  // back-project B = log(U)/a for inspection and serialization
  const double a = bg.geometry().spacing();
  const double casimir = bg.alg_->casimir_adjoint();
  parallel_for(n, [&](index_t s) {
    for (int mu = 0; mu < 4; ++mu) {
      const double* u = out.link(s, mu);
      Mat m(d, d);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) m(r, c) = u[r * d + c];
      Mat lg = m.log();
      Mat anti = 0.5 * (lg - lg.transpose());
      std::vector<double> z = project_to_algebra(*out.alg_, anti, casimir);
      double* bc = &out.b_[static_cast<size_t>((s * 4 + mu) * d)];
      for (int c = 0; c < d; ++c) bc[c] = z[static_cast<size_t>(c)] / a;
    }
  });

  out.derive_field_strength();
  return out;
}

AdjointField gauge_transform_field(const AdjointField& v, const std::vector<double>& h) {
  const int d = v.algebra().dim();
  const std::int64_t n = v.geometry().nsites();
  check_orthogonal(h, n, d);
  AdjointField out(v.geometry_ptr(), v.algebra_ptr(), v.rank());
  const int nc = v.ncomp();
  parallel_for(n, [&](index_t s) {
    const double* hs = &h[static_cast<size_t>(s) * d * d];
    for (int comp = 0; comp < nc; ++comp) {
      for (int r = 0; r < d; ++r) {
        double acc = 0.0;
        for (int e = 0; e < d; ++e) acc += hs[e * d + r] * v.at(s, comp, e);  // h^T v
        out.at(s, comp, r) = acc;
      }
    }
  });
  return out;
}

}  // namespace ymlab
