#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ymlab/lattice.hpp"
#include "ymlab/lie.hpp"

namespace ymlab {

using GeometryPtr = std::shared_ptr<const LatticeGeometry>;
using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

enum class FieldRank { scalar, vector };  // ghost-like domain vs gauge fluctuation

// d color components per site, times 4 direction components for rank vector.
// Layout: data[(site * ncomp + comp) * d + color], site-major.
class AdjointField {
public:
  AdjointField(GeometryPtr geom, AlgebraPtr alg, FieldRank rank);

  FieldRank rank() const { return rank_; }
  int ncomp() const { return rank_ == FieldRank::scalar ? 1 : 4; }
  std::int64_t size() const { return static_cast<std::int64_t>(data_.size()); }
  const LatticeGeometry& geometry() const { return *geom_; }
  const LieAlgebra& algebra() const { return *alg_; }
  GeometryPtr geometry_ptr() const { return geom_; }
  AlgebraPtr algebra_ptr() const { return alg_; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  double& at(std::int64_t site, int comp, int color) {
    return data_[static_cast<size_t>((site * ncomp() + comp) * alg_->dim() + color)];
  }
  double at(std::int64_t site, int comp, int color) const {
    return data_[static_cast<size_t>((site * ncomp() + comp) * alg_->dim() + color)];
  }

  void set_zero();
  void fill_rademacher_from(std::uint64_t seed);

  bool compatible(const AdjointField& o) const;

private:
  GeometryPtr geom_;
  AlgebraPtr alg_;
  FieldRank rank_;
  std::vector<double> data_;
};

// Deterministic block-reduced inner product / norms (thread-count independent).
double dot(const AdjointField& a, const AdjointField& b);
double norm(const AdjointField& a);
namespace ref {
double dot(const AdjointField& a, const AdjointField& b);  // serial reference
}

enum class BackgroundKind : std::uint8_t { zero = 0, constant_abelian = 1, random_smooth = 2, transformed = 3 };

struct BackgroundParams {
  BackgroundKind kind = BackgroundKind::zero;
  double strength = 0.0;           // fbar, units 1/L^2
  int plane_mu = 1, plane_nu = 2;  // field plane
  std::vector<double> color_dir;   // unit d-vector
  std::uint64_t seed = 0;
  double amplitude = 0.0;
};

// Background gauge field on the torus. Adjoint links are the operative data
// (U_mu(x) = exp(a ad_{B_mu(x)}), orthogonal); the clover field strength is
// derived from plaquette logarithms at construction.
class BackgroundField {
public:
  const LatticeGeometry& geometry() const { return *geom_; }
  const LieAlgebra& algebra() const { return *alg_; }
  GeometryPtr geometry_ptr() const { return geom_; }
  AlgebraPtr algebra_ptr() const { return alg_; }
  const BackgroundParams& params() const { return params_; }

  int dim() const { return alg_->dim(); }

  // B_mu^a(x), units 1/L
  const double* b(std::int64_t site, int mu) const {
    return &b_[static_cast<size_t>((site * 4 + mu) * dim())];
  }
  const std::vector<double>& b_raw() const { return b_; }

  // adjoint link, d x d row-major
  const double* link(std::int64_t site, int mu) const {
    return &links_[static_cast<size_t>((site * 4 + mu) * dim() * dim())];
  }

  // clover F_{mu nu}^a(x) for mu < nu via plane index; antisymmetry gives the rest
  static int plane_index(int mu, int nu);            // mu < nu, 0..5
  static std::pair<int, int> plane_dirs(int plane);  // inverse
  const double* field_strength(std::int64_t site, int plane) const {
    return &fs_[static_cast<size_t>((site * 6 + plane) * dim())];
  }
  // cached -2*ad_{F_plane(x)} matrices for the M1 coupling term, d x d row-major
  const double* minus2_ad_f(std::int64_t site, int plane) const {
    return &adf_[static_cast<size_t>((site * 6 + plane) * dim() * dim())];
  }

  // max |F^a_{mu nu}(x)| over sites, planes, colors (infinity norm used for
  // fit-window ceilings)
  double field_strength_max() const { return fs_max_; }

  bool is_zero_background() const { return params_.kind == BackgroundKind::zero; }

  friend BackgroundField make_background(GeometryPtr geom, AlgebraPtr alg,
                                         const BackgroundParams& p);
  friend BackgroundField gauge_transform(const BackgroundField& bg,
                                         const std::vector<double>& h);
  friend BackgroundField background_from_b(GeometryPtr geom, AlgebraPtr alg,
                                           const BackgroundParams& p,
                                           std::vector<double> b);

private:
  BackgroundField() = default;
  void derive_links_from_b();
  void derive_field_strength();

  GeometryPtr geom_;
  AlgebraPtr alg_;
  BackgroundParams params_;
  std::vector<double> b_;      // nsites*4*d
  std::vector<double> links_;  // nsites*4*d*d
  std::vector<double> fs_;     // nsites*6*d
  std::vector<double> adf_;    // nsites*6*d*d
  double fs_max_ = 0.0;
};

// Factory for test backgrounds. constant_abelian uses transition-wrap links:
// all plaquettes in the plane equal exp(a^2 fbar ad_n) exactly when
// fbar a^2 L_mu L_nu is an integer multiple of 2 pi (adjoint flux quantum);
// otherwise the single corner line carries the wrap mismatch.
BackgroundField make_background(GeometryPtr geom, AlgebraPtr alg, const BackgroundParams& p);

// fbar of the nearest exactly-quantized constant abelian background.
double quantized_strength(const LatticeGeometry& g, int plane_mu, int plane_nu, int k);

// Rebuild from serialized B (container reader).
BackgroundField background_from_b(GeometryPtr geom, AlgebraPtr alg, const BackgroundParams& p,
                                  std::vector<double> b);

// S = (1/(4 g^2)) sum_x sum_{mu<nu} 2 F^a F^a a^4, gauge invariant, >= 0.
double classical_action(const BackgroundField& bg, double g_squared);

// Per-site orthogonal matrices h (nsites*d*d row-major), from exp(ad_theta):
// always lands in the adjoint group.
std::vector<double> random_gauge(const LatticeGeometry& g, const LieAlgebra& alg,
                                 std::uint64_t seed, double amplitude = 0.7);

// Links conjugate as U_mu(x) -> h(x)^T U_mu(x) h(x+mu); fields as v -> h^T v.
BackgroundField gauge_transform(const BackgroundField& bg, const std::vector<double>& h);
AdjointField gauge_transform_field(const AdjointField& v, const std::vector<double>& h);

}  // namespace ymlab
