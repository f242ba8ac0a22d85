#include "ymlab/lattice.hpp"

#include <cmath>

namespace ymlab {

LatticeGeometry::LatticeGeometry(std::array<int, 4> extents, double spacing)
    : extents_(extents), spacing_(spacing) {
  for (int mu = 0; mu < 4; ++mu)
    if (extents_[static_cast<size_t>(mu)] < 2)
      throw parameter_error("lattice extents must be >= 2");
  if (spacing <= 0) throw parameter_error("lattice spacing must be positive");
  nsites_ = 1;
  for (int mu = 0; mu < 4; ++mu) nsites_ *= extents_[static_cast<size_t>(mu)];

  for (int mu = 0; mu < 4; ++mu) {
    fwd_[static_cast<size_t>(mu)].resize(static_cast<size_t>(nsites_));
    bwd_[static_cast<size_t>(mu)].resize(static_cast<size_t>(nsites_));
  }
  for (std::int64_t s = 0; s < nsites_; ++s) {
    std::array<int, 4> x = coords(s);
    for (int mu = 0; mu < 4; ++mu) {
      std::array<int, 4> xp = x, xm = x;
      xp[static_cast<size_t>(mu)] = (x[static_cast<size_t>(mu)] + 1) % extent(mu);
      xm[static_cast<size_t>(mu)] = (x[static_cast<size_t>(mu)] + extent(mu) - 1) % extent(mu);
      fwd_[static_cast<size_t>(mu)][static_cast<size_t>(s)] = index(xp);
      bwd_[static_cast<size_t>(mu)][static_cast<size_t>(s)] = index(xm);
    }
  }
}

double LatticeGeometry::volume() const {
  double v = std::pow(spacing_, 4);
  for (int mu = 0; mu < 4; ++mu) v *= extent(mu);
  return v;
}

std::int64_t LatticeGeometry::index(const std::array<int, 4>& x) const {
  return x[0] + static_cast<std::int64_t>(extents_[0]) *
                    (x[1] + static_cast<std::int64_t>(extents_[1]) *
                                (x[2] + static_cast<std::int64_t>(extents_[2]) * x[3]));
}

std::array<int, 4> LatticeGeometry::coords(std::int64_t idx) const {
  std::array<int, 4> x;
  x[0] = static_cast<int>(idx % extents_[0]);
  idx /= extents_[0];
  x[1] = static_cast<int>(idx % extents_[1]);
  idx /= extents_[1];
  x[2] = static_cast<int>(idx % extents_[2]);
  idx /= extents_[2];
  x[3] = static_cast<int>(idx);
  return x;
}

double free_laplacian_eigenvalue(const LatticeGeometry& g, const std::array<int, 4>& mode) {
  const double a2 = g.spacing() * g.spacing();
  double lam = 0.0;
  for (int mu = 0; mu < 4; ++mu) {
    double phase = 2.0 * M_PI * mode[static_cast<size_t>(mu)] / g.extent(mu);
    lam += (2.0 - 2.0 * std::cos(phase)) / a2;
  }
  return lam;
}

std::vector<double> free_laplacian_spectrum(const LatticeGeometry& g) {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(g.nsites()));
  std::array<int, 4> k;
  for (k[3] = 0; k[3] < g.extent(3); ++k[3])
    for (k[2] = 0; k[2] < g.extent(2); ++k[2])
      for (k[1] = 0; k[1] < g.extent(1); ++k[1])
        for (k[0] = 0; k[0] < g.extent(0); ++k[0])
          out.push_back(free_laplacian_eigenvalue(g, k));
  return out;
}

}  // namespace ymlab
