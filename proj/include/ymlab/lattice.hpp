#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "ymlab/errors.hpp"

namespace ymlab {

// Periodic 4-torus. Site index bijection (documented, used by the binary
// container): idx = x0 + L0*(x1 + L1*(x2 + L2*x3)).
class LatticeGeometry {
public:
  LatticeGeometry(std::array<int, 4> extents, double spacing = 1.0);

  const std::array<int, 4>& extents() const { return extents_; }
  int extent(int mu) const { return extents_[static_cast<size_t>(mu)]; }
  double spacing() const { return spacing_; }
  std::int64_t nsites() const { return nsites_; }
  double volume() const;

  std::int64_t index(const std::array<int, 4>& x) const;
  std::array<int, 4> coords(std::int64_t idx) const;

  std::int64_t forward(std::int64_t site, int mu) const {
    return fwd_[static_cast<size_t>(mu)][static_cast<size_t>(site)];
  }
  std::int64_t backward(std::int64_t site, int mu) const {
    return bwd_[static_cast<size_t>(mu)][static_cast<size_t>(site)];
  }
  const std::int64_t* forward_table(int mu) const { return fwd_[static_cast<size_t>(mu)].data(); }
  const std::int64_t* backward_table(int mu) const { return bwd_[static_cast<size_t>(mu)].data(); }

  bool operator==(const LatticeGeometry& o) const {
    return extents_ == o.extents_ && spacing_ == o.spacing_;
  }

private:
  std::array<int, 4> extents_;
  double spacing_;
  std::int64_t nsites_;
  std::array<std::vector<std::int64_t>, 4> fwd_, bwd_;
};

// Free lattice Laplacian eigenvalue for integer mode k:
// sum_mu (2 - 2 cos(2 pi k_mu / L_mu)) / a^2.
double free_laplacian_eigenvalue(const LatticeGeometry& g, const std::array<int, 4>& mode);

// All free eigenvalues (one per momentum mode), ascending not guaranteed.
std::vector<double> free_laplacian_spectrum(const LatticeGeometry& g);

}  // namespace ymlab
