#pragma once

#include <array>
#include <optional>

#include "ymlab/heat.hpp"

namespace ymlab {

struct FitWindow {
  double t_min = 0.0;
  double t_max = 0.0;
};

// Weighted least squares of the small-t law
//   Tr_sub(t) = (A1/t + A2) / (16 pi^2) + O(t)
// over the window. A1 houses the volume-integrated tr a1 (vanishes in the
// continuum), A2 the volume-integrated tr a2 (the log-divergence coefficient).
struct SmallTFit {
  FitWindow window;
  double a1 = 0.0;
  double a2 = 0.0;
  // covariance of (A1, A2): [var(A1), cov(A1,A2), var(A2)]
  std::array<double, 3> covariance{0.0, 0.0, 0.0};
  double chi2_per_dof = 0.0;   // with the series' stated errors
  double rms_residual = 0.0;
  bool misfit = false;         // chi2/dof > 2
  int npoints = 0;

  // window diagnostics (reported, not enforced): lattice-artifact floor
  // t_min >= 2 a^2 and expansion ceiling t_max <= 0.5/|F|_inf
  double floor_bound = 0.0;
  double ceiling_bound = 0.0;
  bool floor_ok = true;
  bool ceiling_ok = true;

  double a1_sigma() const;
  double a2_sigma() const;
  // model value at t
  double model(double t) const;
};

// fs_max < 0 skips the ceiling diagnostic (background unknown to the caller).
SmallTFit fit_small_t(const HeatTraceSeries& series, FitWindow window, double spacing = 1.0,
                      double fs_max = -1.0);

// Default window per the module conventions: [2 a^2, min(0.5/|F|_inf, L^2 a^2/16)].
FitWindow default_fit_window(const BackgroundField& bg);

}  // namespace ymlab
