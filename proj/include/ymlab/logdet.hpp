#pragma once

#include "ymlab/fit.hpp"

namespace ymlab {

struct QuadratureOpts {
  int points_per_decade = 24;   // trapezoid grid density in ln t
  double tail_tol = 1e-6;       // |integrand| threshold closing the upper integral
  double t_hard_cap = 64.0;     // absolute stop for the upper integral, units a^2
};

// Proper-time-regularized subtracted log-determinant
//   ln det M(B) - ln det M(0) = -int_0^inf dt/t Tr_sub(t)
// evaluated as three reported pieces:
//   divergent_part = (A2/16pi^2) ln(eps/mu_split)          (analytic, from the fit)
//   finite_below   = -int_{t_floor}^{mu} dt/t [Tr_sub - model]
//   finite_above   = -int_{mu}^{t_cap} dt/t Tr_sub
// eps enters only through the analytic piece, so the eps-dependence is exactly
// logarithmic with slope A2/16pi^2. t_floor is the fit-window floor: below it
// the lattice trace leaves the continuum small-t form and the fitted model
// stands in for the continuum region where eps lives.
struct LogdetResult {
  double a1 = 0.0, a2 = 0.0;
  std::array<double, 3> covariance{0, 0, 0};
  double divergent_part = 0.0;
  double finite_below = 0.0;
  double finite_above = 0.0;
  double value = 0.0;
  double epsilon = 0.0;
  double mu_split = 0.0;
  double t_floor = 0.0;
  double t_cap = 0.0;
  bool ir_plateau = false;   // upper integrand stalled above tail_tol (zero-mode deficit)
  bool ir_growth = false;    // upper integrand grows (negative modes)
  double plateau_value = 0.0;
  double lowest_ritz = 0.0;
  double stat_stderr = 0.0;  // stochastic methods only
};

LogdetResult regularized_logdet(HeatEngine& engine, const SmallTFit& fit, double mu_split,
                                double eps, const TraceMethod& method,
                                const QuadratureOpts& opts = {});

// Trapezoid in ln t of -integrand over the grid (exposed for oracle tests).
double log_trapezoid(const std::vector<double>& ts, const std::vector<double>& integrand);

}  // namespace ymlab
