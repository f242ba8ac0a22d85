#pragma once

#include <string>

#include "ymlab/fit.hpp"

namespace ymlab {

struct ErrorBudget {
  double statistical = 0.0;     // probe noise through the fits
  double fit_window = 0.0;      // refit with shifted windows
  double discretization = 0.0;  // second strength / volume comparison
  bool has_fit_window = false;
  bool has_discretization = false;
};

// One-loop divergence of ln det M0 - 1/2 ln det M1 against the classical
// action.  K is the raw coefficient of ln(eps/mu) in that combination
// (divided by 16 pi^2 inside rho); the effective-action bookkeeping
// (Gaussian weights e^{-S}: the gluon contributes +1/2 ln det M1, the ghost
// -ln det M0, the action carries 1/(4g^2)) turns it into the beta estimate
//   rho = 4 (A2_1/2 - A2_0) / (16 pi^2 S4) = -4 K / (16 pi^2 S4),
// directly comparable with beta = 11 C / (48 pi^2). rho > 0 is the
// asymptotic-freedom direction.
struct DivergenceReport {
  std::string background;
  double a2_m0 = 0.0, a2_m0_sigma = 0.0;
  double a2_m1 = 0.0, a2_m1_sigma = 0.0;
  double k = 0.0;        // A2^0 - A2^1 / 2
  double k_sigma = 0.0;
  double s4 = 0.0;       // 4 g^2 S = integral of F^a_{mu nu} F^a_{mu nu}
  double rho = 0.0;
  double rho_sigma = 0.0;
  double beta_theory = 0.0;
  double relative_deviation = 0.0;
  bool exact_zero_case = false;
  bool asymptotically_free = false;  // sign gate, checked before magnitudes
  ErrorBudget budget;
};

// beta = 11 C(G) / (48 pi^2)
double beta_theoretical(const LieAlgebra& alg);

DivergenceReport divergence_coefficient(const SmallTFit& fit_m0, const SmallTFit& fit_m1,
                                        const BackgroundField& bg);

}  // namespace ymlab
