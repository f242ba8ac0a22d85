#pragma once

#include "ymlab/errors.hpp"

namespace ymlab {

// One-loop flow in u = g^2 against the proper-time scheme scale eps:
//   1/g^2(eps) + beta ln(eps/mu) = 1/g^2_ren,   du/d ln eps = beta u^2.
// eps has dimension [L]^2 and grows toward the infrared; asymptotic freedom
// is u -> 0 as eps -> 0.
struct RGState {
  double u = 0.0;    // g^2
  double eps = 0.0;  // scheme scale, [L]^2
  double beta = 0.0;
};

// closed form u(eps) = g2_ren / (1 - beta g2_ren ln(eps/mu))
double run_coupling(double g2_ren, double mu, double eps, double beta);

// pole scale eps* = mu exp(1/(beta g2_ren)) where the closed form diverges
double pole_scale(double g2_ren, double mu, double beta);

struct StepControl {
  double rel_tol = 1e-13;
  double abs_tol = 1e-14;
  double initial_step = 1e-3;  // in ln eps
};

// integrate du/d ln eps = beta u^2 to target_ln_eps with adaptive steps
RGState flow_ode(const RGState& state, double target_ln_eps, const StepControl& ctl = {});

// dimensional transmutation scale Lambda_t = mu exp(1/(beta g2_ren)),
// invariant along the flow
double transmutation_scale(double g2_ren, double mu, double beta);

}  // namespace ymlab
