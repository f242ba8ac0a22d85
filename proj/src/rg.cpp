#include "ymlab/rg.hpp"

#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <string>

namespace ymlab {

double run_coupling(double g2_ren, double mu, double eps, double beta) {
  if (g2_ren <= 0 || mu <= 0 || eps <= 0 || beta <= 0)
    throw parameter_error("run_coupling needs positive g2_ren, mu, eps, beta");
  const double denom = 1.0 - beta * g2_ren * std::log(eps / mu);
  if (denom <= 0)
    throw pole_error("scale at or above the pole eps* = " +
                     std::to_string(pole_scale(g2_ren, mu, beta)));
  return g2_ren / denom;
}

double pole_scale(double g2_ren, double mu, double beta) {
  return mu * std::exp(1.0 / (beta * g2_ren));
}

RGState flow_ode(const RGState& state, double target_ln_eps, const StepControl& ctl) {
  if (state.u <= 0 || state.eps <= 0 || state.beta <= 0)
    throw parameter_error("flow needs positive coupling, scale and beta");
  const double start = std::log(state.eps);
  if (target_ln_eps == start) return state;
  // the path must stay below the pole
  const double ln_pole = std::log(pole_scale(state.u, state.eps, state.beta));
  if (target_ln_eps >= ln_pole)
    throw pole_error("target scale crosses the pole at ln eps* = " + std::to_string(ln_pole));

  namespace odeint = boost::numeric::odeint;
  using state_t = std::array<double, 1>;
  const double beta = state.beta;
  auto rhs = [beta](const state_t& y, state_t& dydl, double) { dydl[0] = beta * y[0] * y[0]; };

  state_t y{state.u};
  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<state_t>>(ctl.abs_tol,
                                                                              ctl.rel_tol);
  const double dir = target_ln_eps > start ? 1.0 : -1.0;
  try {
    odeint::integrate_adaptive(stepper, rhs, y, start, target_ln_eps, dir * ctl.initial_step);
  } catch (const std::exception& e) {
    throw integration_error(std::string("flow step control failed: ") + e.what());
  }
  if (!(y[0] > 0) || !std::isfinite(y[0]))
    throw pole_error("flow left the asymptotically free branch");
  return {y[0], std::exp(target_ln_eps), state.beta};
}

double transmutation_scale(double g2_ren, double mu, double beta) {
  if (g2_ren <= 0 || mu <= 0 || beta <= 0)
    throw parameter_error("transmutation_scale needs positive inputs");
  return mu * std::exp(1.0 / (beta * g2_ren));
}

}  // namespace ymlab
