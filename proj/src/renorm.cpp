#include "ymlab/renorm.hpp"

#include <cmath>
#include <sstream>

namespace ymlab {

double beta_theoretical(const LieAlgebra& alg) {
  return 11.0 * alg.casimir_adjoint() / (48.0 * M_PI * M_PI);
}

namespace {

std::string describe(const BackgroundField& bg) {
  std::ostringstream os;
  const auto& e = bg.geometry().extents();
  os << family_name(bg.algebra().family()) << "(" << bg.algebra().n() << ") " << e[0] << "x"
     << e[1] << "x" << e[2] << "x" << e[3];
  switch (bg.params().kind) {
    case BackgroundKind::zero: os << " zero"; break;
    case BackgroundKind::constant_abelian:
      os << " constant_abelian fbar=" << bg.params().strength << " plane=("
         << bg.params().plane_mu << "," << bg.params().plane_nu << ")";
      break;
    case BackgroundKind::random_smooth:
      os << " random_smooth seed=" << bg.params().seed << " amp=" << bg.params().amplitude;
      break;
    case BackgroundKind::transformed: os << " gauge-transformed"; break;
  }
  return os.str();
}

}  // namespace

DivergenceReport divergence_coefficient(const SmallTFit& fit_m0, const SmallTFit& fit_m1,
                                        const BackgroundField& bg) {
  // windows must overlap to describe the same small-t regime
  if (fit_m0.window.t_min > fit_m1.window.t_max || fit_m1.window.t_min > fit_m0.window.t_max)
    throw mismatch_error("fit windows do not overlap");

  DivergenceReport r;
  r.background = describe(bg);
  r.a2_m0 = fit_m0.a2;
  r.a2_m0_sigma = fit_m0.a2_sigma();
  r.a2_m1 = fit_m1.a2;
  r.a2_m1_sigma = fit_m1.a2_sigma();
  r.k = fit_m0.a2 - 0.5 * fit_m1.a2;
  r.k_sigma = std::sqrt(r.a2_m0_sigma * r.a2_m0_sigma + 0.25 * r.a2_m1_sigma * r.a2_m1_sigma);
  r.s4 = 4.0 * classical_action(bg, 1.0);
  r.beta_theory = beta_theoretical(bg.algebra());

  if (bg.is_zero_background() || r.s4 == 0.0) {
    r.exact_zero_case = true;
    r.rho = std::nan("");
    r.rho_sigma = std::nan("");
    r.relative_deviation = std::nan("");
    return r;
  }

  const double denom = 16.0 * M_PI * M_PI * r.s4;
  r.rho = -4.0 * r.k / denom;
  r.rho_sigma = 4.0 * r.k_sigma / denom;
  r.asymptotically_free = r.rho > 0;
  r.relative_deviation = (r.rho - r.beta_theory) / r.beta_theory;
  return r;
}

}  // namespace ymlab
