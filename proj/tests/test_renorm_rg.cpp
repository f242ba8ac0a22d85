#include <doctest.h>

#include <cmath>

#include "ymlab/renorm.hpp"
#include "ymlab/rg.hpp"
#include "ymlab/rng.hpp"

using namespace ymlab;

namespace {

GeometryPtr geomL(int l) { return std::make_shared<LatticeGeometry>(std::array<int, 4>{l, l, l, l}); }
AlgebraPtr suN(int n) { return std::make_shared<LieAlgebra>(LieAlgebra::build(AlgebraFamily::su, n)); }

BackgroundField const_bg(GeometryPtr geom, AlgebraPtr alg, int k) {
  BackgroundParams p;
  p.kind = BackgroundKind::constant_abelian;
  p.strength = quantized_strength(*geom, 1, 2, k);
  p.plane_mu = 1;
  p.plane_nu = 2;
  p.color_dir.assign(static_cast<size_t>(alg->dim()), 0.0);
  p.color_dir[2] = 1.0;
  return make_background(geom, alg, p);
}

DivergenceReport extract(const BackgroundField& bg, FitWindow w, const TraceMethod& m) {
  HeatEngine e0(bg, OperatorKind::M0);
  HeatEngine e1(bg, OperatorKind::M1);
  std::vector<double> grid = log_grid(w.t_min, w.t_max, 12);
  SmallTFit f0 = fit_small_t(e0.subtracted_series(grid, m), w, 1.0, bg.field_strength_max());
  SmallTFit f1 = fit_small_t(e1.subtracted_series(grid, m), w, 1.0, bg.field_strength_max());
  return divergence_coefficient(f0, f1, bg);
}

}  // namespace

TEST_CASE("beta_theoretical evaluates 11 C / 48 pi^2") {
  CHECK(beta_theoretical(*suN(2)) == doctest::Approx(22.0 / (48.0 * M_PI * M_PI)).epsilon(1e-12));
  CHECK(beta_theoretical(*suN(3)) == doctest::Approx(33.0 / (48.0 * M_PI * M_PI)).epsilon(1e-12));
  CHECK(beta_theoretical(*suN(2)) == doctest::Approx(0.046436).epsilon(1e-4));
}

TEST_CASE("zero background reports the exact-zero case") {
  auto geom = geomL(3);
  auto alg = suN(2);
  BackgroundField bg = make_background(geom, alg, {});
  HeatEngine e0(bg, OperatorKind::M0);
  HeatEngine e1(bg, OperatorKind::M1);
  std::vector<double> grid = log_grid(0.8, 2.0, 6);
  SmallTFit f0 = fit_small_t(e0.subtracted_series(grid, TraceMethod::exact()), {0.8, 2.0});
  SmallTFit f1 = fit_small_t(e1.subtracted_series(grid, TraceMethod::exact()), {0.8, 2.0});
  DivergenceReport r = divergence_coefficient(f0, f1, bg);
  CHECK(r.exact_zero_case);
  CHECK(r.k == 0.0);
  CHECK(std::isnan(r.rho));
}

TEST_CASE("window mismatch is refused") {
  std::vector<double> ts = log_grid(0.5, 1.0, 6);
  HeatTraceSeries s;
  s.t = ts;
  s.value.assign(ts.size(), 1e-3);
  s.stderr_.assign(ts.size(), 0.0);
  SmallTFit fa = fit_small_t(s, {0.5, 1.0});
  std::vector<double> ts2 = log_grid(2.0, 4.0, 6);
  HeatTraceSeries s2;
  s2.t = ts2;
  s2.value.assign(ts2.size(), 1e-3);
  s2.stderr_.assign(ts2.size(), 0.0);
  SmallTFit fb = fit_small_t(s2, {2.0, 4.0});
  auto geom = geomL(3);
  BackgroundField bg = const_bg(geom, suN(2), 1);
  CHECK_THROWS_AS(divergence_coefficient(fa, fb, bg), Error);
}

TEST_CASE("4^4 exact extraction lands within 20% of 11 C / 48 pi^2") {
  auto geom = geomL(4);
  auto alg = suN(2);
  BackgroundField bg = const_bg(geom, alg, 1);
  DivergenceReport r = extract(bg, {1.0, 2.0}, TraceMethod::exact());
  CHECK(r.asymptotically_free);  // sign first
  CHECK(std::abs(r.relative_deviation) < 0.20);
}

TEST_CASE("rho is strength independent within a loose band (4^4, k = 1 vs k = 2)") {
  auto geom = geomL(4);
  auto alg = suN(2);
  DivergenceReport r1 = extract(const_bg(geom, alg, 1), {1.0, 2.0}, TraceMethod::exact());
  // k = 2 doubles the field: the expansion ceiling halves
  DivergenceReport r2 = extract(const_bg(geom, alg, 2), {0.5, 1.0}, TraceMethod::exact());
  CHECK(r1.rho > 0);
  CHECK(r2.rho > 0);
  // 4^4 is the coarse variant: both windows sit at the artifact floor
  CHECK(std::abs(r1.rho - r2.rho) < 0.5 * r1.beta_theory);
}

TEST_CASE("run_coupling: scheme point, monotonicity, UV limit, pole") {
  const double beta = beta_theoretical(*suN(3));
  const double g2 = 0.5, mu = 1.0;
  CHECK(run_coupling(g2, mu, mu, beta) == doctest::Approx(g2).epsilon(1e-15));

  double prev = run_coupling(g2, mu, 1e-12, beta);
  for (double eps : {1e-9, 1e-6, 1e-3, 0.5, 0.9}) {
    double u = run_coupling(g2, mu, eps, beta);
    CHECK(u > prev);  // u(eps) strictly increasing toward the infrared
    prev = u;
  }

  // asymptotic freedom: u -> 0 and u * (-beta ln eps) -> 1 from below
  double prev_ratio = 0.0;
  for (double eps_uv : {1e-100, 1e-200, 1e-300}) {
    const double u_uv = run_coupling(g2, mu, eps_uv, beta);
    CHECK(u_uv < 0.06);
    const double ratio = u_uv * (-beta * std::log(eps_uv / mu));
    CHECK(ratio > prev_ratio);
    CHECK(ratio < 1.0);
    prev_ratio = ratio;
  }
  CHECK(prev_ratio == doctest::Approx(1.0).epsilon(0.05));

  const double pole = pole_scale(g2, mu, beta);
  CHECK_THROWS_AS(run_coupling(g2, mu, pole * 1.0000001, beta), Error);
  CHECK_THROWS_AS(run_coupling(-1.0, mu, 0.5, beta), Error);
}

TEST_CASE("flow matches the closed form to 1e-10 and is reversible") {
  const double beta = beta_theoretical(*suN(3));
  RGState s{0.5, 1.0, beta};
  // zero-length flow
  RGState same = flow_ode(s, std::log(s.eps));
  CHECK(same.u == doctest::Approx(s.u).epsilon(1e-15));

  const double target = std::log(s.eps) - 3.0;
  RGState flowed = flow_ode(s, target);
  const double closed = run_coupling(s.u, s.eps, std::exp(target), beta);
  CHECK(flowed.u == doctest::Approx(closed).epsilon(1e-10));

  RGState back = flow_ode(flowed, std::log(s.eps));
  CHECK(back.u == doctest::Approx(s.u).epsilon(1e-10));

  // random admissible tuples
  SplitMix64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    double g2 = 0.1 + rng.uniform();
    double b = 0.02 + 0.1 * rng.uniform();
    double dl = -4.0 * rng.uniform();
    RGState st{g2, 1.0, b};
    RGState fl = flow_ode(st, dl);
    CHECK(fl.u == doctest::Approx(run_coupling(g2, 1.0, std::exp(dl), b)).epsilon(1e-10));
  }

  // pole crossing refused
  CHECK_THROWS_AS(flow_ode(s, std::log(pole_scale(s.u, s.eps, beta)) + 0.1), Error);
}

TEST_CASE("transmutation scale: flow invariance and limits") {
  const double beta = beta_theoretical(*suN(2));
  const double g2 = 0.6, mu = 2.0;
  const double lambda = transmutation_scale(g2, mu, beta);
  for (int i = 0; i < 5; ++i) {
    const double eps = mu * std::exp(-1.5 * i);
    const double u = run_coupling(g2, mu, eps, beta);
    CHECK(transmutation_scale(u, eps, beta) == doctest::Approx(lambda).epsilon(1e-10));
  }
  // beta -> infinity: Lambda -> mu
  CHECK(transmutation_scale(g2, mu, 1e12) == doctest::Approx(mu).epsilon(1e-10));
  // weak coupling at fixed mu: the scale runs away
  CHECK(transmutation_scale(1e-3, mu, beta) > 1e100);
  CHECK_THROWS_AS(transmutation_scale(-0.1, mu, beta), Error);
}
