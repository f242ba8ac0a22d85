// Acceptance suite: one line per criterion, nonzero exit when any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "ymlab/diagrams.hpp"
#include "ymlab/logdet.hpp"
#include "ymlab/renorm.hpp"
#include "ymlab/rg.hpp"
#include "ymlab/rng.hpp"

using namespace ymlab;

namespace {

constexpr double kPref = 1.0 / (16.0 * M_PI * M_PI);

struct Criterion {
  int id;
  std::string title;
  bool ok = true;
  std::vector<std::string> notes;

  void check(bool cond, const std::string& what) {
    ok = ok && cond;
    notes.push_back(std::string(cond ? "  - ok:   " : "  - FAIL: ") + what);
  }
  void info(const std::string& what) { notes.push_back("  - info: " + what); }
};

std::vector<Criterion> results;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string num(double x, int prec = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
  return buf;
}

AlgebraPtr su2() { return std::make_shared<LieAlgebra>(LieAlgebra::build(AlgebraFamily::su, 2)); }

BackgroundField const_bg(int l, int k, int pm = 1, int pn = 2, int color_axis = 2) {
  auto geom = std::make_shared<LatticeGeometry>(std::array<int, 4>{l, l, l, l});
  BackgroundParams p;
  p.kind = BackgroundKind::constant_abelian;
  p.strength = quantized_strength(*geom, pm, pn, k);
  p.plane_mu = pm;
  p.plane_nu = pn;
  p.color_dir = {0, 0, 0};
  p.color_dir[static_cast<size_t>(color_axis)] = 1.0;
  return make_background(geom, su2(), p);
}

BackgroundField smooth_bg(int l, std::uint64_t seed, double amp) {
  auto geom = std::make_shared<LatticeGeometry>(std::array<int, 4>{l, l, l, l});
  BackgroundParams p;
  p.kind = BackgroundKind::random_smooth;
  p.seed = seed;
  p.amplitude = amp;
  return make_background(geom, su2(), p);
}

struct Extraction {
  DivergenceReport report;
  SmallTFit fit0, fit1;
};

Extraction extract(const BackgroundField& bg, FitWindow w, const TraceMethod& m) {
  HeatEngine e0(bg, OperatorKind::M0);
  HeatEngine e1(bg, OperatorKind::M1);
  std::vector<double> grid = log_grid(w.t_min, w.t_max, 12);
  Extraction out;
  out.fit0 = fit_small_t(e0.subtracted_series(grid, m), w, 1.0, bg.field_strength_max());
  out.fit1 = fit_small_t(e1.subtracted_series(grid, m), w, 1.0, bg.field_strength_max());
  out.report = divergence_coefficient(out.fit0, out.fit1, bg);
  return out;
}

// ---------------------------------------------------------------------------
void criterion1() {
  Criterion c{1, "asymptotic-freedom coefficient 11 C / 48 pi^2"};
  auto t0 = std::chrono::steady_clock::now();

  // 8^4, constant abelian flux k = 2 (the weakest IR-clean quantized strength,
  // |F| a^2 = 4 pi / 64 ~ 0.2), stochastic traces, 64 probes
  BackgroundField bg = const_bg(8, 2);
  const FitWindow w{1.5, 2.55};
  Extraction ex = extract(bg, w, TraceMethod::stochastic(64, 20240901));
  DivergenceReport& r = ex.report;

  c.info("background " + r.background + ", |F| a^2 = " + num(bg.field_strength_max(), 4));
  c.check(r.asymptotically_free, "sign: rho > 0 (asymptotic-freedom direction)");
  c.check(std::abs(r.relative_deviation) < 0.10,
          "8^4 stochastic: rho = " + num(r.rho) + " vs beta = " + num(r.beta_theory) +
              ", relative deviation " + num(r.relative_deviation, 3) + " < 0.10");

  // error budget: statistical, shifted-window systematic, second-strength run
  std::vector<double> grid = log_grid(w.t_min, w.t_max, 12);
  double window_sys = 0.0;
  {
    HeatEngine e0(bg, OperatorKind::M0);
    HeatEngine e1(bg, OperatorKind::M1);
    HeatTraceSeries s0 = e0.subtracted_series(grid, TraceMethod::stochastic(64, 20240901));
    HeatTraceSeries s1 = e1.subtracted_series(grid, TraceMethod::stochastic(64, 20240901));
    for (int variant = 0; variant < 2; ++variant) {
      FitWindow wv = w;
      if (variant == 0)
        wv.t_min = grid[2] * (1 - 1e-9);
      else
        wv.t_max = grid[grid.size() - 3] * (1 + 1e-9);
      SmallTFit f0 = fit_small_t(s0, wv, 1.0, bg.field_strength_max());
      SmallTFit f1 = fit_small_t(s1, wv, 1.0, bg.field_strength_max());
      DivergenceReport alt = divergence_coefficient(f0, f1, bg);
      window_sys = std::max(window_sys, std::abs(alt.rho - r.rho));
    }
  }
  BackgroundField bg3 = const_bg(8, 3);
  Extraction ex3 = extract(bg3, {1.2, 1.7}, TraceMethod::stochastic(64, 20240901));
  const double strength_sys = std::abs(ex3.report.rho - r.rho);
  c.info("error budget: statistical " + num(r.rho_sigma, 3) + ", fit-window " +
         num(window_sys, 3) + ", strength (k=2 vs k=3) " + num(strength_sys, 3));
  c.check(ex3.report.rho > 0 && std::abs(ex3.report.relative_deviation) < 0.10,
          "second strength k=3: relative deviation " + num(ex3.report.relative_deviation, 3));
  const double t_8 = seconds_since(t0);
  c.info("8^4 runtime " + num(t_8, 3) + " s (budget 900 s)");
  c.check(t_8 < 900.0, "8^4 within the 15-minute budget");

  auto t1 = std::chrono::steady_clock::now();
  BackgroundField bg4 = const_bg(4, 1);
  Extraction ex4 = extract(bg4, {1.0, 2.0}, TraceMethod::exact());
  const double t_4 = seconds_since(t1);
  c.check(std::abs(ex4.report.relative_deviation) < 0.20,
          "4^4 exact variant: relative deviation " + num(ex4.report.relative_deviation, 3) +
              " < 0.20");
  c.info("4^4 runtime " + num(t_4, 3) + " s (budget 60 s)");
  c.check(t_4 < 60.0, "4^4 within the 1-minute budget");
  results.push_back(c);
}

// ---------------------------------------------------------------------------
void criterion2() {
  Criterion c{2, "vanishing A1 (the a1 trace claims)"};

  // raw consistency on two distinct weak smooth backgrounds (M0)
  for (std::uint64_t seed : {7ull, 11ull}) {
    BackgroundField bg = smooth_bg(6, seed, 0.04);
    HeatEngine eng(bg, OperatorKind::M0);
    FitWindow w{1.3, 2.4};
    HeatTraceSeries s =
        eng.subtracted_series(log_grid(w.t_min, w.t_max, 12), TraceMethod::stochastic(64, 33));
    SmallTFit f = fit_small_t(s, w, 1.0, bg.field_strength_max());
    c.check(std::abs(f.a1) <= 3 * f.a1_sigma(),
            "M0 random_smooth seed " + std::to_string(seed) + ": |A1| = " + num(std::abs(f.a1), 3) +
                " <= 3 sigma = " + num(3 * f.a1_sigma(), 3));
  }

  // fitted A1 on a lattice carries an O(a^2 S4) discretization term (measured:
  // lattice-unit A1 is L-independent at fixed flux), so the continuum claim is
  // tested on the a^2 -> 0 extrapolation at fixed physical background and
  // fixed physical window, two spacings per background
  const FitWindow wphys{0.0313, 0.0398};
  struct PairCfg {
    int pm, pn, axis;
    const char* name;
  };
  for (const PairCfg& pc : {PairCfg{1, 2, 2, "plane(1,2)"}, PairCfg{0, 3, 0, "plane(0,3)"}}) {
    for (OperatorKind op : {OperatorKind::M0, OperatorKind::M1}) {
      double a1_phys[2], sig_phys[2];
      const int Ls[2] = {8, 10};
      for (int i = 0; i < 2; ++i) {
        const int l = Ls[i];
        BackgroundField bg = const_bg(l, 2, pc.pm, pc.pn, pc.axis);
        FitWindow w{wphys.t_min * l * l, wphys.t_max * l * l};
        HeatEngine eng(bg, op);
        HeatTraceSeries s =
            eng.subtracted_series(log_grid(w.t_min, w.t_max, 12), TraceMethod::stochastic(64, 33));
        SmallTFit f = fit_small_t(s, w, 1.0, bg.field_strength_max());
        a1_phys[i] = f.a1 / (l * l);
        sig_phys[i] = f.a1_sigma() / (l * l);
      }
      const double aa = 1.0 / (Ls[0] * Ls[0]), ab = 1.0 / (Ls[1] * Ls[1]);
      const double wb = aa / (aa - ab), wa = -ab / (aa - ab);
      const double cont = wb * a1_phys[1] + wa * a1_phys[0];
      const double sig = std::sqrt(wb * wb * sig_phys[1] * sig_phys[1] +
                                   wa * wa * sig_phys[0] * sig_phys[0]);
      c.check(std::abs(cont) <= 3 * sig,
              std::string(pc.name) + " " + operator_name(op) +
                  " continuum-extrapolated A1 = " + num(cont, 3) + " +- " + num(sig, 3) +
                  " (raw per-spacing " + num(a1_phys[0], 3) + ", " + num(a1_phys[1], 3) + ")");
    }
  }
  results.push_back(c);
}

// ---------------------------------------------------------------------------
void criterion3() {
  Criterion c{3, "logarithmic divergence law of the regularized logdet"};
  const std::vector<double> epsilons{1e-3, 1e-4, 1e-5};
  const FitWindow w{1.0, 2.0};
  const double mu = 2.0;

  std::vector<double> values, a2s;
  for (double eps : epsilons) {
    // fresh engine per epsilon: the quadrature pieces are recomputed each time
    BackgroundField bg = const_bg(4, 1);
    HeatEngine eng(bg, OperatorKind::M0);
    HeatTraceSeries s =
        eng.subtracted_series(log_grid(w.t_min, w.t_max, 12), TraceMethod::exact());
    SmallTFit fit = fit_small_t(s, w, 1.0, bg.field_strength_max());
    LogdetResult r = regularized_logdet(eng, fit, mu, eps, TraceMethod::exact());
    values.push_back(r.value);
    a2s.push_back(fit.a2);
  }
  c.check(a2s[0] == a2s[1] && a2s[1] == a2s[2], "re-quadrature reproduces the same fit");

  // least squares of value = c0 + c1 ln eps
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = 3;
  for (int i = 0; i < n; ++i) {
    const double x = std::log(epsilons[static_cast<size_t>(i)]);
    sx += x;
    sy += values[static_cast<size_t>(i)];
    sxx += x * x;
    sxy += x * values[static_cast<size_t>(i)];
  }
  const double c1 = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double c0 = (sy - c1 * sx) / n;
  double resid = 0;
  for (int i = 0; i < n; ++i) {
    const double x = std::log(epsilons[static_cast<size_t>(i)]);
    resid = std::max(resid, std::abs(values[static_cast<size_t>(i)] - (c0 + c1 * x)));
  }
  const double c1_expect = kPref * a2s[0];
  c.check(resid < 1e-8, "fit residual " + num(resid, 3) + " < 1e-8");
  c.check(std::abs(c1 - c1_expect) <= 1e-10 * std::abs(c1_expect),
          "slope c1 = " + num(c1, 12) + " matches A2/16pi^2 = " + num(c1_expect, 12) +
              " to 1e-10 relative");
  results.push_back(c);
}

// ---------------------------------------------------------------------------
void criterion4() {
  Criterion c{4, "dimensional transmutation and one-loop flow"};
  const double beta = beta_theoretical(*su2());
  const double g2 = 0.5, mu = 2.0;
  const double lambda = transmutation_scale(g2, mu, beta);
  double worst = 0;
  for (int i = 0; i < 5; ++i) {
    const double eps = mu * std::exp(-1.7 * i);
    const double u = run_coupling(g2, mu, eps, beta);
    worst = std::max(worst, std::abs(transmutation_scale(u, eps, beta) / lambda - 1.0));
  }
  c.check(worst < 1e-10, "Lambda_t invariant over 5 scheme points, worst relative " + num(worst, 3));

  double worst_flow = 0;
  RGState state{g2, mu, beta};
  for (int i = 1; i <= 5; ++i) {
    const double target = std::log(mu) - 1.3 * i;
    const double ode = flow_ode(state, target).u;
    const double closed = run_coupling(g2, mu, std::exp(target), beta);
    worst_flow = std::max(worst_flow, std::abs(ode / closed - 1.0));
  }
  c.check(worst_flow < 1e-10, "flow ODE matches the closed form, worst relative " + num(worst_flow, 3));
  results.push_back(c);
}

// ---------------------------------------------------------------------------
void criterion5() {
  Criterion c{5, "diagram census"};
  using namespace diagrams;

  std::vector<VacuumGraph> two = enumerate_vacuum_graphs(2);
  bool found_fig8 = false, found_sunset = false, found_ghost = false;
  for (const VacuumGraph& g : two) {
    int n3 = 0, n4 = 0, nO = 0, ghost_edges = 0, gluon_edges = 0;
    for (VertexTag t : g.vertices) {
      n3 += t == VertexTag::Gamma3;
      n4 += t == VertexTag::Gamma4;
      nO += t == VertexTag::Omega3;
    }
    for (const Edge& e : g.edges) (e.type == EdgeType::gluon ? gluon_edges : ghost_edges) += 1;
    if (n4 == 1 && n3 == 0 && nO == 0 && gluon_edges == 2) found_fig8 = true;
    if (n3 == 2 && gluon_edges == 3) found_sunset = true;
    if (nO == 2 && ghost_edges == 2 && gluon_edges == 1) found_ghost = true;
  }
  c.check(two.size() == 3, "enumerate_vacuum_graphs(2) returns exactly 3 graphs (got " +
                               std::to_string(two.size()) + ")");
  c.check(found_fig8 && found_sunset && found_ghost,
          "the three pictured terms: figure-eight, sunset, ghost loop");

  std::vector<VacuumGraph> eom = eom_expansion(1);
  int one_loop = 0;
  for (const VacuumGraph& g : eom) one_loop += g.loop_number() == 1;
  c.check(one_loop == 2, "eom_expansion(1): exactly 2 one-loop tadpoles (got " +
                             std::to_string(one_loop) + ")");

  bool power_law = true;
  for (const VacuumGraph& g : enumerate_vacuum_graphs(4, true))
    power_law = power_law && (g.g_power() == 2 * (g.loop_number() - 1));
  c.check(power_law, "g-power = 2(L-1) exhaustively through L = 4");
  results.push_back(c);
}

// ---------------------------------------------------------------------------
void criterion6() {
  Criterion c{6, "property suites"};

  // Jacobi and Casimir for N = 2, 3, 4
  bool jacobi_ok = true, casimir_ok = true;
  for (int n : {2, 3, 4}) {
    LieAlgebra alg = LieAlgebra::build(AlgebraFamily::su, n);
    const int d = alg.dim();
    double worst = 0;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int cc = 0; cc < d; ++cc)
          for (int dd = 0; dd < d; ++dd) {
            double s = 0;
            for (int e = 0; e < d; ++e)
              s += alg.f(a, b, e) * alg.f(e, cc, dd) + alg.f(cc, b, e) * alg.f(a, e, dd) +
                   alg.f(dd, b, e) * alg.f(a, cc, e);
            worst = std::max(worst, std::abs(s));
          }
    jacobi_ok = jacobi_ok && worst < 1e-12;
    casimir_ok = casimir_ok && std::abs(alg.casimir_adjoint() - n) < 1e-12;
  }
  c.check(jacobi_ok, "Jacobi identity to 1e-12 for su(2), su(3), su(4)");
  c.check(casimir_ok, "C(su(N)) = N to 1e-12 for N = 2, 3, 4");

  // gauge invariance: action to 1e-10 and subtracted traces at 3 sigma
  {
    BackgroundField bg = const_bg(3, 1);
    const double action = classical_action(bg, 1.0);
    HeatEngine base(bg, OperatorKind::M0);
    const double ref = base.subtracted(1.0, TraceMethod::exact()).value;
    bool action_ok = true, trace_ok = true;
    for (std::uint64_t seed = 300; seed < 310; ++seed) {
      std::vector<double> h = random_gauge(bg.geometry(), bg.algebra(), seed);
      BackgroundField tr = gauge_transform(bg, h);
      action_ok = action_ok && std::abs(classical_action(tr, 1.0) / action - 1.0) < 1e-10;
      HeatEngine eng(tr, OperatorKind::M0);
      TraceEstimate st = eng.subtracted(1.0, TraceMethod::stochastic(32, seed));
      trace_ok = trace_ok && std::abs(st.value - ref) < 3 * st.stderr_;
    }
    c.check(action_ok, "classical action invariant under 10 random gauge transforms (1e-10)");
    c.check(trace_ok, "subtracted trace invariant under 10 random gauge transforms (3 sigma)");
  }

  // free-field spectral oracle on 4^4 to 1e-12
  {
    auto geom = std::make_shared<LatticeGeometry>(std::array<int, 4>{4, 4, 4, 4});
    auto alg = su2();
    BackgroundField free_bg = make_background(geom, alg, {});
    bool spectral_ok = true;
    std::array<int, 4> k;
    AdjointField v(geom, alg, FieldRank::scalar);
    for (k[0] = 0; k[0] < 4; ++k[0])
      for (k[1] = 0; k[1] < 4; ++k[1])
        for (k[2] = 0; k[2] < 4; ++k[2])
          for (k[3] = 0; k[3] < 4; ++k[3]) {
            for (std::int64_t s = 0; s < geom->nsites(); ++s) {
              auto x = geom->coords(s);
              double phase = 0;
              for (int mu = 0; mu < 4; ++mu)
                phase += 2.0 * M_PI * k[static_cast<size_t>(mu)] * x[static_cast<size_t>(mu)] / 4.0;
              v.at(s, 0, 0) = std::cos(phase);
              v.at(s, 0, 1) = 0;
              v.at(s, 0, 2) = std::sin(phase);
            }
            AdjointField mv = apply_operator(free_bg, OperatorKind::M0, v);
            const double lam = free_laplacian_eigenvalue(*geom, k);
            for (std::int64_t i = 0; i < v.size(); ++i)
              if (std::abs(mv.data()[i] - lam * v.data()[i]) > 1e-12) spectral_ok = false;
          }
    c.check(spectral_ok, "free-field spectral oracle matches to 1e-12 on 4^4");
  }

  // Hutchinson vs exact
  {
    BackgroundField bg = const_bg(3, 1);
    HeatEngine eng(bg, OperatorKind::M0);
    bool hutch_ok = true;
    for (double t : {0.6, 1.2, 2.4}) {
      TraceEstimate ex = eng.trace(t, TraceMethod::exact());
      TraceEstimate st = eng.trace(t, TraceMethod::stochastic(96, 17));
      hutch_ok = hutch_ok && std::abs(st.value - ex.value) < 3 * st.stderr_;
    }
    c.check(hutch_ok, "Hutchinson estimator within 3 stderr of the exact trace");
  }

  // fit-recovery Monte Carlo calibration
  {
    std::vector<double> ts = log_grid(0.8, 3.0, 12);
    const double a1_true = 0.3, a2_true = -2.0, sigma = 0.01;
    int covered = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      HeatTraceSeries s;
      s.t = ts;
      SplitMix64 rng(5000 + seed);
      for (double t : ts) {
        s.value.push_back(kPref * (a1_true / t + a2_true) + sigma * rng.normal());
        s.stderr_.push_back(sigma);
      }
      SmallTFit fit = fit_small_t(s, {0.8, 3.0});
      if (std::abs(fit.a1 - a1_true) <= 3 * fit.a1_sigma() &&
          std::abs(fit.a2 - a2_true) <= 3 * fit.a2_sigma())
        ++covered;
    }
    c.check(covered >= 190, "fit calibration: " + std::to_string(covered) +
                                "/200 seeds inside 3 sigma (need >= 190)");
  }
  results.push_back(c);
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();

  int failures = 0;
  for (const Criterion& c : results) {
    std::printf("criterion %d [%s] %s\n", c.id, c.ok ? "PASS" : "FAIL", c.title.c_str());
    for (const std::string& n : c.notes) std::printf("%s\n", n.c_str());
    failures += c.ok ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed (%.1f s total)\n", static_cast<int>(results.size()) - failures,
              results.size(), seconds_since(t0));
  return failures;
}
