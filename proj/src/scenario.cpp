#include "ymlab/scenario.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "ymlab/io.hpp"
#include "ymlab/parallel.hpp"
#include "ymlab/rg.hpp"
#include "ymlab/svg.hpp"

namespace ymlab {

using json = nlohmann::ordered_json;

BackgroundField background_from_config(const ScenarioConfig& c) {
  auto geom = std::make_shared<LatticeGeometry>(c.extents, c.spacing);
  auto alg = std::make_shared<LieAlgebra>(
      LieAlgebra::build(AlgebraFamily::su, c.algebra_n));
  BackgroundParams p;
  if (c.background_kind == "zero") {
    p.kind = BackgroundKind::zero;
  } else if (c.background_kind == "constant_abelian") {
    p.kind = BackgroundKind::constant_abelian;
    p.plane_mu = c.plane_mu;
    p.plane_nu = c.plane_nu;
    p.strength = c.flux_k ? quantized_strength(*geom, c.plane_mu, c.plane_nu, *c.flux_k)
                          : c.strength;
    p.color_dir = c.color_dir;
    if (p.color_dir.empty()) {
      p.color_dir.assign(static_cast<size_t>(alg->dim()), 0.0);
      p.color_dir[2 % alg->dim()] = 1.0;  // su(2): the e3 Cartan axis
    }
  } else {
    p.kind = BackgroundKind::random_smooth;
    p.seed = c.background_seed;
    p.amplitude = c.amplitude;
  }
  return make_background(geom, alg, p);
}

TraceMethod trace_method_from_config(const ScenarioConfig& c) {
  if (c.trace_method == "exact") return TraceMethod::exact();
  return TraceMethod::stochastic(c.probes, c.trace_seed);
}

FitWindow fit_window_from_config(const ScenarioConfig& c, const BackgroundField& bg) {
  if (c.fit_window) return {(*c.fit_window)[0], (*c.fit_window)[1]};
  return default_fit_window(bg);
}

std::string fit_json(const SmallTFit& fit) {
  json j;
  j["A1"] = fit.a1;
  j["A2"] = fit.a2;
  j["covariance"] = {fit.covariance[0], fit.covariance[1], fit.covariance[2]};
  j["window"] = {fit.window.t_min, fit.window.t_max};
  j["npoints"] = fit.npoints;
  j["chi2_per_dof"] = fit.chi2_per_dof;
  j["rms_residual"] = fit.rms_residual;
  j["misfit"] = fit.misfit;
  j["window_floor"] = fit.floor_bound;
  j["window_floor_ok"] = fit.floor_ok;
  j["window_ceiling"] = fit.ceiling_bound;
  j["window_ceiling_ok"] = fit.ceiling_ok;
  return j.dump(2);
}

std::string report_json(const DivergenceReport& r) {
  json j;
  j["background"] = r.background;
  j["A2_M0"] = r.a2_m0;
  j["A2_M0_sigma"] = r.a2_m0_sigma;
  j["A2_M1"] = r.a2_m1;
  j["A2_M1_sigma"] = r.a2_m1_sigma;
  j["K"] = r.k;
  j["K_sigma"] = r.k_sigma;
  j["S4"] = r.s4;
  j["rho_convention"] = "rho = -4 K / (16 pi^2 S4) = 4 (A2_M1/2 - A2_M0) / (16 pi^2 S4)";
  if (r.exact_zero_case) {
    j["exact_zero_case"] = true;
    j["rho"] = nullptr;
  } else {
    j["exact_zero_case"] = false;
    j["rho"] = r.rho;
    j["rho_sigma"] = r.rho_sigma;
    j["asymptotically_free"] = r.asymptotically_free;
  }
  j["beta_theory"] = r.beta_theory;
  if (!r.exact_zero_case) j["relative_deviation"] = r.relative_deviation;
  json budget;
  budget["statistical"] = r.budget.statistical;
  if (r.budget.has_fit_window) budget["fit_window"] = r.budget.fit_window;
  if (r.budget.has_discretization) budget["discretization"] = r.budget.discretization;
  j["error_budget"] = budget;
  return j.dump(2);
}

std::string logdet_json(const std::vector<LogdetResult>& results) {
  json arr = json::array();
  for (const LogdetResult& r : results) {
    json j;
    j["A1"] = r.a1;
    j["A2"] = r.a2;
    j["covariance"] = {r.covariance[0], r.covariance[1], r.covariance[2]};
    j["divergent_part"] = r.divergent_part;
    j["finite_below"] = r.finite_below;
    j["finite_above"] = r.finite_above;
    j["value"] = r.value;
    j["epsilon"] = r.epsilon;
    j["mu_split"] = r.mu_split;
    j["t_floor"] = r.t_floor;
    j["t_cap"] = r.t_cap;
    j["ir_plateau"] = r.ir_plateau;
    j["ir_growth"] = r.ir_growth;
    if (r.ir_plateau || r.ir_growth) {
      j["plateau_value"] = r.plateau_value;
      j["lowest_ritz"] = r.lowest_ritz;
    }
    if (r.stat_stderr > 0) j["stat_stderr"] = r.stat_stderr;
    arr.push_back(j);
  }
  return arr.dump(2);
}

std::string report_table(const DivergenceReport& r) {
  std::ostringstream os;
  os << "divergence report: " << r.background << "\n";
  os << "  A2[M0] = " << fmt17(r.a2_m0) << " +- " << fmt17(r.a2_m0_sigma) << "\n";
  os << "  A2[M1] = " << fmt17(r.a2_m1) << " +- " << fmt17(r.a2_m1_sigma) << "\n";
  os << "  K      = " << fmt17(r.k) << " +- " << fmt17(r.k_sigma) << "\n";
  os << "  S4     = " << fmt17(r.s4) << "\n";
  if (r.exact_zero_case) {
    os << "  exact zero background: rho undefined\n";
  } else {
    os << "  rho    = " << fmt17(r.rho) << " +- " << fmt17(r.rho_sigma) << "\n";
    os << "  beta   = " << fmt17(r.beta_theory) << " (11 C / 48 pi^2)\n";
    os << "  rel dev= " << fmt17(r.relative_deviation) << "\n";
  }
  return os.str();
}

namespace {

struct Manifest {
  std::filesystem::path dir;
  json stages = json::object();
  std::vector<std::string> files;

  void stage(const std::string& name, const std::string& state) {
    stages[name] = state;
    flush();
  }
  void add_file(const std::string& name) {
    files.push_back(name);
    flush();
  }
  void flush() const {
    json j;
    j["stages"] = stages;
    json fl = json::array();
    for (const std::string& f : files) {
      json e;
      e["name"] = f;
      e["sha256"] = sha256_file(dir / f);
      fl.push_back(e);
    }
    j["files"] = fl;
    std::ofstream os(dir / "manifest.json");
    os << j.dump(2) << "\n";
  }
};

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream os(p);
  if (!os) throw io_error("cannot write " + p.string());
  os << text;
  if (text.empty() || text.back() != '\n') os << "\n";
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& config) {
  config.validate();
  std::filesystem::path out = config.output_dir;
  if (out.empty()) {
    const char* env = std::getenv("YMLAB_OUTPUT_DIR");
    out = env ? std::filesystem::path(env) : std::filesystem::path("out");
  }
  std::filesystem::create_directories(out);
  if (config.workers > 0) set_workers(config.workers);

  Manifest manifest;
  manifest.dir = out;

  auto run_stage = [&](const std::string& name, auto&& fn) {
    manifest.stage(name, "running");
    try {
      fn();
    } catch (const Error& e) {
      manifest.stage(name, std::string("failed: ") + e.what());
      throw Error(e.kind(), "stage '" + name + "': " + e.what());
    } catch (const std::exception& e) {
      manifest.stage(name, std::string("failed: ") + e.what());
      throw;
    }
    manifest.stage(name, "complete");
  };

  run_stage("config", [&] {
    config.save(out / "scenario.cfg");
    manifest.add_file("scenario.cfg");
  });

  std::unique_ptr<BackgroundField> bg;
  run_stage("field", [&] {
    bg = std::make_unique<BackgroundField>(background_from_config(config));
    write_background(out / "background.bin", *bg);
    manifest.add_file("background.bin");
  });

  const TraceMethod method = trace_method_from_config(config);
  const FitWindow window = fit_window_from_config(config, *bg);
  std::vector<double> grid = log_grid(window.t_min, window.t_max, 12);

  std::unique_ptr<HeatEngine> eng0, eng1;
  HeatTraceSeries s0, s1;
  run_stage("traces", [&] {
    eng0 = std::make_unique<HeatEngine>(*bg, OperatorKind::M0);
    eng1 = std::make_unique<HeatEngine>(*bg, OperatorKind::M1);
    s0 = eng0->subtracted_series(grid, method);
    s1 = eng1->subtracted_series(grid, method);
    write_trace_csv(out / "trace_m0.csv", s0);
    write_trace_csv(out / "trace_m1.csv", s1);
    manifest.add_file("trace_m0.csv");
    manifest.add_file("trace_m1.csv");
  });

  SmallTFit fit0, fit1;
  run_stage("fits", [&] {
    fit0 = fit_small_t(s0, window, config.spacing, bg->field_strength_max());
    fit1 = fit_small_t(s1, window, config.spacing, bg->field_strength_max());
    write_text(out / "fit_m0.json", fit_json(fit0));
    write_text(out / "fit_m1.json", fit_json(fit1));
    manifest.add_file("fit_m0.json");
    manifest.add_file("fit_m1.json");
  });

  DivergenceReport report;
  run_stage("report", [&] {
    report = divergence_coefficient(fit0, fit1, *bg);
    report.budget.statistical = report.rho_sigma;
    // fit-window systematic: drop the edges of the grid and refit
    if (!report.exact_zero_case && grid.size() >= 8) {
      double worst = 0.0;
      for (int variant = 0; variant < 2; ++variant) {
        FitWindow w = window;
        if (variant == 0)
          w.t_min = grid[2] * (1 - 1e-9);
        else
          w.t_max = grid[grid.size() - 3] * (1 + 1e-9);
        try {
          SmallTFit f0 = fit_small_t(s0, w, config.spacing, bg->field_strength_max());
          SmallTFit f1 = fit_small_t(s1, w, config.spacing, bg->field_strength_max());
          DivergenceReport alt = divergence_coefficient(f0, f1, *bg);
          worst = std::max(worst, std::abs(alt.rho - report.rho));
        } catch (const Error&) {
          // shifted window too narrow: skip the variant
        }
      }
      report.budget.fit_window = worst;
      report.budget.has_fit_window = true;
    }
    write_text(out / "report.json", report_json(report));
    manifest.add_file("report.json");
    std::cout << report_table(report);
  });

  run_stage("logdet", [&] {
    const double mu = config.mu_split ? *config.mu_split : window.t_max;
    std::vector<LogdetResult> results;
    for (double eps : config.epsilons)
      results.push_back(regularized_logdet(*eng0, fit0, mu, eps, method));
    write_text(out / "logdet_m0.json", logdet_json(results));
    manifest.add_file("logdet_m0.json");
  });

  run_stage("rg", [&] {
    double beta = beta_theoretical(bg->algebra());
    if (config.rg_use_extracted_beta && !report.exact_zero_case && report.rho > 0)
      beta = report.rho;
    const double mu = config.rg_mu ? *config.rg_mu
                                   : (config.mu_split ? *config.mu_split : window.t_max);
    const double g2 = config.rg_g2_ren;

    std::ofstream flow(out / "rg_flow.csv");
    flow << "ln_eps,g2_closed,g2_ode\n";
    const int npts = 41;
    const double ln_mu = std::log(mu);
    RGState state{g2, mu, beta};
    for (int i = 0; i < npts; ++i) {
      const double ln_eps = ln_mu - 8.0 * i / (npts - 1);  // flow toward the UV
      const double closed = run_coupling(g2, mu, std::exp(ln_eps), beta);
      const RGState flowed = flow_ode(state, ln_eps);
      flow << fmt17(ln_eps) << "," << fmt17(closed) << "," << fmt17(flowed.u) << "\n";
    }
    manifest.add_file("rg_flow.csv");

    std::ofstream lam(out / "rg_lambda.csv");
    lam << "scheme_eps,g2_at_scheme,lambda_t\n";
    for (int i = 0; i < 5; ++i) {
      const double eps = mu * std::exp(-2.0 * i);
      const double u = run_coupling(g2, mu, eps, beta);
      lam << fmt17(eps) << "," << fmt17(u) << "," << fmt17(transmutation_scale(u, eps, beta))
          << "\n";
    }
    manifest.add_file("rg_lambda.csv");
  });

  run_stage("plots", [&] {
    write_trace_plot(out / "plot_m0.svg", s0, fit0, "subtracted heat trace, M0");
    write_trace_plot(out / "plot_m1.svg", s1, fit1, "subtracted heat trace, M1");
    manifest.add_file("plot_m0.svg");
    manifest.add_file("plot_m1.svg");
  });

  ScenarioResult res;
  res.output_dir = out;
  res.report = report;
  res.exact_zero_case = report.exact_zero_case;
  return res;
}

}  // namespace ymlab
