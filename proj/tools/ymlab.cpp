#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "ymlab/diagrams.hpp"
#include "ymlab/io.hpp"
#include "ymlab/logdet.hpp"
#include "ymlab/parallel.hpp"
#include "ymlab/renorm.hpp"
#include "ymlab/rg.hpp"
#include "ymlab/scenario.hpp"

using json = nlohmann::ordered_json;
using namespace ymlab;

namespace {

json graph_to_json(const diagrams::VacuumGraph& g) {
  json j;
  json verts = json::array();
  for (auto t : g.vertices) verts.push_back(diagrams::vertex_name(t));
  j["vertices"] = verts;
  json edges = json::array();
  for (const auto& e : g.edges) {
    json ej;
    ej["type"] = e.type == diagrams::EdgeType::gluon ? "gluon" : "ghost";
    ej["ends"] = {e.a, e.b};
    edges.push_back(ej);
  }
  j["edges"] = edges;
  if (g.has_external()) j["external_vertex"] = g.external_vertex;
  j["loops"] = g.loop_number();
  j["g_power"] = g.g_power();
  j["class"] = diagrams::connectivity_name(g.connectivity);
  return j;
}

int run_protected(const std::function<void()>& fn) {
  try {
    fn();
    return 0;
  } catch (const Error& e) {
    std::cerr << "error [" << e.kind() << "]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"one-loop Yang-Mills laboratory: heat-kernel traces, beta extraction, RG flow, vacuum diagrams"};
  app.require_subcommand(1);
  int workers = 0;
  app.add_option("--workers", workers, "cap worker threads (0 = all)");

  // lie ----------------------------------------------------------------
  auto* lie_cmd = app.add_subcommand("lie", "algebra data: dimension, Casimir, structure constants");
  std::string lie_family = "su";
  int lie_n = 2;
  bool lie_json = false;
  lie_cmd->add_option("--family", lie_family, "algebra family (su)");
  lie_cmd->add_option("--n", lie_n, "rank parameter N");
  lie_cmd->add_flag("--json", lie_json, "emit JSON");

  // field make ----------------------------------------------------------
  auto* field_cmd = app.add_subcommand("field", "background field tools");
  auto* field_make = field_cmd->add_subcommand("make", "build a background and write its container");
  std::string fm_config;
  std::string fm_out = "background.bin";
  field_make->add_option("--config", fm_config, "scenario config describing the background")->required();
  field_make->add_option("--out", fm_out, "output container path");

  // heat-trace ----------------------------------------------------------
  auto* ht_cmd = app.add_subcommand("heat-trace", "subtracted heat-trace series to CSV");
  std::string ht_bg, ht_out = "trace.csv", ht_op = "M0", ht_method = "stochastic";
  double ht_tmin = 0, ht_tmax = 0;
  int ht_points = 12, ht_probes = 64;
  std::uint64_t ht_seed = 20240901;
  ht_cmd->add_option("--background", ht_bg, "background container")->required();
  ht_cmd->add_option("--operator", ht_op, "M0 or M1");
  ht_cmd->add_option("--t-min", ht_tmin, "grid start (default: fit-window floor)");
  ht_cmd->add_option("--t-max", ht_tmax, "grid end (default: fit-window ceiling)");
  ht_cmd->add_option("--points", ht_points, "grid size");
  ht_cmd->add_option("--method", ht_method, "exact or stochastic");
  ht_cmd->add_option("--probes", ht_probes, "stochastic probe count");
  ht_cmd->add_option("--seed", ht_seed, "probe seed");
  ht_cmd->add_option("--out", ht_out, "output CSV");

  // logdet ----------------------------------------------------------------
  auto* ld_cmd = app.add_subcommand("logdet", "regularized subtracted log-determinant to JSON");
  std::string ld_bg, ld_out = "logdet.json", ld_op = "M0", ld_method = "stochastic";
  std::vector<double> ld_eps{1e-3, 1e-4, 1e-5};
  double ld_mu = 0, ld_wmin = 0, ld_wmax = 0;
  int ld_probes = 64;
  std::uint64_t ld_seed = 20240901;
  ld_cmd->add_option("--background", ld_bg)->required();
  ld_cmd->add_option("--operator", ld_op, "M0 or M1");
  ld_cmd->add_option("--eps", ld_eps, "epsilon values (a^2 units)");
  ld_cmd->add_option("--mu", ld_mu, "split point (default: fit-window ceiling)");
  ld_cmd->add_option("--window", ld_wmin, "fit window t_min override");
  ld_cmd->add_option("--window-max", ld_wmax, "fit window t_max override");
  ld_cmd->add_option("--method", ld_method, "exact or stochastic");
  ld_cmd->add_option("--probes", ld_probes);
  ld_cmd->add_option("--seed", ld_seed);
  ld_cmd->add_option("--out", ld_out, "output JSON");

  // beta-extract ------------------------------------------------------------
  auto* be_cmd = app.add_subcommand("beta-extract",
                                    "field -> traces -> fits -> divergence report");
  std::string be_config;
  std::string be_out;
  int be_second_k = 0;
  be_cmd->add_option("--config", be_config, "scenario config")->required();
  be_cmd->add_option("--out", be_out, "report JSON path (default: stdout only)");
  be_cmd->add_option("--second-flux-k", be_second_k,
                     "rerun at a second quantized strength for the discretization budget entry");

  // rg-flow -----------------------------------------------------------
  auto* rg_cmd = app.add_subcommand("rg-flow", "one-loop flow and transmutation-scale table");
  double rg_beta = 0, rg_g2 = 0.5, rg_mu = 1.0, rg_decades = 4.0;
  int rg_points = 41;
  std::string rg_report, rg_out = "rg_flow.csv", rg_lambda_out = "rg_lambda.csv";
  rg_cmd->add_option("--beta", rg_beta, "beta coefficient (overrides --report)");
  rg_cmd->add_option("--report", rg_report, "DivergenceReport JSON to take beta = rho from");
  rg_cmd->add_option("--g2-ren", rg_g2, "renormalized coupling at the scheme point");
  rg_cmd->add_option("--mu", rg_mu, "scheme scale mu (units a^2)");
  rg_cmd->add_option("--decades", rg_decades, "how far to flow below mu, in ln10 units");
  rg_cmd->add_option("--points", rg_points);
  rg_cmd->add_option("--out", rg_out, "trajectory CSV");
  rg_cmd->add_option("--lambda-out", rg_lambda_out, "invariance table CSV");

  // diagrams ------------------------------------------------------------
  auto* dg_cmd = app.add_subcommand("diagrams", "vacuum-graph and tadpole enumeration");
  int dg_loops = 2;
  bool dg_weakly = false, dg_eom = false, dg_json = false;
  dg_cmd->add_option("--max-loops", dg_loops, "loop budget");
  dg_cmd->add_flag("--include-weakly", dg_weakly, "also list one-line-reducible graphs");
  dg_cmd->add_flag("--eom", dg_eom, "one-external-line expansion instead of vacuum graphs");
  dg_cmd->add_flag("--json", dg_json, "emit JSON");

  // run -----------------------------------------------------------------
  auto* run_cmd = app.add_subcommand("run", "full scenario pipeline");
  std::string run_config;
  std::string run_outdir;
  run_cmd->add_option("--config", run_config, "scenario config")->required();
  run_cmd->add_option("--output", run_outdir, "output directory override");

  CLI11_PARSE(app, argc, argv);
  if (workers > 0) set_workers(workers);

  if (lie_cmd->parsed()) {
    return run_protected([&] {
      if (lie_family != "su") throw unsupported_algebra("family must be su");
      LieAlgebra alg = LieAlgebra::build(AlgebraFamily::su, lie_n);
      if (lie_json) {
        json j;
        j["family"] = lie_family;
        j["n"] = lie_n;
        j["dim"] = alg.dim();
        j["casimir_adjoint"] = alg.casimir_adjoint();
        j["kappa"] = alg.kappa();
        json f = json::array();
        for (const auto& e : alg.nonzeros()) {
          json entry;
          entry["abc"] = {e.a, e.b, e.c};
          entry["value"] = e.value;
          f.push_back(entry);
        }
        j["f"] = f;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "family " << lie_family << "(" << lie_n << ")  dim " << alg.dim()
                  << "  C(G) " << fmt17(alg.casimir_adjoint()) << "\n";
        for (const auto& e : alg.nonzeros())
          std::cout << "f[" << e.a << "," << e.b << "," << e.c << "] = " << fmt17(e.value) << "\n";
      }
    });
  }

  if (field_make->parsed()) {
    return run_protected([&] {
      ScenarioConfig c = ScenarioConfig::load(fm_config);
      BackgroundField bg = background_from_config(c);
      write_background(fm_out, bg);
      std::cout << "wrote " << fm_out << "  |F|_inf = " << fmt17(bg.field_strength_max())
                << "  S4 = " << fmt17(4.0 * classical_action(bg, 1.0)) << "\n";
    });
  }

  if (ht_cmd->parsed()) {
    return run_protected([&] {
      BackgroundField bg = read_background(ht_bg);
      OperatorKind op = ht_op == "M1" ? OperatorKind::M1 : OperatorKind::M0;
      FitWindow w = default_fit_window(bg);
      double lo = ht_tmin > 0 ? ht_tmin : w.t_min;
      double hi = ht_tmax > 0 ? ht_tmax : w.t_max;
      TraceMethod m = ht_method == "exact" ? TraceMethod::exact()
                                           : TraceMethod::stochastic(ht_probes, ht_seed);
      HeatEngine engine(bg, op);
      HeatTraceSeries s = engine.subtracted_series(log_grid(lo, hi, ht_points), m);
      write_trace_csv(ht_out, s);
      std::cout << "wrote " << ht_out << " (" << s.t.size() << " points)\n";
      if (s.lowest_ritz < -1e-9)
        std::cout << "note: lowest Ritz value " << fmt17(s.lowest_ritz)
                  << " (operator has negative modes)\n";
    });
  }

  if (ld_cmd->parsed()) {
    return run_protected([&] {
      BackgroundField bg = read_background(ld_bg);
      OperatorKind op = ld_op == "M1" ? OperatorKind::M1 : OperatorKind::M0;
      FitWindow w = default_fit_window(bg);
      if (ld_wmin > 0) w.t_min = ld_wmin;
      if (ld_wmax > 0) w.t_max = ld_wmax;
      double mu = ld_mu > 0 ? ld_mu : w.t_max;
      TraceMethod m = ld_method == "exact" ? TraceMethod::exact()
                                           : TraceMethod::stochastic(ld_probes, ld_seed);
      HeatEngine engine(bg, op);
      HeatTraceSeries s = engine.subtracted_series(log_grid(w.t_min, w.t_max, 12), m);
      SmallTFit fit = fit_small_t(s, w, bg.geometry().spacing(), bg.field_strength_max());
      std::vector<LogdetResult> results;
      for (double eps : ld_eps) results.push_back(regularized_logdet(engine, fit, mu, eps, m));
      std::ofstream os(ld_out);
      os << logdet_json(results) << "\n";
      std::cout << "wrote " << ld_out << "\n";
    });
  }

  if (be_cmd->parsed()) {
    return run_protected([&] {
      ScenarioConfig c = ScenarioConfig::load(be_config);
      BackgroundField bg = background_from_config(c);
      TraceMethod m = trace_method_from_config(c);
      FitWindow w = fit_window_from_config(c, bg);
      auto extract = [&](const BackgroundField& b, const FitWindow& wd) {
        HeatEngine e0(b, OperatorKind::M0);
        HeatEngine e1(b, OperatorKind::M1);
        std::vector<double> grid = log_grid(wd.t_min, wd.t_max, 12);
        HeatTraceSeries s0 = e0.subtracted_series(grid, m);
        HeatTraceSeries s1 = e1.subtracted_series(grid, m);
        SmallTFit f0 = fit_small_t(s0, wd, c.spacing, b.field_strength_max());
        SmallTFit f1 = fit_small_t(s1, wd, c.spacing, b.field_strength_max());
        return divergence_coefficient(f0, f1, b);
      };
      DivergenceReport report = extract(bg, w);
      report.budget.statistical = report.rho_sigma;
      if (be_second_k > 0 && c.background_kind == "constant_abelian") {
        ScenarioConfig c2 = c;
        c2.flux_k = be_second_k;
        c2.fit_window.reset();
        BackgroundField bg2 = background_from_config(c2);
        DivergenceReport r2 = extract(bg2, fit_window_from_config(c2, bg2));
        report.budget.discretization = std::abs(r2.rho - report.rho);
        report.budget.has_discretization = true;
      }
      std::cout << report_table(report);
      if (!be_out.empty()) {
        std::ofstream os(be_out);
        os << report_json(report) << "\n";
        std::cout << "wrote " << be_out << "\n";
      }
    });
  }

  if (rg_cmd->parsed()) {
    return run_protected([&] {
      double beta = rg_beta;
      if (beta <= 0 && !rg_report.empty()) {
        std::ifstream is(rg_report);
        if (!is) throw io_error("cannot open " + rg_report);
        json j = json::parse(is);
        if (!j.contains("rho") || j["rho"].is_null())
          throw parameter_error("report has no extracted rho");
        beta = j["rho"].get<double>();
      }
      if (beta <= 0) throw parameter_error("need --beta > 0 or a report with rho > 0");

      std::ofstream flow(rg_out);
      flow << "ln_eps,g2_closed,g2_ode\n";
      RGState state{rg_g2, rg_mu, beta};
      const double ln_mu = std::log(rg_mu);
      for (int i = 0; i < rg_points; ++i) {
        const double ln_eps = ln_mu - rg_decades * std::log(10.0) * i / (rg_points - 1);
        const double closed = run_coupling(rg_g2, rg_mu, std::exp(ln_eps), beta);
        flow << fmt17(ln_eps) << "," << fmt17(closed) << ","
             << fmt17(flow_ode(state, ln_eps).u) << "\n";
      }
      std::ofstream lam(rg_lambda_out);
      lam << "scheme_eps,g2_at_scheme,lambda_t\n";
      for (int i = 0; i < 5; ++i) {
        const double eps = rg_mu * std::exp(-2.0 * i);
        const double u = run_coupling(rg_g2, rg_mu, eps, beta);
        lam << fmt17(eps) << "," << fmt17(u) << "," << fmt17(transmutation_scale(u, eps, beta))
            << "\n";
      }
      std::cout << "wrote " << rg_out << " and " << rg_lambda_out << "  (Lambda_t = "
                << fmt17(transmutation_scale(rg_g2, rg_mu, beta)) << ")\n";
    });
  }

  if (dg_cmd->parsed()) {
    return run_protected([&] {
      std::vector<diagrams::VacuumGraph> graphs =
          dg_eom ? diagrams::eom_expansion(dg_loops)
                 : diagrams::enumerate_vacuum_graphs(dg_loops, dg_weakly);
      if (dg_json) {
        json arr = json::array();
        for (const auto& g : graphs) arr.push_back(graph_to_json(g));
        std::cout << arr.dump(2) << "\n";
      } else {
        for (const auto& g : graphs) std::cout << diagrams::describe(g) << "\n";
        std::cout << graphs.size() << " graphs\n";
      }
    });
  }

  if (run_cmd->parsed()) {
    return run_protected([&] {
      ScenarioConfig c = ScenarioConfig::load(run_config);
      if (!run_outdir.empty()) c.output_dir = run_outdir;
      ScenarioResult res = run_scenario(c);
      std::cout << "scenario complete, artifacts in " << res.output_dir.string() << "\n";
    });
  }

  return 0;
}
