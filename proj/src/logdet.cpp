#include "ymlab/logdet.hpp"

#include <algorithm>
#include <cmath>

namespace ymlab {

namespace {
constexpr double kPref = 1.0 / (16.0 * M_PI * M_PI);
}

double log_trapezoid(const std::vector<double>& ts, const std::vector<double>& integrand) {
  double acc = 0.0;
  for (size_t j = 0; j + 1 < ts.size(); ++j) {
    const double dl = std::log(ts[j + 1] / ts[j]);
    acc += 0.5 * dl * (integrand[j] + integrand[j + 1]);
  }
  return -acc;
}

LogdetResult regularized_logdet(HeatEngine& engine, const SmallTFit& fit, double mu_split,
                                double eps, const TraceMethod& method,
                                const QuadratureOpts& opts) {
  if (!(eps > 0) || !(eps < mu_split))
    throw parameter_error("need 0 < eps < mu_split");

  LogdetResult res;
  res.a1 = fit.a1;
  res.a2 = fit.a2;
  res.covariance = fit.covariance;
  res.epsilon = eps;
  res.mu_split = mu_split;
  res.t_floor = fit.window.t_min;

  if (engine.background().is_zero_background()) {
    res.t_cap = mu_split;
    return res;  // all pieces vanish identically
  }

  res.divergent_part = kPref * res.a2 * std::log(eps / mu_split);

  // warm the probe-moment cache once at the largest proper time the upper
  // integral can reach, instead of re-deriving it per extension block
  if (method.kind == TraceMethodKind::stochastic)
    engine.subtracted(opts.t_hard_cap, method);

  // grid below mu: [t_floor, mu], model-subtracted integrand
  auto npts = [&](double lo, double hi) {
    const double decades = std::log10(hi / lo);
    return std::max(8, static_cast<int>(std::ceil(decades * opts.points_per_decade)) + 1);
  };
  std::vector<double> ts_below = log_grid(res.t_floor, mu_split, npts(res.t_floor, mu_split));
  HeatTraceSeries below = engine.subtracted_series(ts_below, method);
  std::vector<double> integ_below(ts_below.size());
  for (size_t j = 0; j < ts_below.size(); ++j)
    integ_below[j] = below.value[j] - fit.model(ts_below[j]);
  res.finite_below = log_trapezoid(ts_below, integ_below);

  // grid above mu: raw subtracted trace, extended in blocks until the
  // integrand falls under tail_tol, stalls (plateau) or grows (negative modes)
  std::vector<double> ts_above;
  std::vector<double> val_above;
  std::vector<std::vector<double>> probes_above;
  double t_lo = mu_split;
  bool closed = false;
  double prev_max = 0.0;
  while (!closed && t_lo < opts.t_hard_cap) {
    double t_hi = std::min(t_lo * 4.0, opts.t_hard_cap);
    std::vector<double> block = log_grid(t_lo, t_hi, npts(t_lo, t_hi));
    if (!ts_above.empty()) block.erase(block.begin());  // shared endpoint
    HeatTraceSeries s = engine.subtracted_series(block, method);
    double block_max = 0.0;
    for (size_t j = 0; j < block.size(); ++j) {
      ts_above.push_back(block[j]);
      val_above.push_back(s.value[j]);
      block_max = std::max(block_max, std::abs(s.value[j]));
    }
    if (!s.probe_values.empty()) {
      if (probes_above.empty()) probes_above.assign(s.probe_values.size(), {});
      for (size_t p = 0; p < s.probe_values.size(); ++p)
        for (double v : s.probe_values[p]) probes_above[p].push_back(v);
    }
    if (block_max < opts.tail_tol) {
      closed = true;
    } else if (prev_max > 0.0 && block_max > 1.5 * prev_max) {
      res.ir_growth = true;  // exponential growth from negative modes
      break;
    } else if (prev_max > 0.0 && block_max > 0.5 * prev_max && t_hi >= opts.t_hard_cap) {
      res.ir_plateau = true;
    }
    prev_max = block_max;
    t_lo = t_hi;
  }
  if (!closed && !res.ir_growth && ts_above.back() >= opts.t_hard_cap * (1 - 1e-12)) {
    res.ir_plateau = true;
    res.plateau_value = val_above.back();
  }
  if (res.ir_growth) res.plateau_value = val_above.back();
  res.t_cap = ts_above.back();
  res.finite_above = log_trapezoid(ts_above, val_above);
  if (res.ir_plateau || res.ir_growth || engine.bounds().lo < -1e-9)
    res.lowest_ritz = engine.lowest_ritz();

  res.value = res.divergent_part + res.finite_below + res.finite_above;

  // statistical error: per-probe evaluation of the same linear functionals
  if (!below.probe_values.empty()) {
    const size_t n = below.probe_values.size();
    double mean = 0.0, m2 = 0.0;
    for (size_t p = 0; p < n; ++p) {
      std::vector<double> ib(ts_below.size());
      for (size_t j = 0; j < ts_below.size(); ++j)
        ib[j] = below.probe_values[p][j] - fit.model(ts_below[j]);
      double v = log_trapezoid(ts_below, ib);
      if (!probes_above.empty()) v += log_trapezoid(ts_above, probes_above[p]);
      const double delta = v - mean;
      mean += delta / (p + 1);
      m2 += delta * (v - mean);
    }
    const double sd = std::sqrt(m2 / (n - 1));
    const double quad_err = sd / std::sqrt(static_cast<double>(n));
    const double div_err = std::abs(kPref * std::log(eps / mu_split)) * fit.a2_sigma();
    res.stat_stderr = std::sqrt(quad_err * quad_err + div_err * div_err);
  }
  return res;
}

}  // namespace ymlab
