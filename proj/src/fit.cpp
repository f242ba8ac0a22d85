#include "ymlab/fit.hpp"

#include <algorithm>
#include <cmath>

namespace ymlab {

namespace {
constexpr double kPref = 1.0 / (16.0 * M_PI * M_PI);
}

double SmallTFit::a1_sigma() const { return std::sqrt(std::max(0.0, covariance[0])); }
double SmallTFit::a2_sigma() const { return std::sqrt(std::max(0.0, covariance[2])); }
double SmallTFit::model(double t) const { return kPref * (a1 / t + a2); }

FitWindow default_fit_window(const BackgroundField& bg) {
  const double a2 = bg.geometry().spacing() * bg.geometry().spacing();
  int lmin = bg.geometry().extent(0);
  for (int mu = 1; mu < 4; ++mu) lmin = std::min(lmin, bg.geometry().extent(mu));
  double ceiling = lmin * lmin * a2 / 16.0;
  if (bg.field_strength_max() > 0) ceiling = std::min(ceiling, 0.5 / bg.field_strength_max());
  return {2.0 * a2, ceiling};
}

SmallTFit fit_small_t(const HeatTraceSeries& series, FitWindow window, double spacing,
                      double fs_max) {
  if (window.t_min <= 0 || window.t_max <= window.t_min)
    throw parameter_error("fit window must satisfy 0 < t_min < t_max");

  std::vector<size_t> in;
  for (size_t j = 0; j < series.t.size(); ++j)
    if (series.t[j] >= window.t_min * (1 - 1e-12) && series.t[j] <= window.t_max * (1 + 1e-12))
      in.push_back(j);
  if (in.size() < 4) throw fit_degeneracy("fewer than 4 points in the fit window");

  // weights from stated errors; exact series fall back to equal weights
  bool have_sigma = true;
  for (size_t j : in)
    if (!(series.stderr_[j] > 0)) have_sigma = false;
  std::vector<double> w(in.size(), 1.0);
  if (have_sigma)
    for (size_t i = 0; i < in.size(); ++i) w[i] = 1.0 / (series.stderr_[in[i]] * series.stderr_[in[i]]);

  // design: value = c (A1/t + A2), columns [c/t, c]
  double s11 = 0, s12 = 0, s22 = 0;
  for (size_t i = 0; i < in.size(); ++i) {
    const double x1 = kPref / series.t[in[i]];
    const double x2 = kPref;
    s11 += w[i] * x1 * x1;
    s12 += w[i] * x1 * x2;
    s22 += w[i] * x2 * x2;
  }
  const double det = s11 * s22 - s12 * s12;
  const double cond_scale = s11 * s22;
  if (!(det > 0) || det < 1e-12 * cond_scale)
    throw fit_degeneracy("ill-conditioned design: window too narrow for the two-parameter model");

  auto solve = [&](const std::vector<double>& vals) {
    double b1 = 0, b2 = 0;
    for (size_t i = 0; i < in.size(); ++i) {
      const double x1 = kPref / series.t[in[i]];
      const double x2 = kPref;
      b1 += w[i] * x1 * vals[in[i]];
      b2 += w[i] * x2 * vals[in[i]];
    }
    return std::array<double, 2>{(s22 * b1 - s12 * b2) / det, (s11 * b2 - s12 * b1) / det};
  };

  SmallTFit fit;
  fit.window = window;
  fit.npoints = static_cast<int>(in.size());
  auto ab = solve(series.value);
  fit.a1 = ab[0];
  fit.a2 = ab[1];

  double chi2 = 0, rss = 0;
  for (size_t i = 0; i < in.size(); ++i) {
    const double r = series.value[in[i]] - fit.model(series.t[in[i]]);
    rss += r * r;
    chi2 += w[i] * r * r;
  }
  const int dof = static_cast<int>(in.size()) - 2;
  fit.rms_residual = std::sqrt(rss / in.size());
  fit.chi2_per_dof = dof > 0 ? chi2 / dof : 0.0;
  fit.misfit = have_sigma && fit.chi2_per_dof > 2.0;

  if (!series.probe_values.empty()) {
    // covariance of the mean estimator from per-probe fits (handles the
    // cross-t correlation of common probes exactly)
    const size_t n = series.probe_values.size();
    double ma1 = 0, ma2 = 0;
    std::vector<std::array<double, 2>> per(n);
    for (size_t p = 0; p < n; ++p) {
      per[p] = solve(series.probe_values[p]);
      ma1 += per[p][0];
      ma2 += per[p][1];
    }
    ma1 /= n;
    ma2 /= n;
    double c11 = 0, c12 = 0, c22 = 0;
    for (size_t p = 0; p < n; ++p) {
      c11 += (per[p][0] - ma1) * (per[p][0] - ma1);
      c12 += (per[p][0] - ma1) * (per[p][1] - ma2);
      c22 += (per[p][1] - ma2) * (per[p][1] - ma2);
    }
    const double f = 1.0 / (static_cast<double>(n - 1) * n);
    fit.covariance = {c11 * f, c12 * f, c22 * f};
  } else if (have_sigma) {
    fit.covariance = {s22 / det, -s12 / det, s11 / det};
  } else {
    // unknown point errors: scale the normal equations by the residual
    const double sigma2 = dof > 0 ? rss / dof : 0.0;
    fit.covariance = {sigma2 * s22 / det, -sigma2 * s12 / det, sigma2 * s11 / det};
  }

  const double a2lat = spacing * spacing;
  fit.floor_bound = 2.0 * a2lat;
  fit.floor_ok = window.t_min >= fit.floor_bound * (1 - 1e-12);
  if (fs_max > 0) {
    fit.ceiling_bound = 0.5 / fs_max;
    fit.ceiling_ok = window.t_max <= fit.ceiling_bound * (1 + 1e-12);
  } else {
    fit.ceiling_bound = 0.0;
    fit.ceiling_ok = true;
  }
  return fit;
}

}  // namespace ymlab
