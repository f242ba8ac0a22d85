#include "ymlab/heat.hpp"

#include <algorithm>
#include <cmath>

#include "ymlab/rng.hpp"

namespace ymlab {

std::string TraceMethod::tag() const {
  if (kind == TraceMethodKind::exact) return "exact";
  return "stochastic(" + std::to_string(nprobes) + "," + std::to_string(seed) + ")";
}

namespace {
constexpr double kCoeffTol = 1e-11;
constexpr std::int64_t kExactLimit = 20000;
}  // namespace

HeatEngine::HeatEngine(const BackgroundField& bg, OperatorKind which)
    : bg_(bg),
      free_bg_(make_background(bg.geometry_ptr(), bg.algebra_ptr(), BackgroundParams{})),
      which_(which),
      dim_(operator_dimension(bg, which)),
      bounds_(spectral_bounds(bg, which)),
      bounds_free_(spectral_bounds(free_bg_, which)) {
  const int mult = bg_.dim() * (which == OperatorKind::M0 ? 1 : 4);
  std::vector<double> base = free_laplacian_spectrum(bg_.geometry());
  free_spectrum_.reserve(base.size() * static_cast<size_t>(mult));
  for (double lam : base)
    for (int m = 0; m < mult; ++m) free_spectrum_.push_back(lam);
  std::sort(free_spectrum_.begin(), free_spectrum_.end());
}

void HeatEngine::check_exact_allowed() const {
  if (dim_ > kExactLimit)
    throw size_error("exact trace requested on dimension " + std::to_string(dim_) +
                     " > " + std::to_string(kExactLimit));
}

AdjointField HeatEngine::apply(const AdjointField& v, double t, double tol) const {
  if (t <= 0) throw parameter_error("proper time t must be positive");
  if (tol <= 0 || tol > 1e-4) throw parameter_error("tolerance must be in (0, 1e-4]");
  return chebyshev_heat_apply(bg_, which_, bounds_, v, t, tol);
}

const std::vector<double>& HeatEngine::spectrum() {
  check_exact_allowed();
  if (!spectrum_)
    spectrum_ = std::make_unique<std::vector<double>>(dense_spectrum(bg_, which_, kExactLimit));
  return *spectrum_;
}

const std::vector<double>& HeatEngine::free_spectrum() { return free_spectrum_; }

double HeatEngine::lowest_ritz() {
  if (!lowest_ritz_) lowest_ritz_ = lowest_ritz_value(bg_, which_, 48);
  return *lowest_ritz_;
}

double HeatEngine::exact_trace_bg(double t) {
  double acc = 0.0;
  for (double lam : spectrum()) acc += std::exp(-t * lam);
  return acc;
}

double HeatEngine::exact_trace_free(double t) const {
  double acc = 0.0;
  for (double lam : free_spectrum_) acc += std::exp(-t * lam);
  return acc;
}

void HeatEngine::ensure_moments(int nprobes, std::uint64_t seed, int degree_bg, int degree_free) {
  const bool reset = seed != moments_seed_ || probe_moments_bg_.size() < static_cast<size_t>(nprobes) ||
                     (!probe_moments_bg_.empty() &&
                      (static_cast<int>(probe_moments_bg_[0].size()) <= degree_bg ||
                       static_cast<int>(probe_moments_free_[0].size()) <= degree_free));
  if (!reset) return;
  moments_seed_ = seed;
  probe_moments_bg_.assign(static_cast<size_t>(nprobes), {});
  probe_moments_free_.assign(static_cast<size_t>(nprobes), {});
  AdjointField z(bg_.geometry_ptr(), bg_.algebra_ptr(), operator_rank(which_));
  for (int i = 0; i < nprobes; ++i) {
    z.fill_rademacher_from(mix_seed(seed, static_cast<std::uint64_t>(i)));
    probe_moments_bg_[static_cast<size_t>(i)] =
        chebyshev_moments(bg_, which_, bounds_, z, degree_bg);
    probe_moments_free_[static_cast<size_t>(i)] =
        chebyshev_moments(free_bg_, which_, bounds_free_, z, degree_free);
  }
}

TraceEstimate HeatEngine::trace(double t, const TraceMethod& method) {
  if (t <= 0) throw parameter_error("proper time t must be positive");
  if (method.kind == TraceMethodKind::exact) {
    check_exact_allowed();
    if (bg_.is_zero_background()) return {exact_trace_free(t), 0.0};
    return {exact_trace_bg(t), 0.0};
  }
  if (method.nprobes < 2) throw parameter_error("stochastic trace needs >= 2 probes");
  const double s_bg = 0.5 * t * (bounds_.hi - bounds_.lo);
  const int deg = chebyshev_degree(s_bg, kCoeffTol);
  ensure_moments(method.nprobes, method.seed, deg, deg);
  std::vector<double> c = heat_coeffs(t, bounds_.lo, bounds_.hi, kCoeffTol);
  double mean = 0.0, m2 = 0.0;
  for (int i = 0; i < method.nprobes; ++i) {
    const double q = moments_trace(c, probe_moments_bg_[static_cast<size_t>(i)]);
    const double delta = q - mean;
    mean += delta / (i + 1);
    m2 += delta * (q - mean);
  }
  const double sd = std::sqrt(m2 / (method.nprobes - 1));
  return {mean, sd / std::sqrt(static_cast<double>(method.nprobes))};
}

TraceEstimate HeatEngine::subtracted(double t, const TraceMethod& method) {
  HeatTraceSeries s = subtracted_series({t}, method);
  return {s.value[0], s.stderr_[0]};
}

HeatTraceSeries HeatEngine::subtracted_series(const std::vector<double>& ts,
                                              const TraceMethod& method) {
  for (size_t i = 0; i < ts.size(); ++i) {
    if (ts[i] <= 0) throw parameter_error("t grid must be positive");
    if (i > 0 && ts[i] <= ts[i - 1]) throw parameter_error("t grid must be strictly increasing");
  }
  HeatTraceSeries out;
  out.op = which_;
  out.t = ts;
  out.method = method;
  out.value.assign(ts.size(), 0.0);
  out.stderr_.assign(ts.size(), 0.0);

  // a zero background subtracts to zero identically
  if (bg_.is_zero_background()) return out;

  if (method.kind == TraceMethodKind::exact) {
    check_exact_allowed();
    for (size_t j = 0; j < ts.size(); ++j)
      out.value[j] = exact_trace_bg(ts[j]) - exact_trace_free(ts[j]);
  } else {
    if (method.nprobes < 2) throw parameter_error("stochastic trace needs >= 2 probes");
    const double t_max = ts.back();
    const int deg_bg = chebyshev_degree(0.5 * t_max * (bounds_.hi - bounds_.lo), kCoeffTol);
    const int deg_fr =
        chebyshev_degree(0.5 * t_max * (bounds_free_.hi - bounds_free_.lo), kCoeffTol);
    ensure_moments(method.nprobes, method.seed, deg_bg, deg_fr);
    out.probe_values.assign(static_cast<size_t>(method.nprobes),
                            std::vector<double>(ts.size(), 0.0));
    for (size_t j = 0; j < ts.size(); ++j) {
      std::vector<double> cb = heat_coeffs(ts[j], bounds_.lo, bounds_.hi, kCoeffTol);
      std::vector<double> cf = heat_coeffs(ts[j], bounds_free_.lo, bounds_free_.hi, kCoeffTol);
      double mean = 0.0, m2 = 0.0;
      for (int i = 0; i < method.nprobes; ++i) {
        // common probe: the two estimates share z_i, the difference cancels
        // most of the probe noise
        const double q = moments_trace(cb, probe_moments_bg_[static_cast<size_t>(i)]) -
                         moments_trace(cf, probe_moments_free_[static_cast<size_t>(i)]);
        out.probe_values[static_cast<size_t>(i)][j] = q;
        const double delta = q - mean;
        mean += delta / (i + 1);
        m2 += delta * (q - mean);
      }
      out.value[j] = mean;
      out.stderr_[j] = std::sqrt(m2 / (method.nprobes - 1)) /
                       std::sqrt(static_cast<double>(method.nprobes));
    }
  }
  if (bounds_.lo < -1e-9) out.lowest_ritz = lowest_ritz();
  return out;
}

AdjointField heat_apply(const BackgroundField& bg, OperatorKind which, const AdjointField& v,
                        double t, double tol) {
  HeatEngine engine(bg, which);
  return engine.apply(v, t, tol);
}

TraceEstimate heat_trace(const BackgroundField& bg, OperatorKind which, double t,
                         const TraceMethod& method) {
  HeatEngine engine(bg, which);
  return engine.trace(t, method);
}

TraceEstimate subtracted_trace(const BackgroundField& bg, OperatorKind which, double t,
                               const TraceMethod& method) {
  HeatEngine engine(bg, which);
  return engine.subtracted(t, method);
}

std::vector<double> log_grid(double t_min, double t_max, int n) {
  if (t_min <= 0 || t_max <= t_min || n < 2) throw parameter_error("bad log grid");
  std::vector<double> out(static_cast<size_t>(n));
  const double r = std::log(t_max / t_min) / (n - 1);
  for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = t_min * std::exp(r * i);
  out.back() = t_max;
  return out;
}

}  // namespace ymlab
