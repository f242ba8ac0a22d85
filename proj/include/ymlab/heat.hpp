#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ymlab/chebyshev.hpp"
#include "ymlab/field.hpp"
#include "ymlab/operators.hpp"

namespace ymlab {

struct TraceEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

enum class TraceMethodKind { exact, stochastic };

struct TraceMethod {
  TraceMethodKind kind = TraceMethodKind::exact;
  int nprobes = 0;
  std::uint64_t seed = 0;

  static TraceMethod exact() { return {TraceMethodKind::exact, 0, 0}; }
  static TraceMethod stochastic(int nprobes, std::uint64_t seed) {
    return {TraceMethodKind::stochastic, nprobes, seed};
  }
  std::string tag() const;
};

// Sampled subtracted traces Tr(e^{-M(B)t} - e^{-M(0)t}) on a strictly
// increasing positive t grid. probe_values[i][j] is probe i's estimate at
// t_j (stochastic method only); any linear functional of the series gets an
// exact sample error from it.
struct HeatTraceSeries {
  OperatorKind op = OperatorKind::M0;
  std::vector<double> t;
  std::vector<double> value;
  std::vector<double> stderr_;
  TraceMethod method;
  std::vector<std::vector<double>> probe_values;
  double lowest_ritz = 0.0;  // reported when the operator has negative modes
};

// Heat-kernel evaluations for one (background, operator) pair against its
// zero-background twin. Caches dense spectra (exact path) and per-probe
// Chebyshev moments (stochastic path); probes are seeded by index, so results
// are independent of scheduling and worker count.
class HeatEngine {
public:
  HeatEngine(const BackgroundField& bg, OperatorKind which);

  const BackgroundField& background() const { return bg_; }
  OperatorKind op() const { return which_; }
  const SpectralBounds& bounds() const { return bounds_; }
  std::int64_t dimension() const { return dim_; }

  // e^{-Mt} v with uniform spectral error <= tol * |v|; semigroup property
  // holds within the combined tolerances.
  AdjointField apply(const AdjointField& v, double t, double tol = 1e-10) const;

  TraceEstimate trace(double t, const TraceMethod& method);
  TraceEstimate subtracted(double t, const TraceMethod& method);

  HeatTraceSeries subtracted_series(const std::vector<double>& ts, const TraceMethod& method);

  // ascending dense eigenvalues (exact evaluations; gated at 20000)
  const std::vector<double>& spectrum();
  // eigenvalues of the zero-background operator (analytic free spectrum)
  const std::vector<double>& free_spectrum();

  double lowest_ritz();

private:
  void check_exact_allowed() const;
  void ensure_moments(int nprobes, std::uint64_t seed, int degree_bg, int degree_free);
  double exact_trace_bg(double t);
  double exact_trace_free(double t) const;

  BackgroundField bg_;
  BackgroundField free_bg_;
  OperatorKind which_;
  std::int64_t dim_;
  SpectralBounds bounds_;
  SpectralBounds bounds_free_;
  std::unique_ptr<std::vector<double>> spectrum_;
  std::vector<double> free_spectrum_;
  std::optional<double> lowest_ritz_;

  std::uint64_t moments_seed_ = 0;
  std::vector<std::vector<double>> probe_moments_bg_;
  std::vector<std::vector<double>> probe_moments_free_;
};

// Free-function forms of the module operations.
AdjointField heat_apply(const BackgroundField& bg, OperatorKind which, const AdjointField& v,
                        double t, double tol = 1e-10);
TraceEstimate heat_trace(const BackgroundField& bg, OperatorKind which, double t,
                         const TraceMethod& method);
TraceEstimate subtracted_trace(const BackgroundField& bg, OperatorKind which, double t,
                               const TraceMethod& method);

// 12 log-spaced points in [t_min, t_max] (series default grid).
std::vector<double> log_grid(double t_min, double t_max, int n);

}  // namespace ymlab
