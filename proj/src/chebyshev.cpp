#include "ymlab/chebyshev.hpp"

#include <algorithm>
#include <cmath>

#include "ymlab/parallel.hpp"

namespace ymlab {

std::vector<double> scaled_bessel_coeffs(double s, double tol) {
  if (s < 0) throw parameter_error("proper-time scale must be nonnegative");
  if (s == 0.0) return {1.0};
  // start well above the transition k ~ s where I_k(s) begins to fall off
  int start = static_cast<int>(s + 40.0 * std::sqrt(s + 1.0) + 60.0);
  std::vector<double> b(static_cast<size_t>(start) + 1, 0.0);
  // downward Miller recurrence I_{k-1} = I_{k+1} + (2k/s) I_k, unnormalized
  double ip1 = 0.0, i0 = 1e-300;
  b[static_cast<size_t>(start)] = i0;
  for (int k = start; k > 0; --k) {
    double im1 = ip1 + (2.0 * k / s) * i0;
    ip1 = i0;
    i0 = im1;
    b[static_cast<size_t>(k) - 1] = i0;
    if (std::abs(i0) > 1e280) {  // rescale to avoid overflow
      for (int j = k - 1; j <= start; ++j) b[static_cast<size_t>(j)] *= 1e-280;
      i0 *= 1e-280;
      ip1 *= 1e-280;
    }
  }
  // e^{-s}(I_0 + 2 sum I_k) = 1 fixes the scale
  double norm = b[0];
  for (size_t k = 1; k < b.size(); ++k) norm += 2.0 * b[k];
  for (double& x : b) x /= norm;
  // trim the tail below tol (coefficients decay superexponentially past k ~ s)
  double tail = 0.0;
  size_t cut = b.size();
  while (cut > 1 && tail + 2.0 * b[cut - 1] < 0.25 * tol) {
    tail += 2.0 * b[cut - 1];
    --cut;
  }
  b.resize(cut);
  return b;
}

int chebyshev_degree(double s, double tol) {
  return static_cast<int>(scaled_bessel_coeffs(s, tol).size()) - 1;
}

std::vector<double> heat_coeffs(double t, double lo, double hi, double tol) {
  if (t < 0) throw parameter_error("proper time must be nonnegative");
  const double s = 0.5 * t * (hi - lo);
  std::vector<double> b = scaled_bessel_coeffs(s, tol);
  const double front = std::exp(-t * lo);
  std::vector<double> c(b.size());
  c[0] = front * b[0];
  for (size_t k = 1; k < b.size(); ++k)
    c[k] = 2.0 * front * b[k] * ((k % 2) ? -1.0 : 1.0);
  return c;
}

namespace {

// w = (2 M v - (hi+lo) v) / (hi-lo)
void apply_y(const BackgroundField& bg, OperatorKind which, const SpectralBounds& bounds,
             const AdjointField& v, AdjointField& mv, AdjointField& w) {
  apply_operator(bg, which, v, mv);
  const double shift = bounds.hi + bounds.lo;
  const double scale = 2.0 / (bounds.hi - bounds.lo);
  const double* pv = v.data();
  const double* pmv = mv.data();
  double* pw = w.data();
  parallel_for(v.size(), [&](index_t i) { pw[i] = scale * pmv[i] - (shift / 2.0) * scale * pv[i]; });
}

}  // namespace

AdjointField chebyshev_heat_apply(const BackgroundField& bg, OperatorKind which,
                                  const SpectralBounds& bounds, const AdjointField& v, double t,
                                  double tol, int max_degree) {
  std::vector<double> c = heat_coeffs(t, bounds.lo, bounds.hi, tol);
  if (static_cast<int>(c.size()) - 1 > max_degree)
    throw convergence_error("Chebyshev degree cap exceeded for t=" + std::to_string(t));

  AdjointField tk_prev(v.geometry_ptr(), v.algebra_ptr(), v.rank());  // T_{k-1} z
  AdjointField tk(v.geometry_ptr(), v.algebra_ptr(), v.rank());       // T_k z
  AdjointField mv(v.geometry_ptr(), v.algebra_ptr(), v.rank());
  AdjointField out(v.geometry_ptr(), v.algebra_ptr(), v.rank());

  tk_prev = v;
  double* po = out.data();
  const double* pprev = tk_prev.data();
  parallel_for(v.size(), [&](index_t i) { po[i] = c[0] * pprev[i]; });
  if (c.size() == 1) return out;

  apply_y(bg, which, bounds, v, mv, tk);
  const double* ptk = tk.data();
  parallel_for(v.size(), [&](index_t i) { po[i] += c[1] * ptk[i]; });

  AdjointField next(v.geometry_ptr(), v.algebra_ptr(), v.rank());
  for (size_t k = 2; k < c.size(); ++k) {
    apply_y(bg, which, bounds, tk, mv, next);
    double* pn = next.data();
    const double* pp = tk_prev.data();
    const double ck = c[k];
    parallel_for(v.size(), [&](index_t i) {
      pn[i] = 2.0 * pn[i] - pp[i];
      po[i] += ck * pn[i];
    });
    std::swap(tk_prev, tk);
    std::swap(tk, next);
  }
  return out;
}

std::vector<double> chebyshev_moments(const BackgroundField& bg, OperatorKind which,
                                      const SpectralBounds& bounds, const AdjointField& z,
                                      int degree) {
  std::vector<double> mom(static_cast<size_t>(degree) + 1, 0.0);
  AdjointField tk_prev = z;
  AdjointField tk(z.geometry_ptr(), z.algebra_ptr(), z.rank());
  AdjointField mv(z.geometry_ptr(), z.algebra_ptr(), z.rank());
  AdjointField next(z.geometry_ptr(), z.algebra_ptr(), z.rank());

  mom[0] = dot(z, z);
  if (degree == 0) return mom;
  apply_y(bg, which, bounds, z, mv, tk);
  mom[1] = dot(z, tk);
  for (int k = 2; k <= degree; ++k) {
    apply_y(bg, which, bounds, tk, mv, next);
    double* pn = next.data();
    const double* pp = tk_prev.data();
    parallel_for(z.size(), [&](index_t i) { pn[i] = 2.0 * pn[i] - pp[i]; });
    std::swap(tk_prev, tk);
    std::swap(tk, next);
    mom[static_cast<size_t>(k)] = dot(z, tk);
  }
  return mom;
}

}  // namespace ymlab
