// Timing comparison of the OpenMP kernels against the serial reference:
// operator application, inner products, and a Chebyshev moment pass.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <vector>

#include "ymlab/chebyshev.hpp"
#include "ymlab/heat.hpp"
#include "ymlab/parallel.hpp"

using namespace ymlab;
using clock_t_ = std::chrono::steady_clock;

namespace {

double time_median(int reps, const std::function<void()>& fn) {
  std::vector<double> ts;
  for (int r = 0; r < reps; ++r) {
    auto t0 = clock_t_::now();
    fn();
    auto t1 = clock_t_::now();
    ts.push_back(std::chrono::duration<double>(t1 - t0).count());
  }
  std::sort(ts.begin(), ts.end());
  return ts[ts.size() / 2];
}

void bench_lattice(int l, int flux_k, int reps) {
  auto geom = std::make_shared<LatticeGeometry>(std::array<int, 4>{l, l, l, l});
  auto alg = std::make_shared<LieAlgebra>(LieAlgebra::build(AlgebraFamily::su, 2));
  BackgroundParams p;
  p.kind = BackgroundKind::constant_abelian;
  p.strength = quantized_strength(*geom, 1, 2, flux_k);
  p.color_dir = {0, 0, 1};
  BackgroundField bg = make_background(geom, alg, p);

  AdjointField v(geom, alg, FieldRank::vector);
  v.fill_rademacher_from(1);
  AdjointField out(geom, alg, FieldRank::vector);

  const double flops_m1 = static_cast<double>(geom->nsites()) * 4 *
                          (8.0 * alg->dim() * alg->dim() + 3.0 * alg->dim() * alg->dim()) * 2.0;

  double t_omp = time_median(reps, [&] { apply_operator(bg, OperatorKind::M1, v, out); });
  double t_ref = time_median(reps, [&] { ref::apply_operator(bg, OperatorKind::M1, v, out); });
  std::printf("%d^4 su(2) M1 apply   omp %8.3f ms (%6.2f GF/s)   serial %8.3f ms   speedup %.2fx\n",
              l, 1e3 * t_omp, flops_m1 / t_omp * 1e-9, 1e3 * t_ref, t_ref / t_omp);

  double d_omp = time_median(reps, [&] { (void)dot(v, v); });
  double d_ref = time_median(reps, [&] { (void)ymlab::ref::dot(v, v); });
  std::printf("%d^4 su(2) dot        omp %8.3f ms                serial %8.3f ms   speedup %.2fx\n",
              l, 1e3 * d_omp, 1e3 * d_ref, d_ref / d_omp);

  SpectralBounds b = spectral_bounds(bg, OperatorKind::M1);
  const int deg = 64;
  double m_omp = time_median(1, [&] { (void)chebyshev_moments(bg, OperatorKind::M1, b, v, deg); });
  std::printf("%d^4 su(2) %d-step moment pass: %8.3f ms\n", l, deg, 1e3 * m_omp);
}

}  // namespace

int main(int argc, char** argv) {
  int reps = argc > 1 ? std::atoi(argv[1]) : 5;
  std::printf("workers: %d\n", max_workers());
  bench_lattice(4, 1, reps);
  bench_lattice(8, 2, reps);
  return 0;
}
