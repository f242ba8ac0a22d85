#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "ymlab/lie.hpp"
#include "ymlab/rng.hpp"

using namespace ymlab;

namespace {

// independent oracle: Pauli-matrix generators for su(2), commutator-projected
double su2_f_oracle(int a, int b, int c) {
  using CM = Eigen::Matrix2cd;
  const std::complex<double> I(0, 1);
  CM s[3];
  s[0] << 0, 1, 1, 0;
  s[1] << 0, -I, I, 0;
  s[2] << 1, 0, 0, -1;
  CM ta = -0.5 * I * s[a], tb = -0.5 * I * s[b], tc = -0.5 * I * s[c];
  // f^{abc} = -tr([t^a,t^b] t^c)/kappa with kappa = 1/2
  return -((ta * tb - tb * ta) * tc).trace().real() / 0.5;
}

double levi_civita(int a, int b, int c) {
  if (a == b || b == c || a == c) return 0.0;
  if ((a == 0 && b == 1 && c == 2) || (a == 1 && b == 2 && c == 0) || (a == 2 && b == 0 && c == 1))
    return 1.0;
  return -1.0;
}

}  // namespace

TEST_CASE("su(2) structure constants are the Levi-Civita tensor") {
  LieAlgebra alg = LieAlgebra::build(AlgebraFamily::su, 2);
  CHECK(alg.dim() == 3);
  CHECK(alg.kappa() == doctest::Approx(0.5));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        CHECK(alg.f(a, b, c) == doctest::Approx(levi_civita(a, b, c)).epsilon(1e-13));
        CHECK(alg.f(a, b, c) == doctest::Approx(su2_f_oracle(a, b, c)).epsilon(1e-13));
      }
}

TEST_CASE("su(3) structure constants: antisymmetric, su(2) subalgebra closes") {
  LieAlgebra alg = LieAlgebra::build(AlgebraFamily::su, 3);
  CHECK(alg.dim() == 8);
  // basis order: off-diagonal pairs first, Cartan axes last (6, 7); the first
  // sym/antisym pair brackets onto the first Cartan axis with unit constant
  CHECK(std::abs(alg.f(0, 1, 6)) == doctest::Approx(1.0).epsilon(1e-12));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b)
      for (int c = 0; c < 8; ++c) {
        CHECK(alg.f(a, b, c) == doctest::Approx(-alg.f(b, a, c)).epsilon(1e-12));
        CHECK(alg.f(a, b, c) == doctest::Approx(-alg.f(a, c, b)).epsilon(1e-12));
      }
}

TEST_CASE("Jacobi identity, exhaustive for N = 2, 3") {
  for (int n : {2, 3}) {
    LieAlgebra alg = LieAlgebra::build(AlgebraFamily::su, n);
    const int d = alg.dim();
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c)
          for (int dd = 0; dd < d; ++dd) {
            double s = 0;
            for (int e = 0; e < d; ++e)
              s += alg.f(a, b, e) * alg.f(e, c, dd) + alg.f(c, b, e) * alg.f(a, e, dd) +
                   alg.f(dd, b, e) * alg.f(a, c, e);
            CHECK(std::abs(s) < 1e-12);
          }
  }
}

TEST_CASE("adjoint Casimir equals N for su(N), N = 2, 3, 4") {
  for (int n : {2, 3, 4}) {
    LieAlgebra alg = LieAlgebra::build(AlgebraFamily::su, n);
    // exhaustive contraction oracle: f^{acd} f^{bcd}
    const int d = alg.dim();
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        double s = 0;
        for (int c = 0; c < d; ++c)
          for (int e = 0; e < d; ++e) s += alg.f(a, c, e) * alg.f(b, c, e);
        CHECK(std::abs(s - (a == b ? static_cast<double>(n) : 0.0)) < 1e-12);
      }
    CHECK(alg.casimir_adjoint() == doctest::Approx(static_cast<double>(n)).epsilon(1e-12));
  }
}

TEST_CASE("adjoint matrix: zero input, basis entries, antisymmetry") {
  LieAlgebra alg = LieAlgebra::build(AlgebraFamily::su, 2);
  std::vector<double> zero(3, 0.0);
  for (double m : alg.adjoint_matrix(zero)) CHECK(m == 0.0);

  std::vector<double> e1{1, 0, 0};
  std::vector<double> m = alg.adjoint_matrix(e1);
  // (ad_{e1} v)^a = f^{abc} e1^b v^c: +-1 at the (2,3)/(3,2) slots (1-based)
  CHECK(m[1 * 3 + 2] == doctest::Approx(-1.0));
  CHECK(m[2 * 3 + 1] == doctest::Approx(1.0));
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) CHECK(m[r * 3 + c] == doctest::Approx(-m[c * 3 + r]));
}

TEST_CASE("adjoint_matrix is a Lie algebra homomorphism on random pairs") {
  for (int n : {2, 3}) {
    LieAlgebra alg = LieAlgebra::build(AlgebraFamily::su, n);
    const int d = alg.dim();
    SplitMix64 rng(12345);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> x(d), y(d);
      for (double& v : x) v = rng.normal();
      for (double& v : y) v = rng.normal();
      std::vector<double> ax = alg.adjoint_matrix(x);
      std::vector<double> ay = alg.adjoint_matrix(y);
      std::vector<double> axy = alg.adjoint_matrix(alg.bracket(x, y));
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
          double comm = 0;
          for (int e = 0; e < d; ++e)
            comm += ax[r * d + e] * ay[e * d + c] - ay[r * d + e] * ax[e * d + c];
          CHECK(std::abs(axy[r * d + c] - comm) < 1e-12);
        }
    }
  }
}

TEST_CASE("error paths: unsupported family inputs") {
  CHECK_THROWS_AS(LieAlgebra::build(AlgebraFamily::su, 1), Error);
  CHECK_THROWS_AS(LieAlgebra::build(AlgebraFamily::su, 0), Error);
  LieAlgebra alg = LieAlgebra::build(AlgebraFamily::su, 2);
  std::vector<double> wrong(4, 0.0);
  CHECK_THROWS_AS(alg.adjoint_matrix(wrong), Error);
}
