#include <doctest.h>

#include <cmath>

#include "ymlab/field.hpp"
#include "ymlab/rng.hpp"

using namespace ymlab;

namespace {

GeometryPtr geom4(int l = 4) { return std::make_shared<LatticeGeometry>(std::array<int, 4>{l, l, l, l}); }
AlgebraPtr su2() { return std::make_shared<LieAlgebra>(LieAlgebra::build(AlgebraFamily::su, 2)); }

BackgroundParams const_abelian(double fbar) {
  BackgroundParams p;
  p.kind = BackgroundKind::constant_abelian;
  p.strength = fbar;
  p.plane_mu = 1;
  p.plane_nu = 2;
  p.color_dir = {0, 0, 1};
  return p;
}

std::vector<double> multiply_gauges(const std::vector<double>& h, const std::vector<double>& k,
                                    std::int64_t nsites, int d) {
  std::vector<double> out(h.size(), 0.0);
  for (std::int64_t s = 0; s < nsites; ++s)
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) {
        double acc = 0;
        for (int e = 0; e < d; ++e)
          acc += h[static_cast<size_t>(s * d * d + r * d + e)] * k[static_cast<size_t>(s * d * d + e * d + c)];
        out[static_cast<size_t>(s * d * d + r * d + c)] = acc;
      }
  return out;
}

}  // namespace

TEST_CASE("site indexing is a bijection") {
  LatticeGeometry g({2, 3, 4, 5});
  CHECK(g.nsites() == 120);
  for (std::int64_t s = 0; s < g.nsites(); ++s) CHECK(g.index(g.coords(s)) == s);
  CHECK_THROWS_AS(LatticeGeometry({1, 4, 4, 4}), Error);
}

TEST_CASE("zero background: no field strength, zero action") {
  auto bg = make_background(geom4(), su2(), {});
  CHECK(bg.field_strength_max() == 0.0);
  CHECK(classical_action(bg, 1.0) == 0.0);
  CHECK_THROWS_AS(classical_action(bg, 0.0), Error);
  CHECK_THROWS_AS(classical_action(bg, -1.0), Error);
}

TEST_CASE("adjoint links are orthogonal for all background kinds") {
  auto geom = geom4();
  auto alg = su2();
  BackgroundParams smooth;
  smooth.kind = BackgroundKind::random_smooth;
  smooth.seed = 3;
  smooth.amplitude = 0.2;
  for (const BackgroundParams& p :
       {BackgroundParams{}, const_abelian(quantized_strength(*geom, 1, 2, 1)), smooth}) {
    BackgroundField bg = make_background(geom, alg, p);
    const int d = bg.dim();
    for (std::int64_t s = 0; s < geom->nsites(); ++s)
      for (int mu = 0; mu < 4; ++mu) {
        const double* u = bg.link(s, mu);
        for (int r = 0; r < d; ++r)
          for (int c = 0; c < d; ++c) {
            double acc = 0;
            for (int e = 0; e < d; ++e) acc += u[r * d + e] * u[c * d + e];
            CHECK(std::abs(acc - (r == c ? 1 : 0)) < 1e-12);
          }
      }
  }
}

TEST_CASE("quantized constant abelian background: clover F exact everywhere") {
  auto geom = geom4();
  const double fbar = quantized_strength(*geom, 1, 2, 1);
  CHECK(fbar == doctest::Approx(2 * M_PI / 16));
  BackgroundField bg = make_background(geom, su2(), const_abelian(fbar));
  const int p12 = BackgroundField::plane_index(1, 2);
  for (std::int64_t s = 0; s < geom->nsites(); ++s) {
    for (int p = 0; p < 6; ++p) {
      const double* f = bg.field_strength(s, p);
      CHECK(std::abs(f[0]) < 1e-11);
      CHECK(std::abs(f[1]) < 1e-11);
      const double expect = (p == p12) ? fbar : 0.0;
      CHECK(f[2] == doctest::Approx(expect).epsilon(1e-11));
    }
  }
  CHECK(bg.field_strength_max() == doctest::Approx(fbar).epsilon(1e-11));
}

TEST_CASE("constant abelian action: closed form at quantized flux") {
  auto geom = geom4();
  const double fbar = quantized_strength(*geom, 1, 2, 2);
  BackgroundField bg = make_background(geom, su2(), const_abelian(fbar));
  const double g2 = 0.7;
  const double expected = 2.0 * fbar * fbar * static_cast<double>(geom->nsites()) / (4.0 * g2);
  CHECK(classical_action(bg, g2) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("non-quantized strength: wrap mismatch confined to the corner line") {
  auto geom = geom4();
  const double fbar = 0.8 * quantized_strength(*geom, 1, 2, 1);
  BackgroundField bg = make_background(geom, su2(), const_abelian(fbar));
  const int p12 = BackgroundField::plane_index(1, 2);
  const int l = geom->extent(1);
  for (std::int64_t s = 0; s < geom->nsites(); ++s) {
    auto x = geom->coords(s);
    const bool corner_adjacent = (x[1] >= l - 2 || x[1] == 0) && (x[2] >= l - 2 || x[2] == 0);
    if (!corner_adjacent)
      CHECK(bg.field_strength(s, p12)[2] == doctest::Approx(fbar).epsilon(1e-10));
  }
}

TEST_CASE("overly strong field is refused") {
  auto geom = geom4();
  CHECK_THROWS_AS(make_background(geom, su2(), const_abelian(1.5)), Error);
  BackgroundParams bad = const_abelian(0.1);
  bad.color_dir = {0, 0, 2};  // not unit
  CHECK_THROWS_AS(make_background(geom, su2(), bad), Error);
  bad = const_abelian(0.1);
  bad.plane_nu = bad.plane_mu;
  CHECK_THROWS_AS(make_background(geom, su2(), bad), Error);
}

TEST_CASE("random_smooth is reproducible bit for bit") {
  auto geom = geom4();
  auto alg = su2();
  BackgroundParams p;
  p.kind = BackgroundKind::random_smooth;
  p.seed = 7;
  p.amplitude = 0.1;
  BackgroundField a = make_background(geom, alg, p);
  BackgroundField b = make_background(geom, alg, p);
  CHECK(a.b_raw() == b.b_raw());
  p.seed = 8;
  BackgroundField c = make_background(geom, alg, p);
  CHECK(a.b_raw() != c.b_raw());
}

TEST_CASE("gauge transforms: identity, invariance, composition") {
  auto geom = geom4();
  auto alg = su2();
  const int d = alg->dim();
  BackgroundField bg = make_background(geom, alg, const_abelian(quantized_strength(*geom, 1, 2, 1)));

  std::vector<double> id(static_cast<size_t>(geom->nsites()) * d * d, 0.0);
  for (std::int64_t s = 0; s < geom->nsites(); ++s)
    for (int r = 0; r < d; ++r) id[static_cast<size_t>(s * d * d + r * d + r)] = 1.0;
  BackgroundField same = gauge_transform(bg, id);
  for (std::int64_t s = 0; s < geom->nsites(); ++s)
    for (int mu = 0; mu < 4; ++mu)
      for (int e = 0; e < d * d; ++e)
        CHECK(same.link(s, mu)[e] == doctest::Approx(bg.link(s, mu)[e]).epsilon(1e-14));

  const double action = classical_action(bg, 1.0);
  for (std::uint64_t seed : {11ull, 12ull, 13ull, 14ull, 15ull, 16ull, 17ull, 18ull, 19ull, 20ull}) {
    std::vector<double> h = random_gauge(*geom, *alg, seed);
    BackgroundField tr = gauge_transform(bg, h);
    CHECK(classical_action(tr, 1.0) == doctest::Approx(action).epsilon(1e-10));
  }

  std::vector<double> h = random_gauge(*geom, *alg, 5);
  std::vector<double> k = random_gauge(*geom, *alg, 6);
  BackgroundField two_step = gauge_transform(gauge_transform(bg, h), k);
  BackgroundField one_step = gauge_transform(bg, multiply_gauges(h, k, geom->nsites(), d));
  for (std::int64_t s = 0; s < geom->nsites(); ++s)
    for (int mu = 0; mu < 4; ++mu)
      for (int e = 0; e < d * d; ++e)
        CHECK(two_step.link(s, mu)[e] == doctest::Approx(one_step.link(s, mu)[e]).epsilon(1e-11));

  std::vector<double> bad = id;
  bad[0] = 2.0;
  CHECK_THROWS_AS(gauge_transform(bg, bad), Error);
}

TEST_CASE("inner product: symmetric, finite, deterministic vs serial reference") {
  auto geom = geom4();
  auto alg = su2();
  AdjointField u(geom, alg, FieldRank::vector);
  AdjointField v(geom, alg, FieldRank::vector);
  u.fill_rademacher_from(1);
  SplitMix64 rng(2);
  for (std::int64_t i = 0; i < v.size(); ++i) v.data()[i] = rng.normal();
  CHECK(dot(u, v) == doctest::Approx(dot(v, u)).epsilon(1e-15));
  CHECK(dot(u, u) >= 0);
  CHECK(dot(u, v) == ymlab::ref::dot(u, v));  // identical block order: bitwise equal
  AdjointField w(geom, alg, FieldRank::scalar);
  CHECK_THROWS_AS(dot(u, w), Error);
}
