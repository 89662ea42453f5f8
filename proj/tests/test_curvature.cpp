// Curvature tensors, closed-form deformations, and the Weyl machinery.
//
// Oracles frozen here, independent of the closed-form engine under test:
//  * the unit sphere has R(X,Y)Z = g(Y,Z)X - g(X,Z)Y, Ric = (n-1) g;
//  * the exponential warped chart with flat fiber has Ric = (n-1) g in any
//    dimension (constant curvature +1), scalar n(n-1);
//  * the static spherically symmetric vacuum-with-constant chart has
//    Ric = 0.03 g, and its tt component at r = 4 equals (h/2)(h'' + 2 h'/r)
//    with h = 0.34, h' = 0.045, h'' = -0.0825, i.e. -0.0102 (hand derivation);
//  * the trace identity for the four-index symmetric product with the metric.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "ssmc/catalog.hpp"
#include "ssmc/curvature.hpp"
#include "ssmc/rng.hpp"

using namespace ssmc;

namespace {

curvature_bundle bundle_at(const char* name, int dim, std::uint64_t seed) {
  const auto entry = make_builtin(name, dim);
  const auto pt = sample_points(entry, 1, seed).front();
  return build_bundle(entry.instance, pt);
}

}  // namespace

TEST_CASE("unit sphere curvature is constant +1") {
  const auto b = bundle_at("sphere_concircular", 3, 5);
  const int n = b.dim();
  const auto& g = b.frame.metric().g;

  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double want = g(j, l) * (k == i ? 1.0 : 0.0) - g(i, l) * (k == j ? 1.0 : 0.0);
          CHECK(b.rg13(k, l, i, j) == Catch::Approx(want).margin(1e-10));
        }

  // Einstein with Ric = (n-1) g and scalar n(n-1).
  CHECK((b.ricg - static_cast<double>(n - 1) * g).max_abs() < 1e-10);
  CHECK(b.rg == Catch::Approx(static_cast<double>(n * (n - 1))).epsilon(1e-10));

  // The theta = 2 deformation cancels the curvature entirely on this chart.
  CHECK(b.r13[2].max_abs() < 1e-10);
}

TEST_CASE("sphere deformed curvature entry pinned by hand") {
  const auto entry = make_builtin("sphere_concircular", 3);
  const std::vector<double> pt = {0.8, 1.0, 1.3};
  const auto b = build_bundle(entry.instance, pt);
  const double r = pt[0];
  const double tan2 = std::tan(r) * std::tan(r);

  // With pi = tan(r) dr: s = pi(P) = tan^2 r, omega = 1, and the chart has
  // R^g = -G, so R^1 = R^g + (2 omega + s) G = -(1 + tan^2 r) R^g.  Entry
  // (0,1,0,1) of R^g equals g_11 = sin^2 r, hence R^1(0,1,0,1) = -tan^2 r.
  CHECK(b.frame.pi_P == Catch::Approx(tan2).epsilon(1e-12));
  CHECK(b.r13[1](0, 1, 0, 1) == Catch::Approx(-tan2).epsilon(1e-9));
  const auto want = (-(1.0 + tan2)) * b.rg13;
  CHECK((b.r13[1] - want).max_abs() < 1e-9);
}

TEST_CASE("exponential warped chart degeneracies") {
  for (int dim : {4, 5}) {
    const auto b = bundle_at("de_sitter_grw", dim, 17);
    const int n = b.dim();
    const auto& g = b.frame.metric().g;

    CHECK((b.ricg - static_cast<double>(n - 1) * g).max_abs() < 1e-9);
    CHECK(b.rg == Catch::Approx(static_cast<double>(n * (n - 1))).epsilon(1e-9));
    // The theta = 1 deformation is flat on this chart.
    CHECK(b.r13[1].max_abs() < 1e-9);
    CHECK(b.ric[1].max_abs() < 1e-9);
    CHECK(std::abs(b.scal[1]) < 1e-9);
  }
}

TEST_CASE("static spherical chart matches the hand Ricci oracle") {
  const auto entry = make_builtin("kottler");
  // Fix r = 4; the remaining coordinates do not enter the tt component check.
  const std::vector<double> pt = {0.2, 4.0, 1.1, 0.9};
  const auto b = build_bundle(entry.instance, pt);

  const double h = 0.34, hp = 0.045, hpp = -0.0825;
  const double want_tt = 0.5 * h * (hpp + 2.0 * hp / 4.0);
  CHECK(want_tt == Catch::Approx(-0.0102).epsilon(1e-12));
  CHECK(b.ricg(0, 0) == Catch::Approx(want_tt).margin(1e-10));

  // Independently, the whole tensor satisfies Ric = 0.03 g on this chart.
  CHECK((b.ricg - 0.03 * b.frame.metric().g).max_abs() < 1e-9);
  CHECK(b.rg == Catch::Approx(0.12).margin(1e-9));
}

TEST_CASE("flat chart with closed one-form") {
  const auto b = bundle_at("flat_affine", 4, 23);
  CHECK(b.rg13.max_abs() < 1e-11);
  CHECK(b.r13[2].max_abs() < 1e-11);
  // The theta = 1 deformation is NOT flat here: its curvature is s G with
  // s = pi(P) > 0, so it must be bounded away from zero.
  CHECK(b.r13[1].max_abs() > 1e-3);
}

TEST_CASE("index shuffles round-trip and contract correctly") {
  const auto b = bundle_at("closed_grw", 4, 31);
  const int n = b.dim();
  const auto& m = b.frame.metric();

  const auto back = r04_to_r13(riem_to_r04(b.rg13, m), m);
  CHECK((back - b.rg13).max_abs() < 1e-11);

  // ricci_from_riem against an explicit trace over the first slot.
  tensor ric(n, {slot::lower, slot::lower});
  for (int y = 0; y < n; ++y)
    for (int z = 0; z < n; ++z) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += b.rg13(k, z, k, y);
      ric(y, z) = s;
    }
  CHECK((ric - b.ricg).max_abs() < 1e-12);

  double r = 0.0;
  for (int y = 0; y < n; ++y)
    for (int z = 0; z < n; ++z) r += m.g_inv(y, z) * ric(y, z);
  CHECK(r == Catch::Approx(b.rg).margin(1e-12));
}

TEST_CASE("first Bianchi identity for the base curvature") {
  const auto b = bundle_at("closed_grw", 5, 37);
  const int n = b.dim();
  double worst = 0.0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int w = 0; w < n; ++w) {
          const double c =
              b.rg04(x, y, z, w) + b.rg04(y, z, x, w) + b.rg04(z, x, y, w);
          worst = std::max(worst, std::abs(c));
        }
  CHECK(worst < 1e-10);
}

TEST_CASE("four-index symmetric product trace identity") {
  const int n = 5;
  rng gen(99);
  tensor a(n, {slot::lower, slot::lower});
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double v = gen.uniform(-2.0, 2.0);
      a(i, j) = v;
      a(j, i) = v;
    }
  // Lorentzian-like diagonal metric so g != id exercises the raising.
  tensor gmat(n, {slot::lower, slot::lower});
  gmat(0, 0) = -1.0;
  for (int i = 1; i < n; ++i) gmat(i, i) = 1.0 + 0.25 * i;
  const auto m = make_metric_at_point(n, gmat.data());

  const auto kn = kulkarni_nomizu(a, m.g);
  double tr_a = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) tr_a += m.g_inv(i, j) * a(i, j);

  // g^{xw} (A * g)(x,y,z,w) = (n-2) A(y,z) + tr_g(A) g(y,z).
  for (int y = 0; y < n; ++y)
    for (int z = 0; z < n; ++z) {
      double t = 0.0;
      for (int x = 0; x < n; ++x)
        for (int w = 0; w < n; ++w) t += m.g_inv(x, w) * kn(x, y, z, w);
      const double want = (n - 2.0) * a(y, z) + tr_a * m.g(y, z);
      CHECK(t == Catch::Approx(want).margin(1e-12));
    }
}

TEST_CASE("conformal curvature behaviour") {
  SECTION("throws below dimension four") {
    const auto b = bundle_at("sphere_concircular", 3, 41);
    CHECK_FALSE(b.weyl04.has_value());
    CHECK_THROWS_AS(weyl_tensor(b.rg04, b.ricg, b.rg, b.frame.metric()), precondition_error);
  }

  SECTION("conformally flat chart has vanishing conformal curvature") {
    const auto b = bundle_at("de_sitter_grw", 4, 43);
    REQUIRE(b.weyl04.has_value());
    CHECK(b.weyl04->max_abs() < 1e-9);
  }

  SECTION("static spherical chart has genuinely nonzero conformal curvature") {
    const auto b = bundle_at("kottler", 4, 47);
    REQUIRE(b.weyl04.has_value());
    CHECK(b.weyl04->frobenius() > 1e-3);

    // Totally trace-free in the first/last pair on both contractions.
    const int n = b.dim();
    const auto& m = b.frame.metric();
    double worst = 0.0;
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        double t14 = 0.0, t13 = 0.0;
        for (int x = 0; x < n; ++x)
          for (int w = 0; w < n; ++w) {
            t14 += m.g_inv(x, w) * (*b.weyl04)(x, y, z, w);
            t13 += m.g_inv(x, w) * (*b.weyl04)(x, y, w, z);
          }
        worst = std::max({worst, std::abs(t14), std::abs(t13)});
      }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("specialized closed forms agree with the general ones when omega is one") {
  const auto b = bundle_at("de_sitter_grw", 4, 53);
  for (int theta : {0, 1, 4, 5}) {
    const auto general = curvature_closed_form(theta, b.rg13, b.frame);
    const auto special = grw_curvature_closed_form(theta, b.rg13, b.frame);
    CHECK((general - special).max_abs() < 1e-10);
    const auto rg = ricci_closed_form(theta, b.ricg, b.frame);
    const auto rs = grw_ricci_closed_form(theta, b.ricg, b.frame);
    CHECK((rg - rs).max_abs() < 1e-10);
  }
}
