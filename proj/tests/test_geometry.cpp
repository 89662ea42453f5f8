// Chart frames, metric jets, and connection construction.
//
// Frozen oracles: the polar-coordinate plane (Christoffel symbols worked out
// by hand), the Minkowski covector frame, and the defining formula for the
// torsion of the family connection.  The analytic metric jet is additionally
// cross-checked against the finite-difference jet on two curved charts.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "ssmc/catalog.hpp"
#include "ssmc/connection.hpp"
#include "ssmc/manifold.hpp"

using namespace ssmc;

namespace {

manifold_instance polar_plane() {
  return detail::make_instance("polar", {"r", "phi"}, {{"1", "0"}, {"0", "r^2"}}, {"0", "0"}, "0",
                               {{0.5, 2.0}, {0.1, 3.0}});
}

}  // namespace

TEST_CASE("polar plane Levi-Civita symbols match hand computation") {
  const auto m = polar_plane();
  const double r = 1.7;
  const auto mj = build_metric_jet(m, {r, 0.4});
  const auto lc = levi_civita(mj);

  // Nonzero symbols: Gamma^r_{phi phi} = -r, Gamma^phi_{r phi} = 1/r.
  CHECK(lc.gamma(0, 1, 1) == Catch::Approx(-r).epsilon(1e-12));
  CHECK(lc.gamma(1, 0, 1) == Catch::Approx(1.0 / r).epsilon(1e-12));
  CHECK(lc.gamma(1, 1, 0) == Catch::Approx(1.0 / r).epsilon(1e-12));
  CHECK(std::abs(lc.gamma(0, 0, 0)) < 1e-14);
  CHECK(std::abs(lc.gamma(0, 0, 1)) < 1e-14);
  CHECK(std::abs(lc.gamma(0, 1, 0)) < 1e-14);
  CHECK(std::abs(lc.gamma(1, 0, 0)) < 1e-14);
  CHECK(std::abs(lc.gamma(1, 1, 1)) < 1e-14);

  // First derivatives: d_r Gamma^r_{phi phi} = -1, d_r Gamma^phi_{r phi} = -1/r^2,
  // and every phi-derivative vanishes.
  CHECK(lc.dgamma(0, 0, 1, 1) == Catch::Approx(-1.0).epsilon(1e-12));
  CHECK(lc.dgamma(0, 1, 0, 1) == Catch::Approx(-1.0 / (r * r)).epsilon(1e-12));
  CHECK(lc.dgamma(0, 1, 1, 0) == Catch::Approx(-1.0 / (r * r)).epsilon(1e-12));
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(std::abs(lc.dgamma(1, k, i, j)) < 1e-14);
}

TEST_CASE("analytic metric jet agrees with finite differences") {
  for (const char* name : {"closed_grw", "kottler"}) {
    const auto entry = make_builtin(name);
    std::vector<double> point;
    for (const auto& [lo, hi] : entry.instance.box) point.push_back(0.5 * (lo + hi));

    const auto exact = build_metric_jet(entry.instance, point);
    const auto fd = build_metric_jet_fd(entry.instance, point, 1e-4);

    const double scale_g = 1.0 + exact.dg.max_abs();
    const double scale_g2 = 1.0 + exact.d2g.max_abs();
    const double scale_gi = 1.0 + exact.dg_inv.max_abs();
    CHECK((exact.dg - fd.dg).max_abs() / scale_g < 1e-6);
    CHECK((exact.d2g - fd.d2g).max_abs() / scale_g2 < 1e-6);
    CHECK((exact.dg_inv - fd.dg_inv).max_abs() / scale_gi < 1e-6);
    CHECK((exact.m.g - fd.m.g).max_abs() < 1e-12);
  }
}

TEST_CASE("metric validation failures throw") {
  const auto bad_sym = detail::make_instance("bad_sym", {"x", "y"}, {{"1", "1"}, {"0", "1"}},
                                             {"0", "0"}, "0", {{0.0, 1.0}, {0.0, 1.0}});
  CHECK_THROWS_AS(build_metric_jet(bad_sym, {0.5, 0.5}), asymmetric_metric);

  const auto bad_rank = detail::make_instance("bad_rank", {"x", "y"}, {{"1", "0"}, {"0", "0"}},
                                              {"0", "0"}, "0", {{0.0, 1.0}, {0.0, 1.0}});
  CHECK_THROWS_AS(build_metric_jet(bad_rank, {0.5, 0.5}), singular_metric);
}

TEST_CASE("Minkowski chart frame") {
  const auto entry = make_builtin("minkowski");
  const auto f = build_chart_frame(entry.instance, {0.3, -0.2, 0.7, 1.1});
  REQUIRE(f.dim() == 4);

  // pi = -dt, so P = g^{-1} pi points along +t and pi(P) = -1.
  CHECK(f.pi(0) == Catch::Approx(-1.0).epsilon(1e-14));
  for (int i = 1; i < 4; ++i) CHECK(std::abs(f.pi(i)) < 1e-14);
  CHECK(f.P(0) == Catch::Approx(1.0).epsilon(1e-14));
  for (int i = 1; i < 4; ++i) CHECK(std::abs(f.P(i)) < 1e-14);
  CHECK(f.pi_P == Catch::Approx(-1.0).epsilon(1e-14));
  CHECK(f.dpi.max_abs() < 1e-14);
  CHECK(f.dP.max_abs() < 1e-14);
  CHECK(f.omega == 0.0);
  CHECK(f.metric().lorentzian());
}

TEST_CASE("sphere chart frame carries the concircular data") {
  const auto entry = make_builtin("sphere_concircular", 3);
  const auto pt = sample_points(entry, 1, 7).front();
  const auto f = build_chart_frame(entry.instance, pt);

  CHECK(f.omega == Catch::Approx(1.0).epsilon(1e-14));
  // pi = tan(r) dr on the unit sphere chart: check the first component and
  // the diagonal derivative d_r pi_r = sec^2 r.
  const double r = pt[0];
  CHECK(f.pi(0) == Catch::Approx(std::tan(r)).epsilon(1e-12));
  const double sec2 = 1.0 + std::tan(r) * std::tan(r);
  CHECK(f.dpi(0, 0) == Catch::Approx(sec2).epsilon(1e-10));

  const auto lc = levi_civita(f.mj);
  CHECK(concircular_residual(f, lc).max_abs() < 1e-10);
}

TEST_CASE("family connection torsion matches its defining formula") {
  const auto entry = make_builtin("de_sitter_grw", 4);
  const auto pt = sample_points(entry, 1, 11).front();
  const auto f = build_chart_frame(entry.instance, pt);
  const auto lc = levi_civita(f.mj);
  const int n = f.dim();

  SECTION("Levi-Civita is torsion free and metric") {
    CHECK(torsion(lc).max_abs() < 1e-12);
    CHECK(covariant_derivative_pi(f, lc).rank() == 2);
  }

  SECTION("torsion of the deformed connection") {
    const auto c1 = family_connection(f, 1, lc);
    const auto t = torsion(c1);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double want = (k == i ? f.pi(j) : 0.0) - (k == j ? f.pi(i) : 0.0);
          CHECK(t(k, i, j) == Catch::Approx(want).margin(1e-12));
        }
  }

  SECTION("symmetrized connection averages the mutual pair") {
    const auto c0 = family_connection(f, 0, lc);
    const auto c1 = family_connection(f, 1, lc);
    const auto c2 = family_connection(f, 2, lc);
    auto avg = c1.gamma + c2.gamma;
    avg *= 0.5;
    CHECK((c0.gamma - avg).max_abs() < 1e-12);
    CHECK(torsion(c0).max_abs() < 1e-12);
  }

  SECTION("only the metric members of the family annihilate the metric") {
    const auto c1 = family_connection(f, 1, lc);
    const auto c2 = family_connection(f, 2, lc);
    // nabla^1 g = 0 entrywise: d_i g_jl - Gamma^m_ij g_ml - Gamma^m_il g_jm.
    auto nabla_g = [&](const connection_jet& c) {
      tensor out(n, {slot::lower, slot::lower, slot::lower});
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int l = 0; l < n; ++l) {
            double s = f.mj.dg(i, j, l);
            for (int m = 0; m < n; ++m)
              s -= c.gamma(m, i, j) * f.metric().g(m, l) + c.gamma(m, i, l) * f.metric().g(j, m);
            out(i, j, l) = s;
          }
      return out;
    };
    CHECK(nabla_g(c1).max_abs() < 1e-12);
    CHECK(nabla_g(lc).max_abs() < 1e-12);
    CHECK(nabla_g(c2).max_abs() > 1e-3);
  }
}
