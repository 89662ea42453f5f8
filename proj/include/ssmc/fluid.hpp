#pragma once

// Quasi-Einstein structure and the field-equation bookkeeping on
// four-dimensional generated GRW charts.
//
// A perfect-fluid Ricci tensor has the form Ric = a g + b pi (x) pi.  The two
// coefficients follow from two scalar projections (the pi(P) = g(P,P) = s
// projection and the metric trace):
//
//   Ric(P,P) = a s + b s^2          r = n a + b s
//
// On a generated GRW chart s = -1 and this reduces to a = (r + Ric(P,P))/(n-1),
// b = a + Ric(P,P).  Einstein's equations with coupling k then identify
//   k sigma = a + b/2,   k p = b/2 - a,   r = k (sigma - 3 p),
// and a - b = n - 1 forces k (sigma + 3 p) = -6: the strong energy condition
// fails on every such chart.

#include <cmath>
#include <string>
#include <vector>

#include "ssmc/curvature.hpp"

namespace ssmc {

struct quasi_einstein_fit {
  double a = 0.0;
  double b = 0.0;
  double residual = 0.0;  // || Ric - a g - b pi(x)pi || / (1 + ||Ric||)
};

inline quasi_einstein_fit fit_quasi_einstein(const tensor& ric, const chart_frame& f) {
  const int n = f.dim();
  const double s = f.pi_P;
  if (std::fabs(s) < 1e-8) throw degenerate_pi("pi vanishes or is null; no quasi-Einstein fit");
  const double det = s * s * (1.0 - n);
  if (std::fabs(det) < 1e-12) throw degenerate_pi("projection system is singular");

  double ric_pp = 0.0;
  for (int y = 0; y < n; ++y)
    for (int z = 0; z < n; ++z) ric_pp += ric(y, z) * f.P(y) * f.P(z);
  const double r = scalar_from_ricci(ric, f.mj.m);

  quasi_einstein_fit out;
  out.a = (ric_pp * s - s * s * r) / det;
  out.b = (s * r - n * ric_pp) / det;

  tensor res = ric;
  const tensor Pi = pi_outer_pi(f);
  for (int y = 0; y < n; ++y)
    for (int z = 0; z < n; ++z) res(y, z) -= out.a * f.mj.m.g(y, z) + out.b * Pi(y, z);
  out.residual = res.frobenius() / (1.0 + ric.frobenius());
  return out;
}

struct fluid_state {
  std::vector<double> point;  // chart coordinates this state was read at
  double a = 0.0, b = 0.0, fit_residual = 0.0;
  double sigma = 0.0;  // energy density (times 1, after dividing by k)
  double p = 0.0;      // isotropic pressure
  double scalar = 0.0; // r^g at the point
  double eos_ratio = 0.0;  // p / sigma (0 when sigma is numerically zero)
  bool sec_violated = false;  // sigma + 3p < 0
  bool wec_ok = false;        // sigma > 0
  std::string classification;  // phantom_barrier | stiff | phantom | dark_energy | other
};

inline fluid_state make_fluid_state(const quasi_einstein_fit& fit, double rg, double k) {
  fluid_state st;
  st.a = fit.a;
  st.b = fit.b;
  st.fit_residual = fit.residual;
  st.scalar = rg;
  st.sigma = (fit.a + fit.b / 2.0) / k;
  st.p = (fit.b / 2.0 - fit.a) / k;
  st.sec_violated = (st.sigma + 3.0 * st.p < 0.0);
  st.wec_ok = (st.sigma > 0.0);
  st.eos_ratio = (std::fabs(st.sigma) > 1e-12) ? st.p / st.sigma : 0.0;

  const double band = 1e-9 * (1.0 + std::fabs(st.sigma) + std::fabs(st.p));
  if (std::fabs(st.sigma + st.p) < band)
    st.classification = "phantom_barrier";
  else if (std::fabs(st.sigma - st.p) < band)
    st.classification = "stiff";
  else if (st.eos_ratio < -1.0)
    st.classification = "phantom";
  else if (st.eos_ratio < -1.0 / 3.0)
    st.classification = "dark_energy";
  else
    st.classification = "other";
  return st;
}

// Read sigma and p off the Levi-Civita Ricci tensor at one point.
inline fluid_state efe_analysis(const curvature_bundle& b, double k) {
  if (b.dim() != 4)
    throw precondition_error("field-equation analysis requires dimension 4");
  if (!(k > 0.0)) throw bad_config("coupling k must be positive");
  const quasi_einstein_fit fit = fit_quasi_einstein(b.ricg, b.frame);
  return make_fluid_state(fit, b.rg, k);
}

}  // namespace ssmc
