#pragma once

// Connection coefficients and their first coordinate derivatives.
//
// gamma(k, i, j) is Gamma^k_ij in the convention  nabla_{e_i} e_j =
// Gamma^k_ij e_k  (first lower index = differentiation direction), and
// dgamma(m, k, i, j) = d_m Gamma^k_ij.
//
// The one-parameter family built from a 1-form pi and its raised vector P:
//
//   theta = 1 (semi-symmetric metric):  Gamma^g + delta^k_i pi_j - g_ij P^k
//   theta = 2 (mutual / conjugate):     Gamma^g + delta^k_j pi_i - g_ij P^k
//   theta = 0 (symmetrized):            (Gamma^1 + Gamma^2) / 2
//
// Only nabla^1 carries torsion T^k_ij = delta^k_i pi_j - delta^k_j pi_i.

#include "ssmc/manifold.hpp"
#include "ssmc/tensor.hpp"

namespace ssmc {

struct connection_jet {
  tensor gamma;   // (k,i,j)
  tensor dgamma;  // (m,k,i,j)

  int dim() const { return gamma.dim(); }
};

inline connection_jet levi_civita(const metric_jet& mj) {
  const int n = mj.dim();
  connection_jet c;
  c.gamma = tensor(n, {slot::upper, slot::lower, slot::lower});
  c.dgamma = tensor(n, {slot::lower, slot::upper, slot::lower, slot::lower});

  // Gamma^k_ij = (1/2) g^{kl} (d_i g_jl + d_j g_il - d_l g_ij)
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l)
          s += mj.m.g_inv(k, l) * (mj.dg(i, j, l) + mj.dg(j, i, l) - mj.dg(l, i, j));
        c.gamma(k, i, j) = 0.5 * s;
      }

  // d_m Gamma^k_ij picks up one term from d_m g^{kl} and one from the second
  // partials of the metric.
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = 0.0;
          for (int l = 0; l < n; ++l) {
            s += mj.dg_inv(m, k, l) * (mj.dg(i, j, l) + mj.dg(j, i, l) - mj.dg(l, i, j));
            s += mj.m.g_inv(k, l) *
                 (mj.d2g(m, i, j, l) + mj.d2g(m, j, i, l) - mj.d2g(m, l, i, j));
          }
          c.dgamma(m, k, i, j) = 0.5 * s;
        }

  c.gamma.require_finite();
  c.dgamma.require_finite();
  return c;
}

// theta in {0, 1, 2}; needs the frame's pi / P jets on top of the metric.
inline connection_jet family_connection(const chart_frame& f, int theta,
                                        const connection_jet& lc) {
  if (theta < 0 || theta > 2) throw shape_mismatch("family_connection: theta must be 0, 1 or 2");
  const int n = f.dim();
  connection_jet c;
  c.gamma = tensor(n, {slot::upper, slot::lower, slot::lower});
  c.dgamma = tensor(n, {slot::lower, slot::upper, slot::lower, slot::lower});

  // weight of the delta^k_i pi_j term (w1) and of delta^k_j pi_i (w2)
  const double w1 = (theta == 1) ? 1.0 : (theta == 0) ? 0.5 : 0.0;
  const double w2 = (theta == 2) ? 1.0 : (theta == 0) ? 0.5 : 0.0;

  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double v = lc.gamma(k, i, j) - f.mj.m.g(i, j) * f.P(k);
        if (k == i) v += w1 * f.pi(j);
        if (k == j) v += w2 * f.pi(i);
        c.gamma(k, i, j) = v;
      }

  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double v = lc.dgamma(m, k, i, j) - f.mj.dg(m, i, j) * f.P(k) -
                     f.mj.m.g(i, j) * f.dP(m, k);
          if (k == i) v += w1 * f.dpi(m, j);
          if (k == j) v += w2 * f.dpi(m, i);
          c.dgamma(m, k, i, j) = v;
        }

  return c;
}

// T^k_ij = Gamma^k_ij - Gamma^k_ji, as a (1,2) tensor (k, i, j).
inline tensor torsion(const connection_jet& c) {
  const int n = c.dim();
  tensor t(n, {slot::upper, slot::lower, slot::lower});
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t(k, i, j) = c.gamma(k, i, j) - c.gamma(k, j, i);
  return t;
}

// (nabla^g pi)_ij = d_i pi_j - Gamma^k_ij pi_k  (i = direction).
inline tensor covariant_derivative_pi(const chart_frame& f, const connection_jet& c) {
  const int n = f.dim();
  tensor out(n, {slot::lower, slot::lower});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double v = f.dpi(i, j);
      for (int k = 0; k < n; ++k) v -= c.gamma(k, i, j) * f.pi(k);
      out(i, j) = v;
    }
  return out;
}

// (nabla P)^k_i = d_i P^k + Gamma^k_im P^m, returned as (k, i).
inline tensor covariant_derivative_P(const chart_frame& f, const connection_jet& c) {
  const int n = f.dim();
  tensor out(n, {slot::upper, slot::lower});
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      double v = f.dP(i, k);
      for (int m = 0; m < n; ++m) v += c.gamma(k, i, m) * f.P(m);
      out(k, i) = v;
    }
  return out;
}

// nabla^g pi - pi (x) pi - omega g: zero exactly when pi is concircular with
// factor omega.
inline tensor concircular_residual(const chart_frame& f, const connection_jet& lc) {
  const int n = f.dim();
  tensor out = covariant_derivative_pi(f, lc);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) -= f.pi(i) * f.pi(j) + f.omega * f.mj.m.g(i, j);
  return out;
}

// nabla^g P - Id - pi (x) P: zero exactly when P is torse-forming with unit
// weight (the generated-by-a-concircular-field case with omega = 1, pi(P) = -1).
inline tensor torse_forming_residual(const chart_frame& f, const connection_jet& lc) {
  const int n = f.dim();
  tensor out = covariant_derivative_P(f, lc);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      if (k == i) out(k, i) -= 1.0;
      out(k, i) -= f.pi(i) * f.P(k);
    }
  return out;
}

// nabla^1 P - (omega + pi(P)) Id: for a concircular pi this vanishes, so P is
// parallel for nabla^1 exactly when omega + pi(P) = 0.
inline tensor nabla1_P_residual(const chart_frame& f, const connection_jet& c1) {
  const int n = f.dim();
  tensor out = covariant_derivative_P(f, c1);
  const double lam = f.omega + f.pi_P;
  for (int k = 0; k < n; ++k) out(k, k) -= lam;
  return out;
}

// nabla^1 T^1 as a (m, k, i, j) container:
//   d_m T^k_ij + G1^k_mq T^q_ij - G1^q_mi T^k_qj - G1^q_mj T^k_iq.
inline tensor nabla1_torsion(const chart_frame& f, const connection_jet& c1) {
  const int n = f.dim();
  const tensor t = torsion(c1);
  tensor out(n, {slot::lower, slot::upper, slot::lower, slot::lower});
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          // T^k_ij = delta^k_i pi_j - delta^k_j pi_i termwise in the partials
          double v = 0.0;
          if (k == i) v += f.dpi(m, j);
          if (k == j) v -= f.dpi(m, i);
          for (int q = 0; q < n; ++q)
            v += c1.gamma(k, m, q) * t(q, i, j) - c1.gamma(q, m, i) * t(k, q, j) -
                 c1.gamma(q, m, j) * t(k, i, q);
          out(m, k, i, j) = v;
        }
  return out;
}

}  // namespace ssmc
