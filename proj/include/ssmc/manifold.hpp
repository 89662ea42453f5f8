#pragma once

// A chart instance and its pointwise jets.
//
// manifold_instance holds the symbolic data of one pseudo-Riemannian chart: a
// metric matrix of expressions, a covariant 1-form pi, a scalar factor omega,
// and a sampling box.  build_chart_frame evaluates everything at one point on
// second-order jets and packages the exact values / first partials / second
// partials the connection and curvature layers consume:
//
//   dg(k, i, j)      = d_k g_ij
//   d2g(k, l, i, j)  = d_k d_l g_ij
//   dg_inv(k, i, j)  = d_k g^ij   (analytic:  -g^ia (d_k g_ab) g^bj)
//   dpi(k, i)        = d_k pi_i
//   dP(k, i)         = d_k P^i,   P = g^{-1} pi

#include <string>
#include <utility>
#include <vector>

#include "ssmc/expr.hpp"
#include "ssmc/tensor.hpp"

namespace ssmc {

struct manifold_instance {
  std::string name;
  int dim = 0;
  std::vector<std::string> coords;
  std::vector<std::vector<expr_ptr>> g;  // dim x dim
  std::vector<expr_ptr> pi;              // lower index
  expr_ptr omega;
  std::vector<std::pair<double, double>> box;  // per-coordinate sampling range
};

struct metric_jet {
  std::vector<double> point;
  metric_at_point m;  // g, g_inv, det, signature
  tensor dg;          // (k,i,j) container
  tensor d2g;         // (k,l,i,j) container
  tensor dg_inv;      // (k,i,j) container

  int dim() const { return m.g.dim(); }
};

inline std::vector<jet2> coordinate_jets(int n, const std::vector<double>& point) {
  if (static_cast<int>(point.size()) != n) throw dimension_mismatch(point.size(), n);
  std::vector<jet2> xs;
  xs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) xs.push_back(jet2::coordinate(n, i, point[i]));
  return xs;
}

inline metric_jet build_metric_jet(const manifold_instance& m, const std::vector<double>& point) {
  const int n = m.dim;
  const std::vector<jet2> xs = coordinate_jets(n, point);

  // Evaluate every entry, demand value symmetry, then use the upper-triangle
  // jet for both (i,j) and (j,i) so all stored derivatives are exactly
  // symmetric in the metric indices.
  std::vector<std::vector<jet2>> gj(static_cast<std::size_t>(n),
                                    std::vector<jet2>(static_cast<std::size_t>(n), jet2(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      gj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          evaluate(m.g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], xs);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double a = gj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].value();
      const double b = gj[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)].value();
      if (std::fabs(a - b) > 1e-15 * (1.0 + std::fabs(a)))
        throw asymmetric_metric("metric entries (" + std::to_string(i) + "," + std::to_string(j) +
                                ") disagree");
      gj[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
          gj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }

  metric_jet out;
  out.point = point;
  std::vector<double> g_values(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g_values[static_cast<std::size_t>(i * n + j)] =
          gj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].value();
  out.m = make_metric_at_point(n, g_values);

  out.dg = tensor(n, {slot::lower, slot::lower, slot::lower});
  out.d2g = tensor(n, {slot::lower, slot::lower, slot::lower, slot::lower});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const jet2& e = gj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      for (int k = 0; k < n; ++k) {
        out.dg(k, i, j) = e.grad(k);
        for (int l = 0; l < n; ++l) out.d2g(k, l, i, j) = e.hess(k, l);
      }
    }

  // d_k g^ij = -g^ia (d_k g_ab) g^bj
  out.dg_inv = tensor(n, {slot::lower, slot::upper, slot::upper});
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) s += out.m.g_inv(i, a) * out.dg(k, a, b) * out.m.g_inv(b, j);
        out.dg_inv(k, i, j) = -s;
      }

  out.dg.require_finite();
  out.d2g.require_finite();
  out.dg_inv.require_finite();
  return out;
}

// Metric jet with derivatives from central finite differences of the metric
// values (h-step stencils).  Independent cross-check for the jet pipeline:
// everything downstream of dg/d2g can be recomputed from this and compared.
inline metric_jet build_metric_jet_fd(const manifold_instance& m, const std::vector<double>& point,
                                      double h) {
  const int n = m.dim;
  metric_jet out;
  out.point = point;

  std::vector<double> g_values(static_cast<std::size_t>(n) * n);
  out.dg = tensor(n, {slot::lower, slot::lower, slot::lower});
  out.d2g = tensor(n, {slot::lower, slot::lower, slot::lower, slot::lower});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const expr_ptr& e = m.g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      const fd_jet fd = finite_difference_oracle(
          [&e](const std::vector<double>& p) { return evaluate_value(e, p); }, point, h);
      g_values[static_cast<std::size_t>(i * n + j)] = fd.value;
      for (int k = 0; k < n; ++k) {
        out.dg(k, i, j) = fd.grad[static_cast<std::size_t>(k)];
        for (int l = 0; l < n; ++l) out.d2g(k, l, i, j) = fd.hess_at(n, k, l);
      }
    }
  out.m = make_metric_at_point(n, g_values);

  out.dg_inv = tensor(n, {slot::lower, slot::upper, slot::upper});
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) s += out.m.g_inv(i, a) * out.dg(k, a, b) * out.m.g_inv(b, j);
        out.dg_inv(k, i, j) = -s;
      }
  return out;
}

// Everything at one point that the connection family depends on.
struct chart_frame {
  metric_jet mj;
  tensor pi;    // (0,1)
  tensor dpi;   // (k,i) container: d_k pi_i
  tensor P;     // (1,0): P^k = g^{km} pi_m
  tensor dP;    // (k,i) container: d_k P^i
  double omega = 0.0;
  double pi_P = 0.0;  // pi(P) = g(P,P) = g^{ij} pi_i pi_j

  int dim() const { return mj.dim(); }
  const metric_at_point& metric() const { return mj.m; }
};

inline chart_frame build_chart_frame(const manifold_instance& m, const std::vector<double>& point) {
  chart_frame f;
  f.mj = build_metric_jet(m, point);
  const int n = m.dim;
  const std::vector<jet2> xs = coordinate_jets(n, point);

  f.pi = tensor(n, {slot::lower});
  f.dpi = tensor(n, {slot::lower, slot::lower});
  for (int i = 0; i < n; ++i) {
    const jet2 e = evaluate(m.pi[static_cast<std::size_t>(i)], xs);
    f.pi(i) = e.value();
    for (int k = 0; k < n; ++k) f.dpi(k, i) = e.grad(k);
  }

  f.P = tensor(n, {slot::upper});
  for (int k = 0; k < n; ++k) {
    double s = 0.0;
    for (int q = 0; q < n; ++q) s += f.mj.m.g_inv(k, q) * f.pi(q);
    f.P(k) = s;
  }
  f.dP = tensor(n, {slot::lower, slot::upper});
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int q = 0; q < n; ++q)
        s += f.mj.dg_inv(k, i, q) * f.pi(q) + f.mj.m.g_inv(i, q) * f.dpi(k, q);
      f.dP(k, i) = s;
    }

  f.omega = evaluate(m.omega, xs).value();
  f.pi_P = 0.0;
  for (int q = 0; q < n; ++q) f.pi_P += f.pi(q) * f.P(q);

  f.pi.require_finite();
  f.dpi.require_finite();
  f.P.require_finite();
  f.dP.require_finite();
  return f;
}

}  // namespace ssmc
