#pragma once

// Curvature tensors of the connection family and their closed forms.
//
// Conventions (coordinate frames, so [e_i, e_j] = 0):
//   R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_{[X,Y]} Z
//   R13(k, l, i, j) = (R(e_i, e_j) e_l)^k
//                   = d_i G^k_jl - d_j G^k_il + G^k_im G^m_jl - G^k_jm G^m_il
//   R04(x, y, z, w) = g(R(e_x, e_y) e_z, e_w)
//   Ric(y, z)       = trace of X -> R(X, y) z = sum_k R13(k, z, k, y)
//   r               = g^{yz} Ric(y, z)
//
// The family index theta runs over six curvature-type tensors:
//   0, 1, 2 : curvature of one connection (symmetrized / semi-symmetric /
//             mutual),
//   3, 4, 5 : the mixed combinations that pair nabla^1 with nabla^2 in the
//             second derivatives and in the lower-order terms.
//
// For a concircular pi (nabla^g pi = pi (x) pi + omega g) each of the six has
// a closed form in terms of R^g, g, pi, omega and pi(P); those forms and their
// Ricci / scalar contractions are what the verification suites compare the
// direct computations against.

#include <array>
#include <optional>

#include "ssmc/connection.hpp"
#include "ssmc/manifold.hpp"
#include "ssmc/tensor.hpp"

namespace ssmc {

inline tensor curvature_from_connection(const connection_jet& c) {
  const int n = c.dim();
  tensor r(n, {slot::upper, slot::lower, slot::lower, slot::lower});
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double v = c.dgamma(i, k, j, l) - c.dgamma(j, k, i, l);
          for (int m = 0; m < n; ++m)
            v += c.gamma(k, i, m) * c.gamma(m, j, l) - c.gamma(k, j, m) * c.gamma(m, i, l);
          r(k, l, i, j) = v;
        }
  r.require_finite();
  return r;
}

// The three mixed curvature-type tensors.  In a coordinate frame:
//
//   theta = 3:  nabla2_i(nabla1_j e_l) - nabla1_j(nabla2_i e_l)
//               + G1^m_ji nabla2_m e_l - G2^m_ij nabla1_m e_l
//   theta = 4:  same second-order part, but lower-order terms
//               + G2^m_ji nabla2_m e_l - G1^m_ij nabla1_m e_l
//   theta = 5:  (1/2) [ nabla1_i nabla1_j e_l - nabla2_j nabla1_i e_l
//                      + nabla2_i nabla2_j e_l - nabla1_j nabla2_i e_l ]
inline tensor curvature_mixed(const connection_jet& c1, const connection_jet& c2, int theta) {
  const int n = c1.dim();
  if (c2.dim() != n) throw shape_mismatch("curvature_mixed: dimensions differ");
  tensor r(n, {slot::upper, slot::lower, slot::lower, slot::lower});

  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double v = 0.0;
          if (theta == 3 || theta == 4) {
            v = c1.dgamma(i, k, j, l) - c2.dgamma(j, k, i, l);
            for (int m = 0; m < n; ++m) {
              v += c2.gamma(k, i, m) * c1.gamma(m, j, l) - c1.gamma(k, j, m) * c2.gamma(m, i, l);
              if (theta == 3)
                v += c1.gamma(m, j, i) * c2.gamma(k, m, l) - c2.gamma(m, i, j) * c1.gamma(k, m, l);
              else
                v += c2.gamma(m, j, i) * c2.gamma(k, m, l) - c1.gamma(m, i, j) * c1.gamma(k, m, l);
            }
          } else if (theta == 5) {
            v = 0.5 * (c1.dgamma(i, k, j, l) - c1.dgamma(j, k, i, l) + c2.dgamma(i, k, j, l) -
                       c2.dgamma(j, k, i, l));
            for (int m = 0; m < n; ++m)
              v += 0.5 * (c1.gamma(k, i, m) * c1.gamma(m, j, l) -
                          c2.gamma(k, j, m) * c1.gamma(m, i, l) +
                          c2.gamma(k, i, m) * c2.gamma(m, j, l) -
                          c1.gamma(k, j, m) * c2.gamma(m, i, l));
          } else {
            throw shape_mismatch("curvature_mixed: theta must be 3, 4 or 5");
          }
          r(k, l, i, j) = v;
        }
  r.require_finite();
  return r;
}

inline tensor riem_to_r04(const tensor& r13, const metric_at_point& m) {
  const int n = r13.dim();
  tensor out(n, {slot::lower, slot::lower, slot::lower, slot::lower});
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int w = 0; w < n; ++w) {
          double v = 0.0;
          for (int k = 0; k < n; ++k) v += m.g(k, w) * r13(k, z, x, y);
          out(x, y, z, w) = v;
        }
  return out;
}

inline tensor r04_to_r13(const tensor& r04, const metric_at_point& m) {
  const int n = r04.dim();
  tensor out(n, {slot::upper, slot::lower, slot::lower, slot::lower});
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double v = 0.0;
          for (int w = 0; w < n; ++w) v += m.g_inv(k, w) * r04(i, j, l, w);
          out(k, l, i, j) = v;
        }
  return out;
}

inline tensor ricci_from_riem(const tensor& r13) {
  const int n = r13.dim();
  tensor out(n, {slot::lower, slot::lower});
  for (int y = 0; y < n; ++y)
    for (int z = 0; z < n; ++z) {
      double v = 0.0;
      for (int k = 0; k < n; ++k) v += r13(k, z, k, y);
      out(y, z) = v;
    }
  return out;
}

inline double scalar_from_ricci(const tensor& ric, const metric_at_point& m) {
  const int n = ric.dim();
  double r = 0.0;
  for (int y = 0; y < n; ++y)
    for (int z = 0; z < n; ++z) r += m.g_inv(y, z) * ric(y, z);
  return r;
}

// --- closed forms for concircular pi ----------------------------------------

namespace detail {

// g(X,Z) Y - g(Y,Z) X  with X=e_i, Y=e_j, Z=e_l, component k.
inline tensor curv_term_g(const chart_frame& f) {
  const int n = f.dim();
  tensor t(n, {slot::upper, slot::lower, slot::lower, slot::lower});
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double v = 0.0;
          if (k == j) v += f.mj.m.g(i, l);
          if (k == i) v -= f.mj.m.g(j, l);
          t(k, l, i, j) = v;
        }
  return t;
}

// pi(Z) (pi(Y) X - pi(X) Y)
inline tensor curv_term_pi(const chart_frame& f) {
  const int n = f.dim();
  tensor t(n, {slot::upper, slot::lower, slot::lower, slot::lower});
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double v = 0.0;
          if (k == i) v += f.pi(j);
          if (k == j) v -= f.pi(i);
          t(k, l, i, j) = f.pi(l) * v;
        }
  return t;
}

// omega (2 g(X,Z) Y - g(X,Y) Z - g(Y,Z) X) + pi(P) (g(X,Z) Y - g(X,Y) Z)
inline tensor curv_term_mixed3(const chart_frame& f) {
  const int n = f.dim();
  tensor t(n, {slot::upper, slot::lower, slot::lower, slot::lower});
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double v = 0.0;
          if (k == j) v += (2.0 * f.omega + f.pi_P) * f.mj.m.g(i, l);
          if (k == l) v -= (f.omega + f.pi_P) * f.mj.m.g(i, j);
          if (k == i) v -= f.omega * f.mj.m.g(j, l);
          t(k, l, i, j) = v;
        }
  return t;
}

// pi(Y) (pi(Z) X - pi(X) Z)
inline tensor curv_term_pi5(const chart_frame& f) {
  const int n = f.dim();
  tensor t(n, {slot::upper, slot::lower, slot::lower, slot::lower});
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double v = 0.0;
          if (k == i) v += f.pi(l);
          if (k == l) v -= f.pi(i);
          t(k, l, i, j) = f.pi(j) * v;
        }
  return t;
}

}  // namespace detail

// Closed form of the theta-curvature in terms of R^g, valid when pi is
// concircular with factor omega.
inline tensor curvature_closed_form(int theta, const tensor& rg13, const chart_frame& f) {
  const double w = f.omega, s = f.pi_P;
  switch (theta) {
    case 0:
      return rg13 + 0.5 * (3.0 * w + s) * detail::curv_term_g(f) -
             0.25 * detail::curv_term_pi(f);
    case 1:
      return rg13 + (2.0 * w + s) * detail::curv_term_g(f);
    case 2:
      return rg13 + w * detail::curv_term_g(f);
    case 3:
      return rg13 + detail::curv_term_mixed3(f);
    case 4:
      return rg13 + detail::curv_term_mixed3(f) - detail::curv_term_pi(f);
    case 5:
      return rg13 + 0.5 * (3.0 * w + s) * detail::curv_term_g(f) -
             0.5 * detail::curv_term_pi5(f);
  }
  throw shape_mismatch("curvature_closed_form: theta out of range");
}

inline tensor pi_outer_pi(const chart_frame& f) {
  const int n = f.dim();
  tensor t(n, {slot::lower, slot::lower});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t(i, j) = f.pi(i) * f.pi(j);
  return t;
}

inline tensor ricci_closed_form(int theta, const tensor& ricg, const chart_frame& f) {
  const double w = f.omega, s = f.pi_P, n1 = f.dim() - 1;
  const tensor& g = f.mj.m.g;
  switch (theta) {
    case 0: return ricg - (n1 / 2.0) * (3.0 * w + s) * g - (n1 / 4.0) * pi_outer_pi(f);
    case 1: return ricg - n1 * (2.0 * w + s) * g;
    case 2:
    case 3: return ricg - n1 * w * g;
    case 4: return ricg - n1 * w * g - n1 * pi_outer_pi(f);
    case 5: return ricg - (n1 / 2.0) * (3.0 * w + s) * g - (n1 / 2.0) * pi_outer_pi(f);
  }
  throw shape_mismatch("ricci_closed_form: theta out of range");
}

inline double scalar_closed_form(int theta, double rg, const chart_frame& f) {
  const double w = f.omega, s = f.pi_P;
  const double n = f.dim(), n1 = n - 1.0;
  switch (theta) {
    case 0: return rg - (3.0 * n * n1 / 2.0) * w - (n1 * (2.0 * n + 1.0) / 4.0) * s;
    case 1: return rg - 2.0 * n * n1 * w - n * n1 * s;
    case 2:
    case 3: return rg - n * n1 * w;
    case 4: return rg - n * n1 * w - n1 * s;
    case 5: return rg - (3.0 * n * n1 / 2.0) * w - ((n * n - 1.0) / 2.0) * s;
  }
  throw shape_mismatch("scalar_closed_form: theta out of range");
}

// --- specialized forms on a generated GRW chart (omega = 1, pi(P) = -1) ------
//
// The coefficients below are the literal specializations, not the generic
// forms re-evaluated, so these checks also pin omega and pi(P) themselves.
// theta = 1 stands for the whole beta-family: the three curvatures of kinds
// 1, 2, 3 coincide on such charts.

inline tensor grw_curvature_closed_form(int theta, const tensor& rg13, const chart_frame& f) {
  switch (theta) {
    case 0: return rg13 + detail::curv_term_g(f) - 0.25 * detail::curv_term_pi(f);
    case 1: return rg13 + detail::curv_term_g(f);
    case 4: return rg13 + detail::curv_term_g(f) - detail::curv_term_pi(f);
    case 5: return rg13 + detail::curv_term_g(f) - 0.5 * detail::curv_term_pi5(f);
  }
  throw shape_mismatch("grw_curvature_closed_form: theta must be 0, 1, 4 or 5");
}

inline tensor grw_ricci_closed_form(int theta, const tensor& ricg, const chart_frame& f) {
  const double n1 = f.dim() - 1;
  const tensor& g = f.mj.m.g;
  const tensor Pi = pi_outer_pi(f);
  switch (theta) {
    case 0: return ricg - (n1 / 4.0) * (4.0 * g + Pi);
    case 1: return ricg - n1 * g;
    case 4: return ricg - n1 * (g + Pi);
    case 5: return ricg - (n1 / 2.0) * (2.0 * g + Pi);
  }
  throw shape_mismatch("grw_ricci_closed_form: theta must be 0, 1, 4 or 5");
}

// --- Weyl --------------------------------------------------------------------

// Kulkarni-Nomizu product of symmetric (0,2) tensors in this library's (0,4)
// slot order (X, Y, Z, W):
//   (A ^ B)(X,Y,Z,W) = A(Y,Z)B(X,W) + A(X,W)B(Y,Z) - A(X,Z)B(Y,W) - A(Y,W)B(X,Z)
// so that a constant-curvature R04 equals (K/2) g ^ g.
inline tensor kulkarni_nomizu(const tensor& A, const tensor& B) {
  const int n = A.dim();
  if (B.dim() != n) throw shape_mismatch("kulkarni_nomizu: dimensions differ");
  tensor out(n, {slot::lower, slot::lower, slot::lower, slot::lower});
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int w = 0; w < n; ++w)
          out(x, y, z, w) = A(y, z) * B(x, w) + A(x, w) * B(y, z) - A(x, z) * B(y, w) -
                            A(y, w) * B(x, z);
  return out;
}

// Weyl conformal tensor (0,4); the unique totally trace-free part of R04:
//   C = R04 - (Ric ^ g)/(n-2) + r (g ^ g) / (2(n-1)(n-2)).
inline tensor weyl_tensor(const tensor& r04, const tensor& ric, double r_scalar,
                          const metric_at_point& m) {
  const int n = r04.dim();
  if (n < 4)
    throw precondition_error("Weyl tensor requires dimension >= 4");
  const double c1 = 1.0 / (n - 2.0);
  const double c2 = r_scalar / (2.0 * (n - 1.0) * (n - 2.0));
  return r04 - c1 * kulkarni_nomizu(ric, m.g) + c2 * kulkarni_nomizu(m.g, m.g);
}

// --- the per-point bundle -----------------------------------------------------

struct curvature_bundle {
  chart_frame frame;
  connection_jet lc, c0, c1, c2;

  tensor rg13, rg04, ricg;
  double rg = 0.0;

  std::array<tensor, 6> r13;   // direct computations, theta = 0..5
  std::array<tensor, 6> r04;
  std::array<tensor, 6> ric;
  std::array<double, 6> scal{};

  tensor t1;  // torsion of nabla^1, (1,2)

  std::optional<tensor> weyl04;  // only for n >= 4
  std::optional<tensor> weyl13;

  int dim() const { return frame.dim(); }
};

inline curvature_bundle build_bundle(const manifold_instance& m, const std::vector<double>& point) {
  curvature_bundle b;
  b.frame = build_chart_frame(m, point);
  b.lc = levi_civita(b.frame.mj);
  b.c0 = family_connection(b.frame, 0, b.lc);
  b.c1 = family_connection(b.frame, 1, b.lc);
  b.c2 = family_connection(b.frame, 2, b.lc);

  b.rg13 = curvature_from_connection(b.lc);
  b.rg04 = riem_to_r04(b.rg13, b.frame.mj.m);
  b.ricg = ricci_from_riem(b.rg13);
  b.rg = scalar_from_ricci(b.ricg, b.frame.mj.m);

  b.r13[0] = curvature_from_connection(b.c0);
  b.r13[1] = curvature_from_connection(b.c1);
  b.r13[2] = curvature_from_connection(b.c2);
  b.r13[3] = curvature_mixed(b.c1, b.c2, 3);
  b.r13[4] = curvature_mixed(b.c1, b.c2, 4);
  b.r13[5] = curvature_mixed(b.c1, b.c2, 5);
  for (int t = 0; t < 6; ++t) {
    b.r04[static_cast<std::size_t>(t)] = riem_to_r04(b.r13[static_cast<std::size_t>(t)], b.frame.mj.m);
    b.ric[static_cast<std::size_t>(t)] = ricci_from_riem(b.r13[static_cast<std::size_t>(t)]);
    b.scal[static_cast<std::size_t>(t)] =
        scalar_from_ricci(b.ric[static_cast<std::size_t>(t)], b.frame.mj.m);
  }

  b.t1 = torsion(b.c1);

  if (b.dim() >= 4) {
    b.weyl04 = weyl_tensor(b.rg04, b.ricg, b.rg, b.frame.mj.m);
    b.weyl13 = r04_to_r13(*b.weyl04, b.frame.mj.m);
  }
  return b;
}

}  // namespace ssmc
