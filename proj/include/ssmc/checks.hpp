#pragma once

// Check records and the small helpers all verification suites share.
//
// Every check is one scalar residual compared against a tolerance under one of
// two modes: expect_zero passes when residual < tolerance, expect_nonzero
// passes when residual > tolerance (used for genuine non-degeneracy claims).
// Residuals are normalized as ||lhs - rhs|| / (1 + ||rhs||) so that checks on
// large-curvature charts and near-flat charts run under a single tolerance.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "ssmc/curvature.hpp"
#include "ssmc/fluid.hpp"
#include "ssmc/rng.hpp"

namespace ssmc {

enum class check_mode { expect_zero, expect_nonzero };

struct check_result {
  std::string id;         // stable machine id, e.g. "eq06.closed_vs_direct"
  std::string paper_ref;  // human formula the check encodes
  std::vector<double> point;
  double residual = 0.0;
  double tolerance = 0.0;
  check_mode mode = check_mode::expect_zero;
  bool pass = false;
};

struct suite_report {
  std::string name;
  bool ran = false;            // false => skipped (prerequisite flag absent)
  std::string skip_reason;
  std::vector<check_result> checks;
  std::vector<fluid_state> fluid_states;  // filled by the efe suite only
};

inline check_result make_check(std::string id, std::string ref,
                               const std::vector<double>& point, double residual,
                               double tolerance, check_mode mode) {
  check_result c;
  c.id = std::move(id);
  c.paper_ref = std::move(ref);
  c.point = point;
  c.residual = residual;
  c.tolerance = tolerance;
  c.mode = mode;
  c.pass = (mode == check_mode::expect_zero) ? (residual < tolerance)
                                             : (residual > tolerance);
  return c;
}

// ||a - b|| / (1 + ||b||) for same-shape tensors.
inline double rel_residual(const tensor& a, const tensor& b) {
  tensor d = a;
  d -= b;
  return d.frobenius() / (1.0 + b.frobenius());
}

inline double rel_residual(double a, double b) {
  return std::fabs(a - b) / (1.0 + std::fabs(b));
}

// ||a|| / (1 + scale): residual of an identity whose right side is zero.
inline double zero_residual(const tensor& a, double scale) {
  return a.frobenius() / (1.0 + scale);
}

// ---------------------------------------------------------------------------
// Vector-argument helpers for pointwise identities R(X,Y)Z = ...

// W^k = R(X,Y)Z with the (1,3) layout r13(k, l, i, j) = (R(e_i,e_j) e_l)^k.
inline tensor apply_r13(const tensor& r13, const tensor& X, const tensor& Y,
                        const tensor& Z) {
  const int n = X.dim();
  tensor out(n, {slot::upper});
  for (int k = 0; k < n; ++k) {
    double acc = 0.0;
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc += r13(k, l, i, j) * Z(l) * X(i) * Y(j);
    out(k) = acc;
  }
  return out;
}

// W^k = T(X,Y) with torsion layout t(k, i, j).
inline tensor apply_torsion(const tensor& t, const tensor& X, const tensor& Y) {
  const int n = X.dim();
  tensor out(n, {slot::upper});
  for (int k = 0; k < n; ++k) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) acc += t(k, i, j) * X(i) * Y(j);
    out(k) = acc;
  }
  return out;
}

// pi(W) for an upper vector W.
inline double pair_pi(const chart_frame& f, const tensor& W) {
  double acc = 0.0;
  for (int k = 0; k < f.dim(); ++k) acc += f.pi(k) * W(k);
  return acc;
}

// g(X, Y) for two upper vectors.
inline double metric_inner(const metric_at_point& m, const tensor& X, const tensor& Y) {
  double acc = 0.0;
  const int n = X.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) acc += m.g(i, j) * X(i) * Y(j);
  return acc;
}

// Covector z -> Ric(V, z) contracted on the first Ricci slot.
inline tensor ricci_contract_first(const tensor& ric, const tensor& V) {
  const int n = V.dim();
  tensor out(n, {slot::lower});
  for (int z = 0; z < n; ++z) {
    double acc = 0.0;
    for (int y = 0; y < n; ++y) acc += ric(y, z) * V(y);
    out(z) = acc;
  }
  return out;
}

// Vector (nabla^g_Y P)^k from the packed derivative (k, i) = nabla_i P^k.
inline tensor apply_nabla_P(const tensor& nablaP, const tensor& Y) {
  const int n = Y.dim();
  tensor out(n, {slot::upper});
  for (int k = 0; k < n; ++k) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += nablaP(k, i) * Y(i);
    out(k) = acc;
  }
  return out;
}

struct vector_triple {
  tensor X, Y, Z;
};

// Deterministic bank of test vectors for pointwise identity checks.
inline std::vector<vector_triple> make_triples(int n, std::uint64_t seed,
                                               int count = 8) {
  rng r(seed);
  std::vector<vector_triple> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int c = 0; c < count; ++c) {
    vector_triple t{tensor(n, {slot::upper}), tensor(n, {slot::upper}),
                    tensor(n, {slot::upper})};
    for (int i = 0; i < n; ++i) t.X(i) = r.normal();
    for (int i = 0; i < n; ++i) t.Y(i) = r.normal();
    for (int i = 0; i < n; ++i) t.Z(i) = r.normal();
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace ssmc
