#pragma once

// Second-order forward-mode jets.
//
// A jet2 carries a value, its gradient with respect to the n chart
// coordinates, and the full symmetric Hessian.  Propagating jets through the
// metric expressions gives exact first and second partials of g_ij, which is
// all the curvature layer ever needs: Christoffel symbols consume dg, their
// coordinate derivatives consume d2g, and nothing downstream differentiates
// again.
//
// Conventions:
//   * grad[i]      = d f / dx^i
//   * hess(i, j)   = d^2 f / dx^i dx^j   (kept symmetric by construction)
//   * dimensions are small (2..8); storage is dense std::vector<double>.

#include <cmath>
#include <functional>
#include <vector>

#include "ssmc/errors.hpp"

namespace ssmc {

class jet2 {
 public:
  explicit jet2(int dim) : val_(0.0), grad_(check_dim(dim), 0.0), hess_(dim * dim, 0.0) {}

  static jet2 constant(int dim, double v) {
    jet2 j(dim);
    j.val_ = require_finite(v);
    return j;
  }

  // The coordinate function x^i evaluated at v: unit gradient slot, zero Hessian.
  static jet2 coordinate(int dim, int i, double v) {
    jet2 j = constant(dim, v);
    if (i < 0 || i >= dim) throw dimension_mismatch(static_cast<std::size_t>(i), dim);
    j.grad_[i] = 1.0;
    return j;
  }

  int dim() const { return static_cast<int>(grad_.size()); }
  double value() const { return val_; }
  double grad(int i) const { return grad_[i]; }
  double hess(int i, int j) const { return hess_[i * dim() + j]; }

  const std::vector<double>& gradient() const { return grad_; }
  const std::vector<double>& hessian() const { return hess_; }

  // Raw mutators for the arithmetic layer below; keep the Hessian symmetric.
  double& value() { return val_; }
  double& grad(int i) { return grad_[i]; }
  void set_hess(int i, int j, double v) {
    hess_[i * dim() + j] = v;
    hess_[j * dim() + i] = v;
  }

  friend jet2 operator+(const jet2& a, const jet2& b) {
    same_dim(a, b);
    jet2 r(a.dim());
    r.val_ = a.val_ + b.val_;
    for (std::size_t i = 0; i < a.grad_.size(); ++i) r.grad_[i] = a.grad_[i] + b.grad_[i];
    for (std::size_t i = 0; i < a.hess_.size(); ++i) r.hess_[i] = a.hess_[i] + b.hess_[i];
    return r.checked();
  }

  friend jet2 operator-(const jet2& a, const jet2& b) {
    same_dim(a, b);
    jet2 r(a.dim());
    r.val_ = a.val_ - b.val_;
    for (std::size_t i = 0; i < a.grad_.size(); ++i) r.grad_[i] = a.grad_[i] - b.grad_[i];
    for (std::size_t i = 0; i < a.hess_.size(); ++i) r.hess_[i] = a.hess_[i] - b.hess_[i];
    return r.checked();
  }

  friend jet2 operator-(const jet2& a) {
    jet2 r(a.dim());
    r.val_ = -a.val_;
    for (std::size_t i = 0; i < a.grad_.size(); ++i) r.grad_[i] = -a.grad_[i];
    for (std::size_t i = 0; i < a.hess_.size(); ++i) r.hess_[i] = -a.hess_[i];
    return r;
  }

  friend jet2 operator*(const jet2& a, const jet2& b) {
    same_dim(a, b);
    const int n = a.dim();
    jet2 r(n);
    r.val_ = a.val_ * b.val_;
    for (int i = 0; i < n; ++i) r.grad_[i] = a.grad_[i] * b.val_ + b.grad_[i] * a.val_;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) {
        const double h = a.hess(i, j) * b.val_ + b.hess(i, j) * a.val_ +
                         a.grad_[i] * b.grad_[j] + a.grad_[j] * b.grad_[i];
        r.set_hess(i, j, h);
      }
    return r.checked();
  }

  friend jet2 operator/(const jet2& a, const jet2& b) {
    if (std::fabs(b.val_) < 1e-300) throw division_by_zero();
    return a * reciprocal(b);
  }

  friend jet2 operator+(const jet2& a, double c) { return a + constant(a.dim(), c); }
  friend jet2 operator+(double c, const jet2& a) { return a + c; }
  friend jet2 operator-(const jet2& a, double c) { return a - constant(a.dim(), c); }
  friend jet2 operator-(double c, const jet2& a) { return constant(a.dim(), c) - a; }
  friend jet2 operator*(const jet2& a, double c) { return a * constant(a.dim(), c); }
  friend jet2 operator*(double c, const jet2& a) { return a * c; }
  friend jet2 operator/(const jet2& a, double c) { return a / constant(a.dim(), c); }
  friend jet2 operator/(double c, const jet2& a) { return constant(a.dim(), c) / a; }

  // f(a) for a scalar function with value f, first derivative fp and second
  // derivative fpp at a.value():  grad = fp a', hess = fpp a' a'^T + fp a''.
  static jet2 chain(const jet2& a, double f, double fp, double fpp) {
    const int n = a.dim();
    jet2 r(n);
    r.val_ = f;
    for (int i = 0; i < n; ++i) r.grad_[i] = fp * a.grad_[i];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j)
        r.set_hess(i, j, fpp * a.grad_[i] * a.grad_[j] + fp * a.hess(i, j));
    return r.checked();
  }

 private:
  static int check_dim(int dim) {
    if (dim < 1) throw dimension_mismatch(static_cast<std::size_t>(dim), 1);
    return dim;
  }
  static double require_finite(double v) {
    if (!std::isfinite(v)) throw eval_domain_error("non-finite value");
    return v;
  }
  static void same_dim(const jet2& a, const jet2& b) {
    if (a.dim() != b.dim()) throw dimension_mismatch(a.dim(), b.dim());
  }
  static jet2 reciprocal(const jet2& b) {
    const double v = b.val_;
    return chain(b, 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v));
  }
  jet2& checked() {
    if (!std::isfinite(val_)) throw eval_domain_error("non-finite value");
    for (double g : grad_)
      if (!std::isfinite(g)) throw eval_domain_error("non-finite gradient");
    for (double h : hess_)
      if (!std::isfinite(h)) throw eval_domain_error("non-finite hessian");
    return *this;
  }

  double val_;
  std::vector<double> grad_;
  std::vector<double> hess_;  // row-major dim x dim, symmetric
};

inline jet2 exp(const jet2& a) {
  const double e = std::exp(a.value());
  return jet2::chain(a, e, e, e);
}

inline jet2 ln(const jet2& a) {
  const double v = a.value();
  if (v <= 0.0) throw eval_domain_error("ln of non-positive value");
  return jet2::chain(a, std::log(v), 1.0 / v, -1.0 / (v * v));
}

inline jet2 sin(const jet2& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  return jet2::chain(a, s, c, -s);
}

inline jet2 cos(const jet2& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  return jet2::chain(a, c, -s, -c);
}

inline jet2 tan(const jet2& a) {
  const double c = std::cos(a.value());
  if (std::fabs(c) < 1e-12) throw eval_domain_error("tan evaluated at a pole");
  const double t = std::tan(a.value()), sec2 = 1.0 / (c * c);
  return jet2::chain(a, t, sec2, 2.0 * t * sec2);
}

inline jet2 sinh(const jet2& a) {
  const double s = std::sinh(a.value()), c = std::cosh(a.value());
  return jet2::chain(a, s, c, s);
}

inline jet2 cosh(const jet2& a) {
  const double s = std::sinh(a.value()), c = std::cosh(a.value());
  return jet2::chain(a, c, s, c);
}

inline jet2 tanh(const jet2& a) {
  const double t = std::tanh(a.value()), sech2 = 1.0 - t * t;
  return jet2::chain(a, t, sech2, -2.0 * t * sech2);
}

inline jet2 sqrt(const jet2& a) {
  const double v = a.value();
  if (v <= 0.0) throw eval_domain_error("sqrt of non-positive value");
  const double s = std::sqrt(v);
  return jet2::chain(a, s, 0.5 / s, -0.25 / (s * v));
}

// a^c for a constant exponent, valid also for negative bases with integer c.
inline jet2 pow(const jet2& a, double c) {
  const double v = a.value();
  const double f = std::pow(v, c);
  const double fp = c * std::pow(v, c - 1.0);
  const double fpp = c * (c - 1.0) * std::pow(v, c - 2.0);
  if (!std::isfinite(f) || !std::isfinite(fp) || !std::isfinite(fpp))
    throw eval_domain_error("pow outside its domain");
  return jet2::chain(a, f, fp, fpp);
}

// General a^b rewritten as exp(b ln a); requires a > 0.
inline jet2 pow(const jet2& a, const jet2& b) { return exp(b * ln(a)); }

// Central finite differences, the independent cross-check for the jet layer.
// Gradient and diagonal use the classic 2- and 3-point stencils, off-diagonal
// Hessian entries the 4-point cross stencil; 2n^2 + 1 evaluations total.
struct fd_jet {
  double value = 0.0;
  std::vector<double> grad;
  std::vector<double> hess;  // row-major n x n
  double hess_at(int n, int i, int j) const { return hess[i * n + j]; }
};

inline fd_jet finite_difference_oracle(const std::function<double(const std::vector<double>&)>& f,
                                       const std::vector<double>& point, double h) {
  const int n = static_cast<int>(point.size());
  fd_jet r;
  r.value = f(point);
  r.grad.assign(n, 0.0);
  r.hess.assign(n * n, 0.0);
  std::vector<double> p = point;
  for (int i = 0; i < n; ++i) {
    p[i] = point[i] + h;
    const double fp = f(p);
    p[i] = point[i] - h;
    const double fm = f(p);
    p[i] = point[i];
    r.grad[i] = (fp - fm) / (2.0 * h);
    r.hess[i * n + i] = (fp - 2.0 * r.value + fm) / (h * h);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      p[i] = point[i] + h;
      p[j] = point[j] + h;
      const double fpp = f(p);
      p[j] = point[j] - h;
      const double fpm = f(p);
      p[i] = point[i] - h;
      const double fmm = f(p);
      p[j] = point[j] + h;
      const double fmp = f(p);
      p[i] = point[i];
      p[j] = point[j];
      const double v = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
      r.hess[i * n + j] = v;
      r.hess[j * n + i] = v;
    }
  return r;
}

}  // namespace ssmc
