#pragma once

// Dense pointwise tensors with explicit slot variance.
//
// A tensor here is a value at one chart point: a dimension n, an ordered list
// of slots (each upper or lower), and n^rank components in row-major order.
// Charts are small (n <= 8, rank <= 6), so everything is plain loops over
// dense storage — no sparsity, no expression templates.
//
// Curvature layout conventions used throughout the library:
//   R13(k, l, i, j)  = k-th component of R(e_i, e_j) e_l
//   R04(x, y, z, w)  = g(R(e_x, e_y) e_z, e_w)
//   Ric(y, z)        = trace of X -> R(X, e_y) e_z = sum_k R13(k, z, k, y)

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "ssmc/errors.hpp"
#include "ssmc/linalg.hpp"

namespace ssmc {

enum class slot : unsigned char { upper, lower };

class tensor {
 public:
  tensor() : dim_(0) {}

  tensor(int dim, std::vector<slot> slots) : dim_(dim), slots_(std::move(slots)) {
    if (dim < 1) throw shape_mismatch("tensor dimension must be positive");
    std::size_t size = 1;
    for (std::size_t r = 0; r < slots_.size(); ++r) size *= static_cast<std::size_t>(dim_);
    data_.assign(size, 0.0);
  }

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(slots_.size()); }
  const std::vector<slot>& slots() const { return slots_; }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  template <class... I>
  double& operator()(I... idx) {
    return data_[offset(idx...)];
  }
  template <class... I>
  double operator()(I... idx) const {
    return data_[offset(idx...)];
  }

  double at(std::span<const int> idx) const { return data_[offset_span(idx)]; }
  double& at(std::span<const int> idx) { return data_[offset_span(idx)]; }

  tensor& operator+=(const tensor& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  tensor& operator-=(const tensor& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  tensor& operator*=(double c) {
    for (double& v : data_) v *= c;
    return *this;
  }

  friend tensor operator+(tensor a, const tensor& b) { return a += b; }
  friend tensor operator-(tensor a, const tensor& b) { return a -= b; }
  friend tensor operator*(tensor a, double c) { return a *= c; }
  friend tensor operator*(double c, tensor a) { return a *= c; }
  friend tensor operator-(tensor a) { return a *= -1.0; }

  double frobenius() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::fabs(v));
    return m;
  }

  void require_finite() const {
    for (double v : data_)
      if (!std::isfinite(v)) throw eval_domain_error("non-finite tensor component");
  }

  void require_same_shape(const tensor& o) const {
    if (dim_ != o.dim_ || slots_ != o.slots_)
      throw shape_mismatch("tensor shapes differ");
  }

 private:
  template <class... I>
  std::size_t offset(I... idx) const {
    if (sizeof...(I) != slots_.size()) throw shape_mismatch("index count != tensor rank");
    std::size_t off = 0;
    ((off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(idx)), ...);
    return off;
  }
  std::size_t offset_span(std::span<const int> idx) const {
    if (idx.size() != slots_.size()) throw shape_mismatch("index count != tensor rank");
    std::size_t off = 0;
    for (int v : idx) off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(v);
    return off;
  }

  int dim_;
  std::vector<slot> slots_;
  std::vector<double> data_;
};

// Iterate all multi-indices of a given rank; returns false after the last one.
inline bool next_index(std::vector<int>& idx, int dim) {
  for (int p = static_cast<int>(idx.size()) - 1; p >= 0; --p) {
    if (++idx[static_cast<std::size_t>(p)] < dim) return true;
    idx[static_cast<std::size_t>(p)] = 0;
  }
  return false;
}

// Metric data at one point, as consumed by slot raising/lowering.
struct metric_at_point {
  tensor g;       // (0,2)
  tensor g_inv;   // (2,0)
  double det = 0.0;
  std::vector<int> signature;  // eigenvalue signs, ascending (-1 first)

  int negative_count() const {
    int c = 0;
    for (int s : signature) c += (s < 0) ? 1 : 0;
    return c;
  }
  bool lorentzian() const { return negative_count() == 1; }
};

inline metric_at_point make_metric_at_point(int n, const std::vector<double>& g_rowmajor) {
  metric_at_point m;
  m.g = tensor(n, {slot::lower, slot::lower});
  m.g_inv = tensor(n, {slot::upper, slot::upper});
  m.g.data() = g_rowmajor;
  std::vector<double> inv;
  m.det = lu_invert(n, g_rowmajor, inv);
  m.g_inv.data() = inv;
  for (double eig : symmetric_eigenvalues(n, g_rowmajor)) {
    if (std::fabs(eig) < 1e-10) throw singular_metric("metric eigenvalue below 1e-10");
    m.signature.push_back(eig < 0 ? -1 : 1);
  }
  m.g.require_finite();
  m.g_inv.require_finite();
  return m;
}

// Contract one upper slot against one lower slot.
inline tensor contract(const tensor& t, int upper_slot, int lower_slot) {
  const int r = t.rank();
  if (upper_slot < 0 || upper_slot >= r || lower_slot < 0 || lower_slot >= r ||
      upper_slot == lower_slot)
    throw shape_mismatch("contract: slot indices out of range");
  if (t.slots()[static_cast<std::size_t>(upper_slot)] != slot::upper ||
      t.slots()[static_cast<std::size_t>(lower_slot)] != slot::lower)
    throw slot_type_mismatch("contract: need one upper and one lower slot");

  std::vector<slot> out_slots;
  for (int s = 0; s < r; ++s)
    if (s != upper_slot && s != lower_slot) out_slots.push_back(t.slots()[static_cast<std::size_t>(s)]);
  tensor out(t.dim(), out_slots);

  std::vector<int> oi(out_slots.size(), 0), ti(static_cast<std::size_t>(r), 0);
  if (out_slots.empty()) {
    double s = 0.0;
    for (int k = 0; k < t.dim(); ++k) {
      ti[static_cast<std::size_t>(upper_slot)] = k;
      ti[static_cast<std::size_t>(lower_slot)] = k;
      s += t.at(ti);
    }
    out.data()[0] = s;
    return out;
  }
  do {
    int p = 0;
    for (int s = 0; s < r; ++s)
      if (s != upper_slot && s != lower_slot) ti[static_cast<std::size_t>(s)] = oi[static_cast<std::size_t>(p++)];
    double sum = 0.0;
    for (int k = 0; k < t.dim(); ++k) {
      ti[static_cast<std::size_t>(upper_slot)] = k;
      ti[static_cast<std::size_t>(lower_slot)] = k;
      sum += t.at(ti);
    }
    out.at(oi) = sum;
  } while (next_index(oi, t.dim()));
  return out;
}

// Replace slot `pos` by its metric dual (upper <-> lower).
inline tensor raise_slot(const tensor& t, int pos, const metric_at_point& m) {
  if (pos < 0 || pos >= t.rank()) throw shape_mismatch("raise_slot: position out of range");
  if (t.slots()[static_cast<std::size_t>(pos)] != slot::lower)
    throw slot_type_mismatch("raise_slot: slot is already upper");
  std::vector<slot> out_slots = t.slots();
  out_slots[static_cast<std::size_t>(pos)] = slot::upper;
  tensor out(t.dim(), out_slots);
  std::vector<int> oi(static_cast<std::size_t>(t.rank()), 0), ti = oi;
  do {
    ti = oi;
    double sum = 0.0;
    for (int q = 0; q < t.dim(); ++q) {
      ti[static_cast<std::size_t>(pos)] = q;
      sum += m.g_inv(oi[static_cast<std::size_t>(pos)], q) * t.at(ti);
    }
    out.at(oi) = sum;
  } while (next_index(oi, t.dim()));
  return out;
}

inline tensor lower_slot(const tensor& t, int pos, const metric_at_point& m) {
  if (pos < 0 || pos >= t.rank()) throw shape_mismatch("lower_slot: position out of range");
  if (t.slots()[static_cast<std::size_t>(pos)] != slot::upper)
    throw slot_type_mismatch("lower_slot: slot is already lower");
  std::vector<slot> out_slots = t.slots();
  out_slots[static_cast<std::size_t>(pos)] = slot::lower;
  tensor out(t.dim(), out_slots);
  std::vector<int> oi(static_cast<std::size_t>(t.rank()), 0), ti = oi;
  do {
    ti = oi;
    double sum = 0.0;
    for (int q = 0; q < t.dim(); ++q) {
      ti[static_cast<std::size_t>(pos)] = q;
      sum += m.g(oi[static_cast<std::size_t>(pos)], q) * t.at(ti);
    }
    out.at(oi) = sum;
  } while (next_index(oi, t.dim()));
  return out;
}

// Slot permutation: input slot q lands at output position perm[q].
inline tensor permute(const tensor& t, const std::vector<int>& perm) {
  const int r = t.rank();
  if (static_cast<int>(perm.size()) != r) throw shape_mismatch("permute: wrong permutation size");
  std::vector<bool> seen(static_cast<std::size_t>(r), false);
  for (int v : perm) {
    if (v < 0 || v >= r || seen[static_cast<std::size_t>(v)])
      throw shape_mismatch("permute: not a permutation");
    seen[static_cast<std::size_t>(v)] = true;
  }
  std::vector<slot> out_slots(static_cast<std::size_t>(r));
  for (int q = 0; q < r; ++q)
    out_slots[static_cast<std::size_t>(perm[static_cast<std::size_t>(q)])] =
        t.slots()[static_cast<std::size_t>(q)];
  tensor out(t.dim(), out_slots);
  std::vector<int> ti(static_cast<std::size_t>(r), 0), oi(static_cast<std::size_t>(r), 0);
  if (r == 0) {
    out.data() = t.data();
    return out;
  }
  do {
    for (int q = 0; q < r; ++q)
      oi[static_cast<std::size_t>(perm[static_cast<std::size_t>(q)])] = ti[static_cast<std::size_t>(q)];
    out.at(oi) = t.at(ti);
  } while (next_index(ti, t.dim()));
  return out;
}

inline tensor outer(const tensor& a, const tensor& b) {
  if (a.dim() != b.dim()) throw shape_mismatch("outer: dimensions differ");
  std::vector<slot> out_slots = a.slots();
  out_slots.insert(out_slots.end(), b.slots().begin(), b.slots().end());
  tensor out(a.dim(), out_slots);
  std::size_t bn = b.data().size();
  for (std::size_t i = 0; i < a.data().size(); ++i)
    for (std::size_t j = 0; j < bn; ++j) out.data()[i * bn + j] = a.data()[i] * b.data()[j];
  return out;
}

// Endomorphism (X wedge_A Y): Z -> A(Y,Z) X - A(X,Z) Y for symmetric (0,2) A
// and contravariant X, Y.  Output is (1,1): out(k, m) applied to Z^m.
inline tensor wedge_endomorphism(const tensor& A, const tensor& X, const tensor& Y) {
  const int n = A.dim();
  if (A.rank() != 2 || A.slots()[0] != slot::lower || A.slots()[1] != slot::lower)
    throw slot_type_mismatch("wedge_endomorphism: A must be (0,2)");
  if (X.rank() != 1 || X.slots()[0] != slot::upper || Y.rank() != 1 || Y.slots()[0] != slot::upper)
    throw slot_type_mismatch("wedge_endomorphism: X, Y must be vectors");
  tensor out(n, {slot::upper, slot::lower});
  for (int m = 0; m < n; ++m) {
    double ay = 0.0, ax = 0.0;
    for (int q = 0; q < n; ++q) {
      ay += A(q, m) * Y(q);
      ax += A(q, m) * X(q);
    }
    for (int k = 0; k < n; ++k) out(k, m) = ay * X(k) - ax * Y(k);
  }
  return out;
}

// Tachibana operator Q(A, B): the covariant (0, k+2) field
//   Q(A,B)(X_1..X_k; X, Y) = - sum_i B(X_1, .., (X wedge_A Y) X_i, .., X_k),
// with the (X, Y) pair appended as the last two lower slots.
inline tensor tachibana(const tensor& A, const tensor& B) {
  const int n = A.dim();
  if (n != B.dim()) throw shape_mismatch("tachibana: dimensions differ");
  if (A.rank() != 2 || A.slots()[0] != slot::lower || A.slots()[1] != slot::lower)
    throw slot_type_mismatch("tachibana: A must be (0,2)");
  for (slot s : B.slots())
    if (s != slot::lower) throw slot_type_mismatch("tachibana: B must be covariant");
  const int k = B.rank();

  std::vector<slot> out_slots(static_cast<std::size_t>(k + 2), slot::lower);
  tensor out(n, out_slots);
  std::vector<int> oi(static_cast<std::size_t>(k + 2), 0);
  std::vector<int> bi(static_cast<std::size_t>(k), 0);
  do {
    const int x = oi[static_cast<std::size_t>(k)];
    const int y = oi[static_cast<std::size_t>(k + 1)];
    for (int s = 0; s < k; ++s) bi[static_cast<std::size_t>(s)] = oi[static_cast<std::size_t>(s)];
    double acc = 0.0;
    for (int i = 0; i < k; ++i) {
      const int si = bi[static_cast<std::size_t>(i)];
      // ((X wedge_A Y) e_si)^m = A(y, si) delta^m_x - A(x, si) delta^m_y
      const int keep = si;
      bi[static_cast<std::size_t>(i)] = x;
      acc -= A(y, keep) * B.at(bi);
      bi[static_cast<std::size_t>(i)] = y;
      acc += A(x, keep) * B.at(bi);
      bi[static_cast<std::size_t>(i)] = keep;
    }
    out.at(oi) = acc;
  } while (next_index(oi, n));
  return out;
}

// Curvature acting as a derivation on a covariant tensor:
//   (R . B)(X_1..X_k; X, Y) = - sum_i B(X_1, .., R(X,Y) X_i, .., X_k),
// with (X, Y) appended as the last two lower slots.  R13 uses the library's
// (k, l, i, j) layout, so (R(e_x, e_y) e_s)^m = R13(m, s, x, y).
inline tensor curvature_action(const tensor& R13, const tensor& B) {
  const int n = R13.dim();
  if (n != B.dim()) throw shape_mismatch("curvature_action: dimensions differ");
  if (R13.rank() != 4 || R13.slots()[0] != slot::upper)
    throw slot_type_mismatch("curvature_action: R must be (1,3)");
  for (slot s : B.slots())
    if (s != slot::lower) throw slot_type_mismatch("curvature_action: B must be covariant");
  const int k = B.rank();

  std::vector<slot> out_slots(static_cast<std::size_t>(k + 2), slot::lower);
  tensor out(n, out_slots);
  std::vector<int> oi(static_cast<std::size_t>(k + 2), 0);
  std::vector<int> bi(static_cast<std::size_t>(k), 0);
  do {
    const int x = oi[static_cast<std::size_t>(k)];
    const int y = oi[static_cast<std::size_t>(k + 1)];
    for (int s = 0; s < k; ++s) bi[static_cast<std::size_t>(s)] = oi[static_cast<std::size_t>(s)];
    double acc = 0.0;
    for (int i = 0; i < k; ++i) {
      const int si = bi[static_cast<std::size_t>(i)];
      for (int m = 0; m < n; ++m) {
        const double rm = R13(m, si, x, y);
        if (rm == 0.0) continue;
        bi[static_cast<std::size_t>(i)] = m;
        acc -= rm * B.at(bi);
      }
      bi[static_cast<std::size_t>(i)] = si;
    }
    out.at(oi) = acc;
  } while (next_index(oi, n));
  return out;
}

}  // namespace ssmc
