#pragma once

// Exact dense linear algebra over a FieldCtx. Pivoting is deterministic:
// the first nonzero entry in column order.

#include <cstddef>
#include <span>
#include <vector>

#include "hypfree/field.hpp"

namespace hypfree {

using Vec = std::vector<Elem>;
using Mat = std::vector<Vec>;

/// Reduced row echelon form in place; drops zero rows and returns pivot columns.
inline std::vector<std::size_t> rref(const FieldCtx& f, Mat& rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    if (rows[r][c] != 1) f.scale(rows[r], f.inv(rows[r][c]));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r && rows[i][c] != 0) f.axpy(rows[i], f.neg(rows[i][c]), rows[r]);
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

inline std::size_t rank(const FieldCtx& f, Mat rows, std::size_t ncols) { return rref(f, rows, ncols).size(); }

/// Kernel basis of the matrix with the given rows (vectors v with A v = 0),
/// one vector per free column in increasing column order.
inline Mat kernel_basis(const FieldCtx& f, Mat rows, std::size_t ncols) {
  const auto pivots = rref(f, rows, ncols);
  std::vector<int> pivot_row(ncols, -1);
  for (std::size_t i = 0; i < pivots.size(); ++i) pivot_row[pivots[i]] = static_cast<int>(i);
  Mat out;
  for (std::size_t c = 0; c < ncols; ++c) {
    if (pivot_row[c] >= 0) continue;
    Vec v(ncols, 0);
    v[c] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      if (rows[i][c] != 0) v[pivots[i]] = f.neg(rows[i][c]);
    }
    out.push_back(std::move(v));
  }
  return out;
}

/// Incrementally grown echelon basis for span-membership tests. Rows keep
/// their insertion order; each is reduced against all earlier rows so a
/// single forward pass reduces any vector.
class Echelon {
 public:
  Echelon(const FieldCtx& f, std::size_t dim) : f_(&f), dim_(dim) {}

  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t dim() const noexcept { return dim_; }

  void reduce(Vec& v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Elem c = v[pivots_[i]];
      if (c != 0) f_->axpy(v, f_->neg(c), rows_[i]);
    }
  }

  bool contains(Vec v) const {
    reduce(v);
    for (auto x : v) {
      if (x != 0) return false;
    }
    return true;
  }

  /// Adds v if it is independent of the current rows; returns whether it was.
  bool insert(Vec v) {
    reduce(v);
    std::size_t p = 0;
    while (p < dim_ && v[p] == 0) ++p;
    if (p == dim_) return false;
    if (v[p] != 1) f_->scale(v, f_->inv(v[p]));
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

 private:
  const FieldCtx* f_;
  std::size_t dim_;
  Mat rows_;
  std::vector<std::size_t> pivots_;
};

inline Elem dot(const FieldCtx& f, std::span<const Elem> a, std::span<const Elem> b) {
  Elem s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && b[i]) s = f.add(s, f.mul(a[i], b[i]));
  }
  return s;
}

}  // namespace hypfree
