#pragma once

// Central hyperplane arrangements in F_q^ell, stored as sorted sets of
// canonical covectors (first nonzero coefficient equal to 1).

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "hypfree/error.hpp"
#include "hypfree/field.hpp"
#include "hypfree/linalg.hpp"

namespace hypfree {

using Covector = std::vector<Elem>;

inline constexpr std::uint64_t kDefaultEnumerationCeiling = std::uint64_t{1} << 20;

/// A linear hyperplane given by its canonical defining covector.
class Hyperplane {
 public:
  /// Scales `c` so that its first nonzero coefficient is 1.
  static Hyperplane from_covector(const FieldCtx& f, Covector c) {
    auto it = std::find_if(c.begin(), c.end(), [](Elem x) { return x != 0; });
    if (it == c.end()) throw Error(Errc::ZeroCovector, "hyperplane covector is zero");
    for (auto x : c) {
      if (x >= f.cardinality()) throw Error(Errc::Parse, "covector coefficient outside the field");
    }
    if (*it != 1) f.scale(c, f.inv(*it));
    return Hyperplane(std::move(c));
  }

  const Covector& covector() const noexcept { return alpha_; }
  std::size_t ell() const noexcept { return alpha_.size(); }
  /// Index of the first nonzero coefficient.
  std::size_t pivot() const noexcept {
    return static_cast<std::size_t>(std::find(alpha_.begin(), alpha_.end(), Elem{1}) - alpha_.begin());
  }

  Elem evaluate(const FieldCtx& f, std::span<const Elem> v) const { return dot(f, alpha_, v); }

  auto operator<=>(const Hyperplane&) const = default;

 private:
  explicit Hyperplane(Covector c) : alpha_(std::move(c)) {}
  Covector alpha_;
};

class Arrangement {
 public:
  Arrangement(FieldPtr field, std::size_t ell) : field_(std::move(field)), ell_(ell) {
    if (ell_ == 0) throw Error(Errc::DimensionMismatch, "dimension must be positive");
  }

  Arrangement(FieldPtr field, std::size_t ell, std::vector<Hyperplane> hs) : Arrangement(std::move(field), ell) {
    for (const auto& h : hs) {
      if (h.ell() != ell_) throw Error(Errc::DimensionMismatch, "hyperplane dimension mismatch");
    }
    std::sort(hs.begin(), hs.end());
    hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
    hs_ = std::move(hs);
  }

  const FieldPtr& field_ptr() const noexcept { return field_; }
  const FieldCtx& field() const noexcept { return *field_; }
  std::uint32_t q() const noexcept { return field_->cardinality(); }
  std::size_t ell() const noexcept { return ell_; }
  std::size_t size() const noexcept { return hs_.size(); }
  bool empty() const noexcept { return hs_.empty(); }
  const std::vector<Hyperplane>& hyperplanes() const noexcept { return hs_; }
  const Hyperplane& operator[](std::size_t i) const { return hs_[i]; }

  bool contains(const Hyperplane& h) const { return std::binary_search(hs_.begin(), hs_.end(), h); }

  std::size_t index_of(const Hyperplane& h) const {
    auto it = std::lower_bound(hs_.begin(), hs_.end(), h);
    if (it == hs_.end() || *it != h) throw Error(Errc::HyperplaneNotPresent, "hyperplane not in arrangement");
    return static_cast<std::size_t>(it - hs_.begin());
  }

  std::vector<Covector> covectors() const {
    std::vector<Covector> out;
    out.reserve(hs_.size());
    for (const auto& h : hs_) out.push_back(h.covector());
    return out;
  }

  bool same_space(const Arrangement& o) const { return ell_ == o.ell_ && *field_ == *o.field_; }

  bool operator==(const Arrangement& o) const { return same_space(o) && hs_ == o.hs_; }

  /// Lexicographic order on the sorted covector lists; used as the
  /// canonical id order in census output.
  bool id_less(const Arrangement& o) const { return hs_ < o.hs_; }

 private:
  FieldPtr field_;
  std::size_t ell_;
  std::vector<Hyperplane> hs_;
};

inline Arrangement make_arrangement(FieldPtr field, std::size_t ell, const std::vector<Covector>& covectors) {
  std::vector<Hyperplane> hs;
  hs.reserve(covectors.size());
  for (const auto& c : covectors) {
    if (c.size() != ell) {
      throw Error(Errc::DimensionMismatch,
                  "covector of length " + std::to_string(c.size()) + " in dimension " + std::to_string(ell));
    }
    hs.push_back(Hyperplane::from_covector(*field, c));
  }
  return Arrangement(std::move(field), ell, std::move(hs));
}

/// (q^ell - 1) / (q - 1), saturating at UINT64_MAX.
inline std::uint64_t hyperplane_count(std::uint64_t q, std::size_t ell) {
  std::uint64_t total = 0;
  std::uint64_t term = 1;
  for (std::size_t i = 0; i < ell; ++i) {
    if (total > UINT64_MAX - term) return UINT64_MAX;
    total += term;
    if (i + 1 < ell) {
      if (term > UINT64_MAX / q) return UINT64_MAX;
      term *= q;
    }
  }
  return total;
}

/// A_all: every hyperplane of F_q^ell, in canonical order.
inline Arrangement all_hyperplanes(FieldPtr field, std::size_t ell,
                                   std::uint64_t ceiling = kDefaultEnumerationCeiling) {
  const std::uint32_t q = field->cardinality();
  if (hyperplane_count(q, ell) > ceiling) {
    throw Error(Errc::EnumerationOverflow, "A_all over " + field->describe() + " in dimension " +
                                               std::to_string(ell) + " exceeds ceiling");
  }
  std::vector<Hyperplane> hs;
  for (std::size_t pivot = 0; pivot < ell; ++pivot) {
    const std::size_t tail = ell - pivot - 1;
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < tail; ++i) n *= q;
    for (std::uint64_t idx = 0; idx < n; ++idx) {
      Covector c(ell, 0);
      c[pivot] = 1;
      std::uint64_t r = idx;
      for (std::size_t i = ell; i-- > pivot + 1;) {
        c[i] = static_cast<Elem>(r % q);
        r /= q;
      }
      hs.push_back(Hyperplane::from_covector(*field, std::move(c)));
    }
  }
  return Arrangement(std::move(field), ell, std::move(hs));
}

/// The coordinate hyperplanes x_i = 0.
inline Arrangement boolean_arrangement(FieldPtr field, std::size_t ell) {
  std::vector<Covector> cs;
  for (std::size_t i = 0; i < ell; ++i) {
    Covector c(ell, 0);
    c[i] = 1;
    cs.push_back(std::move(c));
  }
  return make_arrangement(std::move(field), ell, cs);
}

inline Arrangement deletion(const Arrangement& arr, const Hyperplane& h) {
  const std::size_t idx = arr.index_of(h);
  std::vector<Hyperplane> hs = arr.hyperplanes();
  hs.erase(hs.begin() + static_cast<std::ptrdiff_t>(idx));
  return Arrangement(arr.field_ptr(), arr.ell(), std::move(hs));
}

inline Arrangement addition(const Arrangement& arr, const Hyperplane& h) {
  if (h.ell() != arr.ell()) throw Error(Errc::DimensionMismatch, "hyperplane dimension mismatch");
  std::vector<Hyperplane> hs = arr.hyperplanes();
  hs.push_back(h);
  return Arrangement(arr.field_ptr(), arr.ell(), std::move(hs));
}

inline bool is_subarrangement(const Arrangement& a, const Arrangement& b) {
  if (!a.same_space(b)) return false;
  return std::includes(b.hyperplanes().begin(), b.hyperplanes().end(), a.hyperplanes().begin(),
                       a.hyperplanes().end());
}

struct RestrictionMap {
  Hyperplane hyperplane;
  /// ell rows, ell-1 columns; column j is the j-th basis vector of H.
  Mat basis;
  Arrangement restricted;
};

/// Basis of H from the reduced-echelon kernel of its covector, ordered by
/// free column.
inline Mat hyperplane_basis(const FieldCtx& f, const Hyperplane& h) {
  const std::size_t ell = h.ell();
  Mat cols = kernel_basis(f, Mat{h.covector()}, ell);
  Mat basis(ell, Vec(ell - 1, 0));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t i = 0; i < ell; ++i) basis[i][j] = cols[j][i];
  }
  return basis;
}

/// Restriction onto H using the supplied basis of H (ell x (ell-1), columns).
inline RestrictionMap restriction_with_basis(const Arrangement& arr, const Hyperplane& h, Mat basis) {
  arr.index_of(h);
  const std::size_t ell = arr.ell();
  if (ell < 2) throw Error(Errc::DimensionMismatch, "restriction needs ell >= 2");
  const FieldCtx& f = arr.field();
  std::vector<Hyperplane> hs;
  for (const auto& k : arr.hyperplanes()) {
    if (k == h) continue;
    Covector pulled(ell - 1, 0);
    for (std::size_t j = 0; j < ell - 1; ++j) {
      Elem s = 0;
      for (std::size_t i = 0; i < ell; ++i) s = f.add(s, f.mul(k.covector()[i], basis[i][j]));
      pulled[j] = s;
    }
    hs.push_back(Hyperplane::from_covector(f, std::move(pulled)));
  }
  return RestrictionMap{h, std::move(basis), Arrangement(arr.field_ptr(), ell - 1, std::move(hs))};
}

inline RestrictionMap restriction(const Arrangement& arr, const Hyperplane& h) {
  arr.index_of(h);
  return restriction_with_basis(arr, h, hyperplane_basis(arr.field(), h));
}

/// Rank over F_q of the covector matrix.
inline std::size_t rank(const Arrangement& arr) {
  if (arr.empty()) return 0;
  return rank(arr.field(), arr.covectors(), arr.ell());
}

inline bool is_essential(const Arrangement& arr) { return rank(arr) == arr.ell(); }

/// Canonical reduced-echelon basis of the span of `vectors` in F_q^n.
inline Mat canonical_span(const FieldCtx& f, Mat vectors, std::size_t n) {
  rref(f, vectors, n);
  return vectors;
}

/// The flats H ∩ K (K in A \ {H}) recovered from a restriction, as
/// canonical subspaces of the ambient space, sorted.
inline std::vector<Mat> restricted_flats(const FieldCtx& f, const RestrictionMap& rm) {
  const std::size_t ell = rm.basis.size();
  std::vector<Mat> out;
  for (const auto& beta : rm.restricted.hyperplanes()) {
    Mat ker = kernel_basis(f, Mat{beta.covector()}, ell - 1);
    Mat ambient;
    for (const auto& y : ker) {
      Vec v(ell, 0);
      for (std::size_t i = 0; i < ell; ++i) {
        for (std::size_t j = 0; j < ell - 1; ++j) v[i] = f.add(v[i], f.mul(rm.basis[i][j], y[j]));
      }
      ambient.push_back(std::move(v));
    }
    out.push_back(canonical_span(f, std::move(ambient), ell));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Hyperplanes of A_all(F_3^3) not containing the line spanned by (0,0,1).
inline Arrangement ziegler_example(const FieldPtr& field) {
  if (!field->is_prime_field() || field->cardinality() != 3) {
    throw Error(Errc::WrongField, "the Ziegler fixture is defined over F_3, got " + field->describe());
  }
  const Arrangement all = all_hyperplanes(field, 3);
  std::vector<Hyperplane> hs;
  for (const auto& h : all.hyperplanes()) {
    if (h.covector()[2] != 0) hs.push_back(h);
  }
  return Arrangement(field, 3, std::move(hs));
}

}  // namespace hypfree
