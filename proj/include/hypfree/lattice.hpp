#pragma once

// Intersection lattice, Möbius function and characteristic polynomial.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypfree/arrangement.hpp"
#include "hypfree/error.hpp"
#include "hypfree/linalg.hpp"

namespace hypfree {

inline constexpr std::size_t kDefaultLatticeCeiling = std::size_t{1} << 20;

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(Errc::Overflow, "integer overflow in addition");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(Errc::Overflow, "integer overflow in multiplication");
  return r;
}

}  // namespace detail

/// Integer polynomial in t, stored low degree first.
class CharPoly {
 public:
  CharPoly() = default;
  explicit CharPoly(std::vector<std::int64_t> low_first) : c_(std::move(low_first)) { trim(); }

  static CharPoly monomial(std::size_t deg) {
    std::vector<std::int64_t> c(deg + 1, 0);
    c[deg] = 1;
    return CharPoly(std::move(c));
  }

  /// prod (t - r) over the given roots.
  static CharPoly from_roots(const std::vector<std::int64_t>& roots) {
    std::vector<std::int64_t> c{1};
    for (auto r : roots) {
      std::vector<std::int64_t> n(c.size() + 1, 0);
      for (std::size_t i = 0; i < c.size(); ++i) {
        n[i + 1] = detail::checked_add(n[i + 1], c[i]);
        n[i] = detail::checked_add(n[i], detail::checked_mul(-r, c[i]));
      }
      c = std::move(n);
    }
    return CharPoly(std::move(c));
  }

  std::size_t degree() const noexcept { return c_.empty() ? 0 : c_.size() - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const std::vector<std::int64_t>& coefficients() const noexcept { return c_; }

  std::vector<std::int64_t> coefficients_high_first() const {
    return std::vector<std::int64_t>(c_.rbegin(), c_.rend());
  }

  std::int64_t coefficient(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }

  /// Exact evaluation; throws Overflow rather than wrapping.
  std::int64_t eval(std::int64_t t) const {
    std::int64_t r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = detail::checked_add(detail::checked_mul(r, t), c_[i]);
    return r;
  }

  CharPoly operator+(const CharPoly& o) const {
    std::vector<std::int64_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = detail::checked_add(coefficient(i), o.coefficient(i));
    return CharPoly(std::move(r));
  }

  CharPoly operator-(const CharPoly& o) const {
    std::vector<std::int64_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = detail::checked_add(coefficient(i), -o.coefficient(i));
    return CharPoly(std::move(r));
  }

  bool operator==(const CharPoly&) const = default;

  /// e.g. "t^3 - 7t^2 + 14t - 8".
  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
      const std::int64_t a = c_[i];
      if (a == 0) continue;
      const std::uint64_t mag = a < 0 ? 0 - static_cast<std::uint64_t>(a) : static_cast<std::uint64_t>(a);
      if (out.empty()) {
        if (a < 0) out += "-";
      } else {
        out += a < 0 ? " - " : " + ";
      }
      if (mag != 1 || i == 0) out += std::to_string(mag);
      if (i >= 1) out += "t";
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<std::int64_t> c_;
};

/// The integer roots d_1 <= ... <= d_n with multiplicity if the polynomial
/// splits over Z into monic linear factors, otherwise nullopt. Candidates
/// come from the divisors of the lowest nonzero coefficient.
inline std::optional<std::vector<std::int64_t>> integer_roots(const CharPoly& cp) {
  if (cp.is_zero()) return std::nullopt;
  std::vector<std::int64_t> c = cp.coefficients();
  if (c.back() != 1) return std::nullopt;
  std::vector<std::int64_t> roots;
  while (c.size() > 1 && c[0] == 0) {
    roots.push_back(0);
    c.erase(c.begin());
  }
  auto eval = [](const std::vector<std::int64_t>& p, std::int64_t t) -> std::optional<std::int64_t> {
    __int128 r = 0;
    for (std::size_t i = p.size(); i-- > 0;) {
      r = r * t + p[i];
      if (r > INT64_MAX || r < INT64_MIN) return std::nullopt;
    }
    return static_cast<std::int64_t>(r);
  };
  while (c.size() > 1) {
    const std::int64_t c0 = c[0];
    const std::uint64_t mag = c0 < 0 ? 0 - static_cast<std::uint64_t>(c0) : static_cast<std::uint64_t>(c0);
    std::optional<std::int64_t> found;
    for (std::uint64_t d = 1; d * d <= mag && !found; ++d) {
      if (mag % d != 0) continue;
      const std::uint64_t pair[2] = {d, mag / d};
      for (auto dv : pair) {
        for (int sign : {1, -1}) {
          const auto cand = sign * static_cast<std::int64_t>(dv);
          auto v = eval(c, cand);
          if (v && *v == 0 && (!found || cand < *found)) found = cand;
        }
      }
    }
    if (!found) return std::nullopt;
    // Synthetic division by (t - root).
    const std::int64_t r = *found;
    std::vector<std::int64_t> quo(c.size() - 1, 0);
    std::int64_t carry = 0;
    for (std::size_t i = c.size(); i-- > 1;) {
      carry = detail::checked_add(c[i], detail::checked_mul(carry, r));
      quo[i - 1] = carry;
    }
    c = std::move(quo);
    roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// "(t-1)(t-4)^2", with "t" for a zero root.
inline std::string factored_form(const std::vector<std::int64_t>& roots) {
  if (roots.empty()) return "1";
  std::string out;
  std::size_t i = 0;
  while (i < roots.size()) {
    std::size_t j = i;
    while (j < roots.size() && roots[j] == roots[i]) ++j;
    const std::int64_t r = roots[i];
    std::string f;
    if (r == 0) {
      f = "t";
    } else if (r > 0) {
      f = "(t-" + std::to_string(r) + ")";
    } else {
      f = "(t+" + std::to_string(-r) + ")";
    }
    out += f;
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

inline std::int64_t eval_char_poly(const CharPoly& cp, std::int64_t n) { return cp.eval(n); }

/// A member of L(A): a subspace with canonical basis and the hyperplanes of
/// A containing it.
struct Flat {
  Mat basis;
  std::size_t dim = 0;
  std::vector<std::size_t> hyperplanes;  // indices into the arrangement, sorted
  std::int64_t mobius = 0;
};

namespace detail {

// Y < X in L(A): the hyperplanes through Y form a proper subset of those through X.
inline bool flat_below(const Flat& y, const Flat& x) {
  return y.hyperplanes.size() < x.hyperplanes.size() &&
         std::includes(x.hyperplanes.begin(), x.hyperplanes.end(), y.hyperplanes.begin(), y.hyperplanes.end());
}

}  // namespace detail

class IntersectionLattice {
 public:
  IntersectionLattice(std::size_t ell, std::vector<Flat> flats) : ell_(ell), flats_(std::move(flats)) {}

  std::size_t ell() const noexcept { return ell_; }
  std::size_t size() const noexcept { return flats_.size(); }
  const std::vector<Flat>& flats() const noexcept { return flats_; }
  const Flat& bottom() const { return flats_.front(); }

  /// Y < X in the lattice order (reverse inclusion): X is strictly contained in Y.
  bool less(std::size_t y, std::size_t x) const { return detail::flat_below(flats_[y], flats_[x]); }

  CharPoly char_poly() const {
    std::vector<std::int64_t> c(ell_ + 1, 0);
    for (const auto& x : flats_) c[x.dim] = detail::checked_add(c[x.dim], x.mobius);
    return CharPoly(std::move(c));
  }

  /// sum over flats of mu(X) t^{dim X}, evaluated directly from the lattice.
  std::int64_t evaluate(std::int64_t t) const {
    std::int64_t s = 0;
    for (const auto& x : flats_) {
      std::int64_t p = 1;
      for (std::size_t i = 0; i < x.dim; ++i) p = detail::checked_mul(p, t);
      s = detail::checked_add(s, detail::checked_mul(x.mobius, p));
    }
    return s;
  }

  /// Re-derives every Möbius value from the defining recursion.
  bool mobius_consistent() const {
    if (flats_.empty() || flats_[0].dim != ell_ || flats_[0].mobius != 1) return false;
    for (std::size_t x = 1; x < flats_.size(); ++x) {
      std::int64_t s = 0;
      for (std::size_t y = 0; y < flats_.size(); ++y) {
        if (less(y, x)) s += flats_[y].mobius;
      }
      if (flats_[x].mobius != -s) return false;
    }
    return true;
  }

 private:
  std::size_t ell_;
  std::vector<Flat> flats_;
};

/// Intersection closure from V, deduplicated by canonical echelon basis;
/// Möbius values filled in order of decreasing dimension.
inline IntersectionLattice build_lattice(const Arrangement& arr, std::size_t ceiling = kDefaultLatticeCeiling) {
  const FieldCtx& f = arr.field();
  const std::size_t ell = arr.ell();
  const auto& hs = arr.hyperplanes();

  struct Node {
    Mat annihilator;  // rref rows
    Flat flat;
  };
  std::vector<Node> nodes;
  std::map<Mat, std::size_t> seen;

  auto containing = [&](const Mat& basis) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < hs.size(); ++i) {
      bool all = true;
      for (const auto& b : basis) {
        if (hs[i].evaluate(f, b) != 0) {
          all = false;
          break;
        }
      }
      if (all) idx.push_back(i);
    }
    return idx;
  };

  {
    Mat basis;
    for (std::size_t i = 0; i < ell; ++i) {
      Vec e(ell, 0);
      e[i] = 1;
      basis.push_back(std::move(e));
    }
    Flat v{basis, ell, containing(basis), 1};
    seen.emplace(basis, 0);
    nodes.push_back(Node{Mat{}, std::move(v)});
  }

  for (std::size_t cur = 0; cur < nodes.size(); ++cur) {
    for (std::size_t hi = 0; hi < hs.size(); ++hi) {
      const auto& inside = nodes[cur].flat.hyperplanes;
      if (std::binary_search(inside.begin(), inside.end(), hi)) continue;
      Mat ann = nodes[cur].annihilator;
      ann.push_back(hs[hi].covector());
      rref(f, ann, ell);
      Mat basis = canonical_span(f, kernel_basis(f, ann, ell), ell);
      if (seen.count(basis)) continue;
      if (nodes.size() >= ceiling) {
        throw Error(Errc::LatticeOverflow, "intersection lattice exceeds " + std::to_string(ceiling) + " flats");
      }
      Flat x{basis, basis.size(), containing(basis), 0};
      seen.emplace(std::move(basis), nodes.size());
      nodes.push_back(Node{std::move(ann), std::move(x)});
    }
  }

  std::vector<Flat> flats;
  flats.reserve(nodes.size());
  for (auto& n : nodes) flats.push_back(std::move(n.flat));
  std::stable_sort(flats.begin(), flats.end(), [](const Flat& a, const Flat& b) {
    if (a.dim != b.dim) return a.dim > b.dim;
    return a.basis < b.basis;
  });

  // Every Y < X has strictly larger dimension, hence a smaller index.
  for (std::size_t x = 1; x < flats.size(); ++x) {
    std::int64_t s = 0;
    for (std::size_t y = 0; y < x; ++y) {
      if (detail::flat_below(flats[y], flats[x])) s = detail::checked_add(s, flats[y].mobius);
    }
    flats[x].mobius = -s;
  }
  return IntersectionLattice(ell, std::move(flats));
}

inline CharPoly char_poly(const Arrangement& arr) { return build_lattice(arr).char_poly(); }

/// chi(A) == chi(A') - chi(A'') for the triple defined by h.
inline bool char_poly_recursion_check(const Arrangement& arr, const Hyperplane& h) {
  arr.index_of(h);
  const CharPoly whole = char_poly(arr);
  const CharPoly del = char_poly(deletion(arr, h));
  const CharPoly res = char_poly(restriction(arr, h).restricted);
  return whole == del - res;
}

}  // namespace hypfree
