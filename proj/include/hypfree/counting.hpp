#pragma once

// Brute-force complement counts over F_q and its extensions. These are the
// independent oracle for chi(A, q^k) and never consult the lattice.

#include <cstdint>
#include <string>
#include <vector>

#include "hypfree/arrangement.hpp"
#include "hypfree/error.hpp"
#include "hypfree/field.hpp"

namespace hypfree {

inline constexpr std::uint64_t kDefaultPointCeiling = std::uint64_t{1} << 24;

namespace detail {

inline std::uint64_t point_space_size(std::uint64_t q, std::size_t n, std::uint64_t ceiling, const char* what) {
  std::uint64_t total = 0;
  if (!checked_pow(q, static_cast<unsigned>(n), ceiling, total)) {
    throw Error(Errc::EnumerationOverflow, std::string(what) + ": " + std::to_string(q) + "^" +
                                               std::to_string(n) + " exceeds ceiling " + std::to_string(ceiling));
  }
  return total;
}

// Digits of `index` in base q, most significant first.
inline void decode_point(std::uint64_t index, std::uint32_t q, std::vector<Elem>& out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<Elem>(index % q);
    index /= q;
  }
}

inline std::uint64_t encode_point(std::span<const Elem> v, std::uint32_t q) {
  std::uint64_t idx = 0;
  for (auto x : v) idx = idx * q + x;
  return idx;
}

inline bool off_all(const FieldCtx& f, const std::vector<Covector>& cs, std::span<const Elem> v) {
  for (const auto& c : cs) {
    if (dot(f, c, v) == 0) return false;
  }
  return true;
}

// off[p * n + h] is true when point p does not lie on hyperplane h.
inline std::vector<char> off_table(const Arrangement& arr) {
  const FieldCtx& f = arr.field();
  const std::uint64_t npts = point_space_size(arr.q(), arr.ell(), kDefaultPointCeiling, "point table");
  const std::size_t n = arr.size();
  std::vector<char> off(npts * n);
  std::vector<Elem> v(arr.ell());
  for (std::uint64_t p = 0; p < npts; ++p) {
    decode_point(p, arr.q(), v);
    for (std::size_t h = 0; h < n; ++h) off[p * n + h] = arr[h].evaluate(f, v) != 0;
  }
  return off;
}

}  // namespace detail

/// |M(A)|: points of F_q^ell on no hyperplane of A.
inline std::uint64_t count_complement(const Arrangement& arr, std::uint64_t ceiling = kDefaultPointCeiling) {
  const std::uint64_t npts = detail::point_space_size(arr.q(), arr.ell(), ceiling, "complement");
  const auto cs = arr.covectors();
  std::vector<Elem> v(arr.ell());
  std::uint64_t count = 0;
  for (std::uint64_t p = 0; p < npts; ++p) {
    detail::decode_point(p, arr.q(), v);
    if (detail::off_all(arr.field(), cs, v)) ++count;
  }
  return count;
}

/// Complement points of A ⊗ F_{q^k}, counted by enumerating F_{q^k}^ell.
inline std::uint64_t count_complement_extension(const Arrangement& arr, unsigned k,
                                                std::uint64_t ceiling = kDefaultPointCeiling) {
  const ExtensionCtx ext = extend(arr.field_ptr(), k);
  const FieldCtx& big = *ext.field();
  const std::uint64_t npts = detail::point_space_size(big.cardinality(), arr.ell(), ceiling, "extension complement");
  std::vector<Covector> lifted;
  for (const auto& c : arr.covectors()) {
    Covector l(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) l[i] = ext.embed(c[i]);
    lifted.push_back(std::move(l));
  }
  std::vector<Elem> v(arr.ell());
  std::uint64_t count = 0;
  for (std::uint64_t p = 0; p < npts; ++p) {
    detail::decode_point(p, big.cardinality(), v);
    if (detail::off_all(big, lifted, v)) ++count;
  }
  return count;
}

/// Ordered k-tuples of F_q-points such that every hyperplane misses at
/// least one of them.
inline std::uint64_t crapo_rota_count(const Arrangement& arr, unsigned k,
                                      std::uint64_t ceiling = kDefaultPointCeiling) {
  if (k == 0) throw Error(Errc::EnumerationOverflow, "tuple length must be positive");
  const std::uint64_t npts = detail::point_space_size(arr.q(), arr.ell(), ceiling, "tuple points");
  detail::point_space_size(npts, k, ceiling, "tuples");
  const auto off = detail::off_table(arr);
  const std::size_t n = arr.size();
  std::vector<std::uint64_t> tuple(k, 0);
  std::uint64_t count = 0;
  while (true) {
    bool ok = true;
    for (std::size_t h = 0; h < n && ok; ++h) {
      bool missed = false;
      for (unsigned i = 0; i < k; ++i) {
        if (off[tuple[i] * n + h]) {
          missed = true;
          break;
        }
      }
      ok = missed;
    }
    if (ok) ++count;
    unsigned pos = k;
    while (pos-- > 0) {
      if (++tuple[pos] < npts) break;
      tuple[pos] = 0;
    }
    if (pos == static_cast<unsigned>(-1)) break;
  }
  return count;
}

/// Checks that P -> (columns of its coordinate matrix) carries the
/// complement of A ⊗ F_{q^k} bijectively onto the tuples counted by
/// crapo_rota_count.
inline bool bijection_check(const Arrangement& arr, unsigned k, std::uint64_t ceiling = kDefaultPointCeiling) {
  const ExtensionCtx ext = extend(arr.field_ptr(), k);
  const FieldCtx& big = *ext.field();
  const std::size_t ell = arr.ell();
  const std::uint64_t npts_ext = detail::point_space_size(big.cardinality(), ell, ceiling, "extension points");
  const std::uint64_t npts = detail::point_space_size(arr.q(), ell, ceiling, "base points");
  const std::uint64_t ntuples = detail::point_space_size(npts, k, ceiling, "tuples");
  const auto cs = arr.covectors();
  const auto off = detail::off_table(arr);
  const std::size_t n = arr.size();

  std::vector<char> image(ntuples, 0);
  std::vector<Elem> v(ell);
  std::vector<Elem> column(ell);
  for (std::uint64_t p = 0; p < npts_ext; ++p) {
    detail::decode_point(p, big.cardinality(), v);
    std::vector<std::vector<Elem>> coords(ell);
    for (std::size_t i = 0; i < ell; ++i) coords[i] = ext.coordinates(v[i]);
    std::uint64_t tuple_index = 0;
    bool star = true;
    for (unsigned j = 0; j < k; ++j) {
      for (std::size_t i = 0; i < ell; ++i) column[i] = coords[i][j];
      tuple_index = tuple_index * npts + detail::encode_point(column, arr.q());
    }
    // (*) for this tuple, recomputed from its columns.
    for (std::size_t h = 0; h < n && star; ++h) {
      bool missed = false;
      std::uint64_t t = tuple_index;
      for (unsigned j = 0; j < k; ++j) {
        const std::uint64_t pt = t % npts;
        t /= npts;
        if (off[pt * n + h]) missed = true;
      }
      star = missed;
    }
    const bool in_complement = detail::off_all(big, cs, v);
    if (in_complement != star) return false;
    if (image[tuple_index]) return false;  // not injective
    image[tuple_index] = 1;
  }
  // Surjective onto all tuples: every tuple is hit exactly once.
  for (auto hit : image) {
    if (!hit) return false;
  }
  return true;
}

/// chi(A1, q^k) >= chi(A2, q^k) for A1 ⊆ A2, using the extension counts.
inline bool monotonicity_check(const Arrangement& a1, const Arrangement& a2, unsigned k) {
  if (!is_subarrangement(a1, a2)) throw Error(Errc::NotSubarrangement, "first arrangement is not contained in the second");
  return count_complement_extension(a1, k) >= count_complement_extension(a2, k);
}

}  // namespace hypfree
