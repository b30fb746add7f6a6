#pragma once

// Finite fields F_{p^e} with table-driven arithmetic, and extensions
// F_{q^k} built directly over an existing field F_q.
//
// Elements are integer codes. For a field constructed over a base field of
// cardinality b with relative degree k, the code of sum_i d_i x^i is
// sum_i d_i * b^i where each d_i is itself a base-field code. Unwinding the
// tower, the base-p digits of a code are the coordinates of the element over
// the prime field, so addition is always digit-wise mod p.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hypfree/error.hpp"

namespace hypfree {

using Elem = std::uint32_t;

inline constexpr std::uint64_t kDefaultFieldCeiling = std::uint64_t{1} << 20;

class FieldCtx;
using FieldPtr = std::shared_ptr<const FieldCtx>;

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Checked integer power; returns false when the result exceeds `limit`.
inline bool checked_pow(std::uint64_t base, unsigned exp, std::uint64_t limit, std::uint64_t& out) {
  out = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && out > limit / base) return false;
    out *= base;
    if (out > limit) return false;
  }
  return true;
}

}  // namespace detail

/// An immutable finite field. Build one with make_field() or extend().
class FieldCtx {
 public:
  struct Token {
   private:
    Token() = default;
    friend class FieldCtx;
  };

  FieldCtx(Token, std::uint32_t p) : p_(p), q_(p), degree_(1), abs_degree_(1), modulus_{0, 1} {
    build_tables();
  }

  FieldCtx(Token, FieldPtr base, unsigned degree, std::vector<Elem> modulus)
      : p_(base->p_),
        degree_(degree),
        abs_degree_(base->abs_degree_ * degree),
        base_(std::move(base)),
        modulus_(std::move(modulus)) {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < degree_; ++i) q *= base_->q_;
    q_ = static_cast<std::uint32_t>(q);
    build_tables();
  }

  static FieldPtr prime(std::uint32_t p) { return std::make_shared<const FieldCtx>(Token{}, p); }

  static FieldPtr extension_of(const FieldPtr& base, unsigned degree, std::uint64_t ceiling);

  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t cardinality() const noexcept { return q_; }
  /// Degree over the prime field.
  unsigned degree() const noexcept { return abs_degree_; }
  /// Degree over the field this one was built from (1 for prime fields).
  unsigned relative_degree() const noexcept { return degree_; }
  bool is_prime_field() const noexcept { return base_ == nullptr; }
  const FieldPtr& base() const noexcept { return base_; }
  /// Monic defining polynomial over the base field, low degree first.
  /// Prime fields report the formal modulus x.
  const std::vector<Elem>& modulus() const noexcept { return modulus_; }

  static constexpr Elem zero() noexcept { return 0; }
  static constexpr Elem one() noexcept { return 1; }

  Elem add(Elem a, Elem b) const noexcept {
    if (!add_.empty()) return add_[a * q_ + b];
    if (p_ == 2) return a ^ b;
    Elem r = 0;
    Elem scale = 1;
    for (unsigned i = 0; i < abs_degree_; ++i) {
      r += ((a % p_ + b % p_) % p_) * scale;
      a /= p_;
      b /= p_;
      scale *= p_;
    }
    return r;
  }

  Elem neg(Elem a) const noexcept {
    if (!neg_.empty()) return neg_[a];
    if (p_ == 2) return a;
    Elem r = 0;
    Elem scale = 1;
    for (unsigned i = 0; i < abs_degree_; ++i) {
      r += ((p_ - a % p_) % p_) * scale;
      a /= p_;
      scale *= p_;
    }
    return r;
  }

  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const noexcept {
    if (!mul_.empty()) return mul_[a * q_ + b];
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }

  Elem inv(Elem a) const {
    if (a == 0) throw std::domain_error("inverse of zero in finite field");
    return inv_[a];
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem pow(Elem a, std::uint64_t n) const noexcept {
    Elem r = 1;
    while (n) {
      if (n & 1) r = mul(r, a);
      a = mul(a, a);
      n >>= 1;
    }
    return r;
  }

  /// Image of an integer in the prime subfield.
  Elem from_int(std::int64_t n) const noexcept {
    std::int64_t r = n % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Elem>(r);
  }

  /// Coordinates over the base field (relative_degree() base codes).
  std::vector<Elem> coefficients(Elem a) const {
    std::vector<Elem> out(degree_);
    const Elem b = base_q();
    for (unsigned i = 0; i < degree_; ++i) {
      out[i] = a % b;
      a /= b;
    }
    return out;
  }

  /// Coordinates over the prime field (degree() digits in [0, p)).
  std::vector<Elem> prime_coefficients(Elem a) const {
    std::vector<Elem> out(abs_degree_);
    for (unsigned i = 0; i < abs_degree_; ++i) {
      out[i] = a % p_;
      a /= p_;
    }
    return out;
  }

  Elem from_coefficients(std::span<const Elem> c) const {
    if (c.size() != degree_) {
      throw Error(Errc::DimensionMismatch, "coefficient vector length " + std::to_string(c.size()) +
                                               " != " + std::to_string(degree_));
    }
    const Elem b = base_q();
    Elem r = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
      if (c[i] >= b) throw Error(Errc::Parse, "coefficient out of range");
      r = r * b + c[i];
    }
    return r;
  }

  Elem from_prime_coefficients(std::span<const Elem> c) const {
    if (c.size() != abs_degree_) throw Error(Errc::DimensionMismatch, "prime coefficient vector length");
    Elem r = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
      if (c[i] >= p_) throw Error(Errc::Parse, "coefficient out of range");
      r = r * p_ + c[i];
    }
    return r;
  }

  /// dst += f * src, element-wise.
  void axpy(std::span<Elem> dst, Elem f, std::span<const Elem> src) const noexcept {
    if (f == 0) return;
    const std::size_t n = dst.size();
    if (!mul_.empty()) {
      const Elem* mrow = mul_.data() + static_cast<std::size_t>(f) * q_;
      const Elem* arow = add_.data();
      for (std::size_t i = 0; i < n; ++i) {
        if (src[i]) dst[i] = arow[static_cast<std::size_t>(dst[i]) * q_ + mrow[src[i]]];
      }
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (src[i]) dst[i] = add(dst[i], mul(f, src[i]));
    }
  }

  /// dst *= f, element-wise.
  void scale(std::span<Elem> dst, Elem f) const noexcept {
    for (auto& x : dst) x = mul(x, f);
  }

  bool operator==(const FieldCtx& o) const noexcept {
    if (this == &o) return true;
    if (p_ != o.p_ || q_ != o.q_ || degree_ != o.degree_ || modulus_ != o.modulus_) return false;
    if ((base_ == nullptr) != (o.base_ == nullptr)) return false;
    return base_ == nullptr || *base_ == *o.base_;
  }

  std::string describe() const {
    return "F_" + std::to_string(p_) + (abs_degree_ > 1 ? "^" + std::to_string(abs_degree_) : "");
  }

 private:
  Elem base_q() const noexcept { return base_ ? base_->q_ : p_; }

  // Multiplication straight from the polynomial representation; used only
  // while the tables are being built.
  Elem slow_mul(Elem a, Elem b) const;

  void build_tables();

  std::uint32_t p_;
  std::uint32_t q_ = 0;
  unsigned degree_;
  unsigned abs_degree_;
  FieldPtr base_;
  std::vector<Elem> modulus_;

  std::vector<Elem> add_, mul_, neg_, inv_;
  std::vector<Elem> exp_;  // length 2(q-1)
  std::vector<std::uint32_t> log_;
};

namespace detail {

// Dense polynomials over a field, low degree first; used for modulus
// selection and to derive multiplication tables of extensions.
using Poly = std::vector<Elem>;

inline void trim(const FieldCtx&, Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic m.
inline Poly poly_rem(const FieldCtx& f, Poly a, const Poly& m) {
  trim(f, a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const Elem lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = f.sub(a[shift + i], f.mul(lead, m[i]));
    }
    trim(f, a);
  }
  return a;
}

inline Poly poly_mul(const FieldCtx& f, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  return r;
}

// Monic polynomial of degree d whose lower coefficients are the base-q
// digits of `index` with the constant term most significant. Iterating
// index = 0, 1, ... therefore walks monic polynomials in lexicographic
// order of (c_0, c_1, ..., c_{d-1}).
inline Poly monic_from_index(std::uint64_t index, unsigned d, std::uint32_t q) {
  Poly m(d + 1, 0);
  m[d] = 1;
  for (unsigned i = d; i-- > 0;) {
    m[i] = static_cast<Elem>(index % q);
    index /= q;
  }
  return m;
}

inline bool is_irreducible(const FieldCtx& f, const Poly& m) {
  const unsigned d = static_cast<unsigned>(m.size() - 1);
  for (unsigned dd = 1; dd <= d / 2; ++dd) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < dd; ++i) count *= f.cardinality();
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      if (poly_rem(f, m, monic_from_index(idx, dd, f.cardinality())).empty()) return false;
    }
  }
  return true;
}

inline Poly smallest_irreducible(const FieldCtx& f, unsigned d) {
  std::uint64_t count = 1;
  for (unsigned i = 0; i < d; ++i) count *= f.cardinality();
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Poly m = monic_from_index(idx, d, f.cardinality());
    if (is_irreducible(f, m)) return m;
  }
  throw std::logic_error("no irreducible polynomial found");
}

}  // namespace detail

inline Elem FieldCtx::slow_mul(Elem a, Elem b) const {
  if (!base_) return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % p_);
  const FieldCtx& bf = *base_;
  auto ca = coefficients(a);
  auto cb = coefficients(b);
  auto r = detail::poly_rem(bf, detail::poly_mul(bf, ca, cb), modulus_);
  r.resize(degree_, 0);
  return from_coefficients(r);
}

inline void FieldCtx::build_tables() {
  const std::uint32_t q = q_;
  // Multiplicative group: find a generator by testing orders on prime
  // divisors of q-1, then walk its powers.
  exp_.assign(q > 1 ? 2 * (q - 1) : 1, 1);
  log_.assign(q, 0);
  if (q > 2) {
    const auto factors = detail::prime_factors(q - 1);
    auto slow_pow = [&](Elem a, std::uint64_t n) {
      Elem r = 1;
      while (n) {
        if (n & 1) r = slow_mul(r, a);
        a = slow_mul(a, a);
        n >>= 1;
      }
      return r;
    };
    Elem gen = 0;
    for (Elem g = 2; g < q; ++g) {
      bool ok = true;
      for (auto r : factors) {
        if (slow_pow(g, (q - 1) / r) == 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        gen = g;
        break;
      }
    }
    if (gen == 0) throw std::logic_error("multiplicative generator not found");
    Elem x = 1;
    for (std::uint32_t i = 0; i < q - 1; ++i) {
      exp_[i] = x;
      exp_[i + q - 1] = x;
      log_[x] = i;
      x = slow_mul(x, gen);
    }
  }
  inv_.assign(q, 0);
  for (Elem a = 1; a < q; ++a) inv_[a] = exp_[(q - 1 - log_[a]) % (q - 1)];

  if (q <= 256) {
    // add() and mul() fall back to digit-wise / log arithmetic while the
    // tables are still empty.
    std::vector<Elem> add_tab(static_cast<std::size_t>(q) * q);
    std::vector<Elem> mul_tab(static_cast<std::size_t>(q) * q);
    for (Elem a = 0; a < q; ++a) {
      for (Elem b = 0; b < q; ++b) {
        add_tab[a * q + b] = add(a, b);
        mul_tab[a * q + b] = mul(a, b);
      }
    }
    add_.swap(add_tab);
    mul_.swap(mul_tab);
    neg_.assign(q, 0);
    for (Elem a = 0; a < q; ++a) {
      for (Elem b = 0; b < q; ++b) {
        if (add_[a * q + b] == 0) {
          neg_[a] = b;
          break;
        }
      }
    }
  }
}

inline FieldPtr FieldCtx::extension_of(const FieldPtr& base, unsigned degree, std::uint64_t ceiling) {
  if (degree == 0) throw Error(Errc::DegreeOverflow, "extension degree must be positive");
  std::uint64_t card = 0;
  const std::uint64_t limit = std::min<std::uint64_t>(ceiling, 0xFFFFFFFFull);
  if (!detail::checked_pow(base->cardinality(), degree, limit, card)) {
    throw Error(Errc::DegreeOverflow, "field of cardinality " + std::to_string(base->cardinality()) + "^" +
                                          std::to_string(degree) + " exceeds ceiling " +
                                          std::to_string(ceiling));
  }
  auto modulus = detail::smallest_irreducible(*base, degree);
  if (!detail::is_irreducible(*base, modulus)) throw std::logic_error("modulus failed irreducibility check");
  return std::make_shared<const FieldCtx>(Token{}, base, degree, std::move(modulus));
}

/// The deterministic field F_{p^e}: the modulus is the lexicographically
/// smallest monic irreducible of degree e over F_p.
inline FieldPtr make_field(std::uint64_t p, unsigned e, std::uint64_t ceiling = kDefaultFieldCeiling) {
  if (!detail::is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
  if (e == 0) throw Error(Errc::DegreeOverflow, "field degree must be positive");
  std::uint64_t card = 0;
  if (!detail::checked_pow(p, e, std::min<std::uint64_t>(ceiling, 0xFFFFFFFFull), card)) {
    throw Error(Errc::DegreeOverflow,
                std::to_string(p) + "^" + std::to_string(e) + " exceeds ceiling " + std::to_string(ceiling));
  }
  auto prime = FieldCtx::prime(static_cast<std::uint32_t>(p));
  if (e == 1) return prime;
  return FieldCtx::extension_of(prime, e, ceiling);
}

/// Splits a prime power into (p, e); throws NotPrime otherwise.
inline std::pair<std::uint64_t, unsigned> split_prime_power(std::uint64_t q) {
  if (q < 2) throw Error(Errc::NotPrime, std::to_string(q) + " is not a prime power");
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  unsigned e = 0;
  std::uint64_t r = q;
  while (r % p == 0) {
    r /= p;
    ++e;
  }
  if (r != 1) throw Error(Errc::NotPrime, std::to_string(q) + " is not a prime power");
  return {p, e};
}

/// Value type pairing a code with its field; arithmetic between different
/// fields throws FieldMismatch. The field must outlive the element.
class FieldElement {
 public:
  FieldElement(const FieldCtx& field, Elem code) : field_(&field), code_(code) {
    if (code >= field.cardinality()) throw Error(Errc::Parse, "element code out of range");
  }

  Elem code() const noexcept { return code_; }
  const FieldCtx& field() const noexcept { return *field_; }
  std::vector<Elem> coefficients() const { return field_->coefficients(code_); }
  bool is_zero() const noexcept { return code_ == 0; }

  FieldElement operator+(const FieldElement& o) const { return {*field_, field_->add(code_, check(o))}; }
  FieldElement operator-(const FieldElement& o) const { return {*field_, field_->sub(code_, check(o))}; }
  FieldElement operator*(const FieldElement& o) const { return {*field_, field_->mul(code_, check(o))}; }
  FieldElement operator/(const FieldElement& o) const { return {*field_, field_->div(code_, check(o))}; }
  FieldElement operator-() const { return {*field_, field_->neg(code_)}; }
  FieldElement inverse() const { return {*field_, field_->inv(code_)}; }
  FieldElement pow(std::uint64_t n) const { return {*field_, field_->pow(code_, n)}; }

  bool operator==(const FieldElement& o) const { return code_ == check(o); }

 private:
  Elem check(const FieldElement& o) const {
    if (field_ != o.field_ && !(*field_ == *o.field_)) {
      throw Error(Errc::FieldMismatch, "arithmetic between elements of " + field_->describe() + " and " +
                                           o.field_->describe());
    }
    return o.code_;
  }

  const FieldCtx* field_;
  Elem code_;
};

/// All q elements in code order: 0, 1, ..., then higher coefficients.
inline std::vector<FieldElement> field_elements(const FieldCtx& field) {
  std::vector<FieldElement> out;
  out.reserve(field.cardinality());
  for (Elem c = 0; c < field.cardinality(); ++c) out.emplace_back(field, c);
  return out;
}

/// F_{q^k} built as F_q[x]/(f) with f the smallest monic irreducible of
/// degree k over F_q, together with its embedding and coordinate maps.
class ExtensionCtx {
 public:
  ExtensionCtx(FieldPtr base, unsigned k, std::uint64_t ceiling = kDefaultFieldCeiling)
      : base_(std::move(base)), k_(k), field_(FieldCtx::extension_of(base_, k, ceiling)) {
    verify_embedding();
  }

  const FieldPtr& base() const noexcept { return base_; }
  const FieldPtr& field() const noexcept { return field_; }
  unsigned degree() const noexcept { return k_; }

  /// Base element b maps to the constant polynomial b, whose code is b.
  Elem embed(Elem b) const noexcept { return b; }

  /// Coordinates in the basis 1, x, ..., x^{k-1}.
  std::vector<Elem> coordinates(Elem x) const { return field_->coefficients(x); }
  Elem from_coordinates(std::span<const Elem> c) const { return field_->from_coefficients(c); }

  std::vector<Elem> basis() const {
    std::vector<Elem> out(k_);
    Elem v = 1;
    for (unsigned i = 0; i < k_; ++i) {
      out[i] = v;
      v *= base_->cardinality();
    }
    return out;
  }

 private:
  void verify_embedding() const {
    const FieldCtx& b = *base_;
    const FieldCtx& f = *field_;
    if (b.cardinality() > 256) return;
    if (embed(0) != 0 || embed(1) != 1) throw std::logic_error("embedding does not fix 0 and 1");
    for (Elem x = 0; x < b.cardinality(); ++x) {
      for (Elem y = 0; y < b.cardinality(); ++y) {
        if (embed(b.add(x, y)) != f.add(embed(x), embed(y)) || embed(b.mul(x, y)) != f.mul(embed(x), embed(y))) {
          throw std::logic_error("embedding is not a homomorphism");
        }
      }
    }
  }

  FieldPtr base_;
  unsigned k_;
  FieldPtr field_;
};

inline ExtensionCtx extend(const FieldPtr& base, unsigned k, std::uint64_t ceiling = kDefaultFieldCeiling) {
  return ExtensionCtx(base, k, ceiling);
}

}  // namespace hypfree
