#pragma once

// Sparse multivariate polynomials over a finite field and polynomial
// vector fields (derivations).

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hypfree/arrangement.hpp"
#include "hypfree/error.hpp"
#include "hypfree/field.hpp"

namespace hypfree {

using Exponent = std::vector<std::uint16_t>;

inline std::size_t total_degree(const Exponent& e) {
  std::size_t d = 0;
  for (auto x : e) d += x;
  return d;
}

/// Exponent vectors of total degree d in n variables, x_1^d first
/// (lexicographically decreasing).
inline std::vector<Exponent> monomials(std::size_t nvars, std::size_t degree) {
  std::vector<Exponent> out;
  Exponent cur(nvars, 0);
  auto rec = [&](auto&& self, std::size_t var, std::size_t left) -> void {
    if (var + 1 == nvars) {
      cur[var] = static_cast<std::uint16_t>(left);
      out.push_back(cur);
      return;
    }
    for (std::size_t a = left + 1; a-- > 0;) {
      cur[var] = static_cast<std::uint16_t>(a);
      self(self, var + 1, left - a);
    }
    cur[var] = 0;
  };
  if (nvars == 0) {
    if (degree == 0) out.push_back({});
    return out;
  }
  rec(rec, 0, degree);
  return out;
}

/// Number of monomials of degree d in n variables, 0 for negative d.
inline std::size_t monomial_count(std::size_t nvars, long degree) {
  if (degree < 0) return 0;
  if (nvars == 0) return degree == 0 ? 1 : 0;
  // C(d + n - 1, n - 1)
  std::uint64_t r = 1;
  for (std::size_t i = 1; i < nvars; ++i) r = r * (static_cast<std::uint64_t>(degree) + i) / i;
  return static_cast<std::size_t>(r);
}

class MultiPoly {
 public:
  MultiPoly(FieldPtr field, std::size_t nvars) : field_(std::move(field)), nvars_(nvars) {}

  static MultiPoly constant(FieldPtr field, std::size_t nvars, Elem c) {
    MultiPoly p(std::move(field), nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
  }

  static MultiPoly monomial(FieldPtr field, const Exponent& e, Elem c = 1) {
    MultiPoly p(std::move(field), e.size());
    p.add_term(e, c);
    return p;
  }

  static MultiPoly variable(FieldPtr field, std::size_t nvars, std::size_t i, std::uint16_t power = 1) {
    Exponent e(nvars, 0);
    e[i] = power;
    return monomial(std::move(field), e);
  }

  static MultiPoly linear(FieldPtr field, const Covector& c) {
    MultiPoly p(std::move(field), c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      Exponent e(c.size(), 0);
      e[i] = 1;
      p.add_term(e, c[i]);
    }
    return p;
  }

  const FieldPtr& field_ptr() const noexcept { return field_; }
  const FieldCtx& field() const noexcept { return *field_; }
  std::size_t nvars() const noexcept { return nvars_; }
  const std::map<Exponent, Elem>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Elem coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0 : it->second;
  }

  void add_term(const Exponent& e, Elem c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second = field_->add(it->second, c);
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// Maximal total degree; 0 for the zero polynomial.
  std::size_t degree() const {
    std::size_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    const std::size_t d = total_degree(terms_.begin()->first);
    for (const auto& [e, c] : terms_) {
      if (total_degree(e) != d) return false;
    }
    return true;
  }

  MultiPoly operator+(const MultiPoly& o) const {
    MultiPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
  }

  MultiPoly operator-() const {
    MultiPoly r(field_, nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, field_->neg(c));
    return r;
  }

  MultiPoly operator-(const MultiPoly& o) const { return *this + (-o); }

  MultiPoly operator*(const MultiPoly& o) const {
    MultiPoly r(field_, nvars_);
    Exponent e(nvars_);
    for (const auto& [ea, ca] : terms_) {
      for (const auto& [eb, cb] : o.terms_) {
        for (std::size_t i = 0; i < nvars_; ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
        r.add_term(e, field_->mul(ca, cb));
      }
    }
    return r;
  }

  MultiPoly scaled(Elem s) const {
    MultiPoly r(field_, nvars_);
    if (s == 0) return r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, field_->mul(c, s));
    return r;
  }

  MultiPoly pow(std::size_t n) const {
    MultiPoly r = constant(field_, nvars_, 1);
    for (std::size_t i = 0; i < n; ++i) r = r * *this;
    return r;
  }

  bool operator==(const MultiPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!out.empty()) out += " + ";
      const auto& [e, c] = *it;
      std::string mono;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += "x" + std::to_string(i + 1);
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      if (mono.empty()) {
        out += std::to_string(c);
      } else {
        out += (c == 1 ? "" : std::to_string(c) + "*") + mono;
      }
    }
    return out;
  }

 private:
  FieldPtr field_;
  std::size_t nvars_;
  std::map<Exponent, Elem> terms_;
};

/// Residue of p modulo the ideal (alpha): substitutes for the first
/// variable with a nonzero coefficient. Zero iff alpha divides p.
inline MultiPoly reduce_mod_linear(const MultiPoly& p, const Covector& alpha) {
  const FieldCtx& f = p.field();
  std::size_t j = 0;
  while (j < alpha.size() && alpha[j] == 0) ++j;
  if (j == alpha.size()) throw Error(Errc::ZeroCovector, "cannot reduce modulo the zero form");
  const std::size_t n = p.nvars();
  // x_j = sum_{i != j} (-c_i / c_j) x_i
  Covector sub(n, 0);
  const Elem inv = f.inv(alpha[j]);
  for (std::size_t i = 0; i < n; ++i) {
    if (i != j) sub[i] = f.neg(f.mul(alpha[i], inv));
  }
  const MultiPoly lin = MultiPoly::linear(p.field_ptr(), sub);
  std::vector<MultiPoly> powers{MultiPoly::constant(p.field_ptr(), n, 1)};
  MultiPoly out(p.field_ptr(), n);
  for (const auto& [e, c] : p.terms()) {
    while (powers.size() <= e[j]) powers.push_back(powers.back() * lin);
    Exponent rest = e;
    rest[j] = 0;
    const MultiPoly term = MultiPoly::monomial(p.field_ptr(), rest, c) * powers[e[j]];
    for (const auto& [te, tc] : term.terms()) out.add_term(te, tc);
  }
  return out;
}

/// Q = product of the defining forms.
inline MultiPoly defining_polynomial(const Arrangement& arr) {
  MultiPoly q = MultiPoly::constant(arr.field_ptr(), arr.ell(), 1);
  for (const auto& h : arr.hyperplanes()) q = q * MultiPoly::linear(arr.field_ptr(), h.covector());
  return q;
}

/// delta = sum_i f_i d/dx_i with every f_i homogeneous of one degree.
class Derivation {
 public:
  Derivation(std::vector<MultiPoly> components, std::size_t degree)
      : comps_(std::move(components)), degree_(degree) {
    if (comps_.empty()) throw Error(Errc::DimensionMismatch, "derivation needs at least one component");
    for (const auto& c : comps_) {
      if (c.nvars() != comps_.size()) throw Error(Errc::DimensionMismatch, "component variable count");
      for (const auto& [e, coef] : c.terms()) {
        if (total_degree(e) != degree_) throw Error(Errc::DimensionMismatch, "derivation is not homogeneous");
      }
    }
  }

  std::size_t ell() const noexcept { return comps_.size(); }
  std::size_t degree() const noexcept { return degree_; }
  const std::vector<MultiPoly>& components() const noexcept { return comps_; }
  const MultiPoly& operator[](std::size_t i) const { return comps_[i]; }
  bool is_zero() const {
    for (const auto& c : comps_) {
      if (!c.is_zero()) return false;
    }
    return true;
  }

  /// delta(alpha) for a linear form alpha.
  MultiPoly apply(const Covector& alpha) const {
    MultiPoly r(comps_[0].field_ptr(), ell());
    for (std::size_t i = 0; i < ell(); ++i) {
      if (alpha[i] == 0) continue;
      for (const auto& [e, c] : comps_[i].terms()) r.add_term(e, comps_[i].field().mul(alpha[i], c));
    }
    return r;
  }

  /// delta(alpha_H) lies in alpha_H S for every H of the arrangement.
  bool is_logarithmic(const Arrangement& arr) const {
    for (const auto& h : arr.hyperplanes()) {
      if (!reduce_mod_linear(apply(h.covector()), h.covector()).is_zero()) return false;
    }
    return true;
  }

  Derivation multiplied(const MultiPoly& g) const {
    if (!g.is_homogeneous() || g.is_zero()) throw Error(Errc::DimensionMismatch, "multiplier must be homogeneous");
    std::vector<MultiPoly> out;
    for (const auto& c : comps_) out.push_back(c * g);
    return Derivation(std::move(out), degree_ + g.degree());
  }

  bool operator==(const Derivation& o) const { return degree_ == o.degree_ && comps_ == o.comps_; }

 private:
  std::vector<MultiPoly> comps_;
  std::size_t degree_;
};

/// delta_k = sum_i x_i^{q^k} d/dx_i; delta_0 is the Euler field.
inline Derivation frobenius_field(const FieldPtr& field, std::size_t ell, unsigned k) {
  std::size_t power = 1;
  for (unsigned i = 0; i < k; ++i) power *= field->cardinality();
  std::vector<MultiPoly> comps;
  for (std::size_t i = 0; i < ell; ++i) {
    comps.push_back(MultiPoly::variable(field, ell, i, static_cast<std::uint16_t>(power)));
  }
  return Derivation(std::move(comps), power);
}

inline Derivation euler_field(const FieldPtr& field, std::size_t ell) { return frobenius_field(field, ell, 0); }

/// Determinant of a square matrix of polynomials by cofactor expansion
/// along the first row.
inline MultiPoly poly_determinant(const std::vector<std::vector<MultiPoly>>& m) {
  const std::size_t n = m.size();
  if (n == 0) throw Error(Errc::WrongCount, "empty matrix");
  if (n == 1) return m[0][0];
  MultiPoly det(m[0][0].field_ptr(), m[0][0].nvars());
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<MultiPoly>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<MultiPoly> row;
      for (std::size_t cc = 0; cc < n; ++cc) {
        if (cc != c) row.push_back(m[r][cc]);
      }
      minor.push_back(std::move(row));
    }
    MultiPoly term = m[0][c] * poly_determinant(minor);
    det = (c % 2 == 0) ? det + term : det - term;
  }
  return det;
}

}  // namespace hypfree
