#pragma once

// Computational checks of the freeness classification over F_q in
// dimension 3 (and the dimension-4 analogue at q = 2): per-arrangement
// verifiers, supersolvable-resolution chain certificates, and helpers shared
// by the census engine.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypfree/arrangement.hpp"
#include "hypfree/counting.hpp"
#include "hypfree/derivations.hpp"
#include "hypfree/error.hpp"
#include "hypfree/lattice.hpp"

namespace hypfree {

namespace detail {

inline std::int64_t ipow(std::int64_t b, unsigned e) {
  std::int64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r = checked_mul(r, b);
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Addition-deletion

/// Freeness of one arrangement as seen by the addition-deletion checks.
struct FreeState {
  bool free = false;
  std::vector<std::size_t> exponents;  // sorted
};

inline FreeState free_state(const FreenessReport& r) { return {r.verdict == Verdict::Free, r.exponents}; }

/// A central arrangement of n lines in dimension 2 is free with exponents
/// (1, n-1); (0, 1) for a single line, (0, 0) when empty.
inline std::vector<std::size_t> rank_two_exponents(std::size_t n) {
  if (n == 0) return {0, 0};
  return {std::min<std::size_t>(1, n - 1), std::max<std::size_t>(1, n - 1)};
}

/// The three two-imply-the-third implications for (A, A', A''), with A''
/// given by its exponents (always free here). Returns false iff one of them
/// is violated.
inline bool addition_deletion_consistent(const FreeState& whole, const FreeState& deleted,
                                         const std::vector<std::size_t>& restricted) {
  auto sorted = [](std::vector<std::size_t> e) {
    std::sort(e.begin(), e.end());
    return e;
  };
  auto removed = [](std::vector<std::size_t> e, std::size_t i) {
    e.erase(e.begin() + static_cast<std::ptrdiff_t>(i));
    return e;
  };
  // (1) + (2) => (3)
  if (whole.free && deleted.free) {
    for (std::size_t i = 0; i < whole.exponents.size(); ++i) {
      if (whole.exponents[i] == 0) continue;
      auto dec = whole.exponents;
      --dec[i];
      if (sorted(dec) == deleted.exponents && removed(whole.exponents, i) != restricted) return false;
    }
  }
  // (1) + (3) => (2)
  if (whole.free) {
    for (std::size_t i = 0; i < whole.exponents.size(); ++i) {
      if (whole.exponents[i] == 0 || removed(whole.exponents, i) != restricted) continue;
      auto dec = whole.exponents;
      --dec[i];
      if (!deleted.free || deleted.exponents != sorted(dec)) return false;
    }
  }
  // (2) + (3) => (1)
  if (deleted.free) {
    for (std::size_t i = 0; i < deleted.exponents.size(); ++i) {
      if (removed(deleted.exponents, i) != restricted) continue;
      auto inc = deleted.exponents;
      ++inc[i];
      if (!whole.free || whole.exponents != sorted(inc)) return false;
    }
  }
  return true;
}

inline bool verify_addition_deletion(const Arrangement& arr, const Hyperplane& h) {
  if (arr.ell() != 3) throw Error(Errc::PreconditionMismatch, "addition-deletion check is for ell = 3");
  arr.index_of(h);
  const auto whole = free_state(decide_freeness(arr));
  const auto deleted = free_state(decide_freeness(deletion(arr, h)));
  const std::size_t rsize = restriction(arr, h).restricted.size();
  return addition_deletion_consistent(whole, deleted, rank_two_exponents(rsize));
}

// ---------------------------------------------------------------------------
// Vanishing of chi at powers of q

/// If chi(q^k) = 0 for some k <= k_max then chi(q^j) = 0 for 1 <= j <= k.
inline bool verify_lemma_decreasing_zeros(const CharPoly& chi, std::int64_t q, unsigned k_max) {
  if (k_max > 3) throw Error(Errc::PreconditionMismatch, "k_max must be at most 3");
  for (unsigned k = 1; k <= k_max; ++k) {
    if (chi.eval(detail::ipow(q, k)) != 0) continue;
    for (unsigned j = 1; j <= k; ++j) {
      if (chi.eval(detail::ipow(q, j)) != 0) return false;
    }
  }
  return true;
}

inline bool verify_lemma_decreasing_zeros(const Arrangement& arr, unsigned k_max) {
  return verify_lemma_decreasing_zeros(char_poly(arr), arr.q(), k_max);
}

/// chi(A, 1) = 0 for every nonempty central arrangement.
inline bool chi_vanishes_at_one(const Arrangement& arr, const CharPoly& chi) {
  return arr.empty() || chi.eval(1) == 0;
}

struct AllCharacterization {
  bool is_all = false;          // A = A_all
  bool has_max_size = false;    // |A| = (q^ell - 1)/(q - 1)
  bool chi_is_all = false;      // chi = prod_{i<ell} (t - q^i)
  bool chi_vanishes = false;    // chi(q^{ell-1}) = 0
  bool agree() const {
    return is_all == has_max_size && has_max_size == chi_is_all && chi_is_all == chi_vanishes;
  }
};

inline CharPoly all_char_poly(std::int64_t q, std::size_t ell) {
  std::vector<std::int64_t> roots;
  for (std::size_t i = 0; i < ell; ++i) roots.push_back(detail::ipow(q, static_cast<unsigned>(i)));
  return CharPoly::from_roots(roots);
}

inline AllCharacterization all_characterization(const Arrangement& arr, const CharPoly& chi) {
  AllCharacterization c;
  c.is_all = arr == all_hyperplanes(arr.field_ptr(), arr.ell());
  c.has_max_size = arr.size() == hyperplane_count(arr.q(), arr.ell());
  c.chi_is_all = chi == all_char_poly(arr.q(), arr.ell());
  c.chi_vanishes = chi.eval(detail::ipow(arr.q(), static_cast<unsigned>(arr.ell() - 1))) == 0;
  return c;
}

inline bool verify_all_characterization(const Arrangement& arr) {
  return all_characterization(arr, char_poly(arr)).agree();
}

// ---------------------------------------------------------------------------
// Classification from |A| and chi alone (ell = 3)

enum class SizeClause { AtLeast2q, TwoQMinus1, TwoQMinus2, BelowThreshold, NotApplicable };

inline std::string_view clause_name(SizeClause c) {
  switch (c) {
    case SizeClause::AtLeast2q: return "ge_2q";
    case SizeClause::TwoQMinus1: return "eq_2q-1";
    case SizeClause::TwoQMinus2: return "eq_2q-2";
    case SizeClause::BelowThreshold: return "below_threshold";
    case SizeClause::NotApplicable: return "n/a";
  }
  return "?";
}

struct FreenessPrediction {
  SizeClause clause;
  Verdict verdict;  // Free or NotFree
};

inline SizeClause size_clause(std::size_t size, std::int64_t q, std::size_t ell) {
  if (ell != 3) return SizeClause::NotApplicable;
  const auto n = static_cast<std::int64_t>(size);
  if (n >= 2 * q) return SizeClause::AtLeast2q;
  if (n == 2 * q - 1) return SizeClause::TwoQMinus1;
  if (n == 2 * q - 2) return SizeClause::TwoQMinus2;
  return SizeClause::BelowThreshold;
}

/// Free iff chi(q) = 0 for |A| >= 2q; additionally iff chi = (t-1)(t-q+1)^2
/// at |A| = 2q-1 and iff chi = (t-1)(t-q+1)(t-q+2) at |A| = 2q-2.
inline FreenessPrediction predict_freeness(std::size_t size, std::int64_t q, std::size_t ell, const CharPoly& chi) {
  const SizeClause clause = size_clause(size, q, ell);
  if (clause == SizeClause::NotApplicable) throw Error(Errc::PreconditionMismatch, "classification is for ell = 3");
  if (clause == SizeClause::BelowThreshold) {
    throw Error(Errc::BelowThreshold, "|A| = " + std::to_string(size) + " < 2q - 2 = " + std::to_string(2 * q - 2));
  }
  bool free = chi.eval(q) == 0;
  if (clause == SizeClause::TwoQMinus1) free = free || chi == CharPoly::from_roots({1, q - 1, q - 1});
  if (clause == SizeClause::TwoQMinus2) free = free || chi == CharPoly::from_roots({1, q - 1, q - 2});
  return {clause, free ? Verdict::Free : Verdict::NotFree};
}

inline FreenessPrediction predict_freeness(const Arrangement& arr) {
  if (arr.ell() != 3) throw Error(Errc::PreconditionMismatch, "classification is for ell = 3");
  if (size_clause(arr.size(), arr.q(), 3) == SizeClause::BelowThreshold) {
    return predict_freeness(arr.size(), arr.q(), 3, CharPoly{});
  }
  return predict_freeness(arr.size(), arr.q(), 3, char_poly(arr));
}

// ---------------------------------------------------------------------------
// Supersolvable resolution chains

/// Exponents (1, q, ..., q^{ell-2}, |A| - 1 - q - ... - q^{ell-2}).
inline std::vector<std::int64_t> resolution_exponents(std::int64_t q, std::size_t ell, std::size_t size) {
  std::vector<std::int64_t> e;
  std::int64_t sum = 0;
  for (std::size_t i = 0; i + 1 < ell; ++i) {
    e.push_back(detail::ipow(q, static_cast<unsigned>(i)));
    sum += e.back();
  }
  e.push_back(static_cast<std::int64_t>(size) - sum);
  return e;
}

struct ChainStep {
  Hyperplane added;                      // A_{i+1} = A_i + added
  std::vector<std::int64_t> exponents;   // recorded for A_i
  std::size_t restriction_size;          // |A_{i+1}''| onto `added`
};

struct ChainCertificate {
  Arrangement start;
  std::vector<ChainStep> steps;
  std::vector<std::int64_t> top_exponents;  // recorded for A_all
};

/// Saito check of delta_0, ..., delta_{ell-1} on A_all(F_q^ell).
inline bool all_hyperplanes_saito(const FieldPtr& field, std::size_t ell) {
  const Arrangement all = all_hyperplanes(field, ell);
  std::vector<Derivation> ds;
  for (unsigned k = 0; k < ell; ++k) ds.push_back(frobenius_field(field, ell, k));
  const auto s = saito_check(all, ds);
  if (!s) return false;
  std::vector<std::size_t> expect;
  for (std::size_t k = 0; k < ell; ++k) expect.push_back(static_cast<std::size_t>(detail::ipow(field->cardinality(), k)));
  return s->exponents == expect;
}

/// Adds the smallest missing canonical covector until A_all is reached,
/// recording exponent bookkeeping at each step. Requires chi(A, q^{ell-2}) = 0.
inline ChainCertificate supersolvable_resolution(const Arrangement& arr) {
  if (arr.ell() < 2) throw Error(Errc::PreconditionMismatch, "chain needs ell >= 2");
  const std::int64_t q = arr.q();
  const CharPoly chi = char_poly(arr);
  if (chi.eval(detail::ipow(q, static_cast<unsigned>(arr.ell() - 2))) != 0) {
    throw Error(Errc::ChiNonzero, "chi(A, q^(ell-2)) = " +
                                      std::to_string(chi.eval(detail::ipow(q, static_cast<unsigned>(arr.ell() - 2)))));
  }
  const Arrangement all = all_hyperplanes(arr.field_ptr(), arr.ell());
  ChainCertificate cert{arr, {}, resolution_exponents(q, arr.ell(), all.size())};
  Arrangement cur = arr;
  for (const auto& h : all.hyperplanes()) {
    if (cur.contains(h)) continue;
    const Arrangement next = addition(cur, h);
    cert.steps.push_back({h, resolution_exponents(q, arr.ell(), cur.size()), restriction(next, h).restricted.size()});
    cur = next;
  }
  return cert;
}

/// Re-verifies a chain independently of how it was produced: the additions
/// reach A_all, A_all has the recorded exponents (Saito, unless the caller
/// has already checked it), and at every step the restriction is all of
/// H's hyperplanes, whose exponents are the first ell-1 recorded ones, with
/// the last exponent dropping by one on deletion.
inline bool check_chain(const ChainCertificate& cert, bool verify_top = true) {
  const Arrangement& start = cert.start;
  const std::size_t ell = start.ell();
  const std::int64_t q = start.q();
  const Arrangement all = all_hyperplanes(start.field_ptr(), ell);
  if (cert.top_exponents != resolution_exponents(q, ell, all.size())) return false;
  if (verify_top && !all_hyperplanes_saito(start.field_ptr(), ell)) return false;
  const auto full_restriction = hyperplane_count(q, ell - 1);
  Arrangement cur = start;
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    const auto& s = cert.steps[i];
    if (cur.contains(s.added)) return false;
    const Arrangement next = addition(cur, s.added);
    const std::size_t rsize = restriction(next, s.added).restricted.size();
    if (rsize != s.restriction_size || rsize != full_restriction) return false;
    const auto& upper = (i + 1 < cert.steps.size()) ? cert.steps[i + 1].exponents : cert.top_exponents;
    if (s.exponents.size() != ell || upper.size() != ell) return false;
    std::int64_t head = 0;
    for (std::size_t k = 0; k + 1 < ell; ++k) {
      if (s.exponents[k] != upper[k]) return false;
      head += upper[k];
    }
    if (s.exponents[ell - 1] + 1 != upper[ell - 1]) return false;
    if (head != static_cast<std::int64_t>(rsize)) return false;
    cur = next;
  }
  return cur == all;
}

// ---------------------------------------------------------------------------
// Line completion at |A| = 2q - 1

struct LineCompletion {
  Vec line;                         // canonical direction of L
  Hyperplane added;                 // H ⊇ L, H not in A
  std::size_t complement_size = 0;  // |M(A)|
  std::size_t restriction_size = 0; // |(A + H)''| onto H
  FreenessReport augmented;         // decision for A + H
  bool valid = false;               // A + H free with (1, q-1, q) and |A''| = q
};

inline std::optional<LineCompletion> line_completion(const Arrangement& arr) {
  const std::int64_t q = arr.q();
  if (arr.ell() != 3 || static_cast<std::int64_t>(arr.size()) != 2 * q - 1) {
    throw Error(Errc::PreconditionMismatch, "line completion needs ell = 3 and |A| = 2q - 1");
  }
  if (char_poly(arr) != CharPoly::from_roots({1, q - 1, q - 1})) {
    throw Error(Errc::PreconditionMismatch, "line completion needs chi = (t-1)(t-q+1)^2");
  }
  const FieldCtx& f = arr.field();
  std::vector<Vec> complement;
  std::vector<Elem> v(3);
  const auto cs = arr.covectors();
  for (std::uint64_t p = 0; p < static_cast<std::uint64_t>(q * q * q); ++p) {
    detail::decode_point(p, arr.q(), v);
    if (detail::off_all(f, cs, v)) complement.push_back(v);
  }
  if (static_cast<std::int64_t>(complement.size()) != q - 1) return std::nullopt;
  // All complement points must span a single line.
  if (rank(f, complement, 3) != 1) return std::nullopt;
  Vec dir = canonical_span(f, complement, 3).front();
  LineCompletion lc{dir, Hyperplane::from_covector(f, {1, 0, 0}), complement.size(), 0, {}, false};
  const Arrangement all = all_hyperplanes(arr.field_ptr(), 3);
  bool found = false;
  for (const auto& h : all.hyperplanes()) {
    if (arr.contains(h) || h.evaluate(f, dir) != 0) continue;
    lc.added = h;
    found = true;
    break;
  }
  if (!found) return std::nullopt;
  const Arrangement aug = addition(arr, lc.added);
  lc.restriction_size = restriction(aug, lc.added).restricted.size();
  lc.augmented = decide_freeness(aug);
  const std::vector<std::size_t> want{1, static_cast<std::size_t>(q - 1), static_cast<std::size_t>(q)};
  std::vector<std::size_t> want_sorted = want;
  std::sort(want_sorted.begin(), want_sorted.end());
  lc.valid = lc.augmented.verdict == Verdict::Free && lc.augmented.exponents == want_sorted &&
             static_cast<std::int64_t>(lc.restriction_size) == q;
  return lc;
}

// ---------------------------------------------------------------------------
// Dimension 4 over F_2

struct HigherDimReport {
  CharPoly chi;
  bool factorization_ok = false;  // chi = (t-1)(t-2)(t-4)(t-(|A|-7))
  bool chain_ok = false;
  std::vector<std::int64_t> exponents;
  bool saito_attempted = false;
  bool saito_ok = false;
  std::string note;
  bool ok() const { return factorization_ok && chain_ok && (!saito_attempted || saito_ok); }
};

inline HigherDimReport verify_higher_dim(const Arrangement& arr, bool attempt_saito = true,
                                         std::size_t max_unknowns = 4000) {
  if (arr.ell() != 4 || arr.q() != 2) throw Error(Errc::PreconditionMismatch, "defined for ell = 4, q = 2");
  HigherDimReport rep;
  rep.chi = char_poly(arr);
  if (rep.chi.eval(4) != 0) throw Error(Errc::PreconditionMismatch, "chi(A, 4) != 0");
  rep.exponents = resolution_exponents(2, 4, arr.size());
  rep.factorization_ok = rep.chi == CharPoly::from_roots(rep.exponents);
  rep.chain_ok = check_chain(supersolvable_resolution(arr));
  if (attempt_saito) {
    FreenessOptions opts;
    opts.max_unknowns = max_unknowns;
    const auto fr = decide_freeness(arr, opts);
    if (fr.verdict == Verdict::Free) {
      rep.saito_attempted = true;
      std::vector<std::size_t> want(rep.exponents.begin(), rep.exponents.end());
      std::sort(want.begin(), want.end());
      rep.saito_ok = fr.exponents == want;
    } else if (fr.verdict == Verdict::NotFree) {
      rep.saito_attempted = true;
      rep.saito_ok = false;
    } else {
      rep.note = "generator search incomplete; chain certificate only (" + fr.note + ")";
    }
  }
  return rep;
}

}  // namespace hypfree
