#pragma once

// Text and JSON renderings of the analysis results. JSON uses nlohmann::json.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypfree/arrangement.hpp"
#include "hypfree/census.hpp"
#include "hypfree/counting.hpp"
#include "hypfree/derivations.hpp"
#include "hypfree/harness.hpp"
#include "hypfree/io.hpp"
#include "hypfree/lattice.hpp"

namespace hypfree {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Characteristic polynomial and counts

struct Evaluation {
  unsigned k = 0;
  std::int64_t t = 0;                       // q^k
  std::int64_t polynomial = 0;
  std::optional<std::uint64_t> extension;   // absent when over the point ceiling
  std::optional<std::uint64_t> tuples;
  bool agree() const {
    return (!extension || static_cast<std::int64_t>(*extension) == polynomial) &&
           (!tuples || static_cast<std::int64_t>(*tuples) == polynomial);
  }
};

struct ChiReport {
  std::string header;
  std::size_t size = 0;
  std::size_t rank = 0;
  CharPoly chi;
  std::optional<std::vector<std::int64_t>> roots;
  std::vector<Evaluation> evaluations;
  bool agree() const {
    for (const auto& e : evaluations) {
      if (!e.agree()) return false;
    }
    return true;
  }
};

inline Evaluation evaluate_with_oracles(const Arrangement& arr, const CharPoly& chi, unsigned k) {
  Evaluation ev;
  ev.k = k;
  ev.t = detail::ipow(arr.q(), k);
  ev.polynomial = chi.eval(ev.t);
  try {
    ev.extension = count_complement_extension(arr, k);
  } catch (const Error& err) {
    if (err.code() != Errc::EnumerationOverflow) throw;
  }
  try {
    ev.tuples = crapo_rota_count(arr, k);
  } catch (const Error& err) {
    if (err.code() != Errc::EnumerationOverflow) throw;
  }
  return ev;
}

inline ChiReport chi_report(const Arrangement& arr, unsigned k_max = 3) {
  ChiReport r;
  r.header = format_header(arr.field(), arr.ell());
  r.size = arr.size();
  r.rank = rank(arr);
  r.chi = char_poly(arr);
  r.roots = integer_roots(r.chi);
  for (unsigned k = 1; k <= k_max; ++k) r.evaluations.push_back(evaluate_with_oracles(arr, r.chi, k));
  return r;
}

inline std::string optional_count(const std::optional<std::uint64_t>& v) {
  return v ? std::to_string(*v) : std::string("skipped");
}

inline std::string chi_line(const CharPoly& chi, const std::optional<std::vector<std::int64_t>>& roots) {
  std::string out = chi.to_string();
  if (roots) out += " = " + factored_form(*roots);
  return out;
}

inline std::string render_text(const ChiReport& r) {
  std::ostringstream os;
  os << r.header << "  |A|=" << r.size << " rank=" << r.rank << "\n";
  os << "chi(t) = " << chi_line(r.chi, r.roots) << "\n";
  for (const auto& e : r.evaluations) {
    os << "chi(" << e.t << ") = " << e.polynomial << "  extension=" << optional_count(e.extension)
       << " tuples=" << optional_count(e.tuples) << "  " << (e.agree() ? "AGREE" : "DISAGREE") << "\n";
  }
  return os.str();
}

inline json to_json(const CharPoly& chi, const std::optional<std::vector<std::int64_t>>& roots) {
  json j;
  j["coefficients"] = chi.coefficients_high_first();
  j["text"] = chi.to_string();
  j["roots"] = roots ? json(*roots) : json(nullptr);
  j["factored"] = roots ? json(factored_form(*roots)) : json(nullptr);
  return j;
}

inline json to_json(const Evaluation& e) {
  return {{"k", e.k},
          {"t", e.t},
          {"polynomial", e.polynomial},
          {"extension", e.extension ? json(*e.extension) : json(nullptr)},
          {"tuples", e.tuples ? json(*e.tuples) : json(nullptr)},
          {"agree", e.agree()}};
}

inline json to_json(const ChiReport& r) {
  json j;
  j["field"] = r.header;
  j["size"] = r.size;
  j["rank"] = r.rank;
  j["chi"] = to_json(r.chi, r.roots);
  j["evaluations"] = json::array();
  for (const auto& e : r.evaluations) j["evaluations"].push_back(to_json(e));
  j["agree"] = r.agree();
  return j;
}

// ---------------------------------------------------------------------------
// Freeness

inline json element_json(const FieldCtx& f, Elem x) {
  if (f.degree() == 1) return x;
  return f.prime_coefficients(x);
}

/// Each component as a list of [exponent vector, coefficient] pairs.
inline json to_json(const Derivation& d) {
  json comps = json::array();
  for (const auto& c : d.components()) {
    json terms = json::array();
    for (const auto& [e, coef] : c.terms()) terms.push_back(json::array({e, element_json(c.field(), coef)}));
    comps.push_back(terms);
  }
  return {{"degree", d.degree()}, {"components", comps}};
}

inline json to_json(const FreenessReport& r, const FieldCtx& f) {
  json j;
  j["verdict"] = verdict_name(r.verdict);
  j["exponents"] = r.exponents;
  j["certificate"] = certificate_name(r.certificate);
  j["generator_degrees"] = r.generator_degrees;
  j["hilbert"] = r.hilbert;
  j["chi"] = to_json(r.chi, r.roots);
  j["terao_consistent"] = r.terao_consistent;
  j["saito_scalar"] = r.verdict == Verdict::Free ? element_json(f, r.saito_scalar) : json(nullptr);
  j["basis"] = json::array();
  for (const auto& d : r.basis) j["basis"].push_back(to_json(d));
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline std::string render_text(const FreenessReport& r, const Arrangement& arr) {
  std::ostringstream os;
  os << format_header(arr.field(), arr.ell()) << "  |A|=" << arr.size() << "\n";
  os << "chi(t) = " << chi_line(r.chi, r.roots) << "\n";
  os << "verdict: " << verdict_name(r.verdict);
  if (r.verdict == Verdict::Free) {
    os << " exponents (";
    for (std::size_t i = 0; i < r.exponents.size(); ++i) os << (i ? "," : "") << r.exponents[i];
    os << ")";
  }
  os << "\ncertificate: " << certificate_name(r.certificate) << "\n";
  os << "generator degrees:";
  for (auto d : r.generator_degrees) os << " " << d;
  os << "\ndim D(A)_d:";
  for (auto h : r.hilbert) os << " " << h;
  os << "\n";
  if (r.verdict == Verdict::Free) {
    os << "det = " << format_element(arr.field(), r.saito_scalar) << " * Q\n";
    for (std::size_t g = 0; g < r.basis.size(); ++g) {
      os << "theta_" << g + 1 << " (degree " << r.basis[g].degree() << "):";
      for (std::size_t i = 0; i < r.basis[g].ell(); ++i) {
        os << (i ? ", " : " ") << r.basis[g][i].to_string();
      }
      os << "\n";
    }
  }
  if (!r.terao_consistent) os << "WARNING: exponents do not match the roots of chi\n";
  if (!r.note.empty()) os << "note: " << r.note << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Census

inline const char* kCensusColumns =
    "id\tsize\trank\tchi\troots\tchi_q\tchi_q2\tcount_k1\ttuples_k1\tcount_k2\ttuples_k2\tverdict\texponents\t"
    "certificate\tclause\tpredicted\torbit_size\tpattern\tflags";

namespace detail {

template <class T>
std::string join(const std::vector<T>& v, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    if constexpr (std::is_same_v<T, std::string>) out += v[i];
    else out += std::to_string(v[i]);
  }
  return out;
}

inline std::string dash_if_empty(const std::string& s) { return s.empty() ? "-" : s; }

}  // namespace detail

inline std::string census_tsv_row(const ClassificationRecord& r) {
  std::ostringstream os;
  os << r.id << '\t' << r.size << '\t' << r.rank << '\t' << detail::join(r.chi.coefficients_high_first()) << '\t'
     << (r.roots ? detail::dash_if_empty(detail::join(*r.roots)) : "-") << '\t' << r.chi_q << '\t' << r.chi_q2
     << '\t' << r.count_k1 << '\t' << r.tuples_k1 << '\t' << r.count_k2 << '\t' << r.tuples_k2 << '\t'
     << verdict_name(r.verdict) << '\t' << detail::dash_if_empty(detail::join(r.exponents)) << '\t'
     << certificate_name(r.certificate) << '\t' << clause_name(r.clause) << '\t'
     << (r.predicted ? std::string(verdict_name(*r.predicted)) : std::string("-")) << '\t' << r.orbit_size << '\t'
     << detail::dash_if_empty(r.exponent_pattern) << '\t' << detail::dash_if_empty(detail::join(r.flags));
  return os.str();
}

inline std::string census_tsv(const CensusResult& res) {
  std::string out = std::string(kCensusColumns) + "\n";
  for (const auto& r : res.records) out += census_tsv_row(r) + "\n";
  return out;
}

inline json to_json(const CensusSummary& s) {
  json j;
  j["field"] = {{"p", s.p}, {"e", s.e}, {"q", s.q}};
  j["ell"] = s.ell;
  j["mode"] = mode_name(s.mode);
  if (s.mode == CensusMode::Sample) {
    j["sample"] = {{"requested", s.requested}, {"seed", s.seed}};
  }
  j["records"] = s.records;
  j["arrangements_covered"] = s.arrangements_covered;
  j["oracle_disagreements"] = s.oracle_disagreements;
  j["classification_violations"] = s.classification_violations;
  j["lemma_violations"] = s.lemma_violations;
  j["theorem_violations"] = s.theorem_violations;
  j["undetermined"] = s.undetermined;
  j["addition_deletion"] = {{"pairs", s.addition_deletion_pairs},
                            {"violations", s.addition_deletion_violations},
                            {"recursion_violations", s.recursion_violations}};
  j["all_hyperplanes_saito"] = s.all_hyperplanes_saito;
  json by_size = json::array();
  for (const auto& [n, total] : s.total_by_size) {
    const auto it = s.free_by_size.find(n);
    by_size.push_back({{"size", n}, {"total", total}, {"free", it == s.free_by_size.end() ? 0 : it->second}});
  }
  j["by_size"] = by_size;
  j["verdicts"] = s.verdicts;
  j["exponent_patterns"] = s.exponent_patterns;
  j["findings"] = json::array();
  for (const auto& f : s.findings) {
    j["findings"].push_back(
        {{"kind", f.kind}, {"id", f.id}, {"detail", f.detail}, {"arrangement", f.arrangement}, {"command", f.command}});
  }
  return j;
}

}  // namespace hypfree
