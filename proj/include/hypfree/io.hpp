#pragma once

// Plain-text arrangement files.
//
//   # comment (also after a hyperplane)
//   q=3^1 ell=3
//   1 0 0
//   0 1 2
//
// One hyperplane per line, ell coefficients each. Over F_{p^e} with e > 1 a
// coefficient is written as e comma-separated integers in [0, p), the
// coordinates over F_p from the constant term up. Scalar multiples and
// duplicates collapse on load.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "hypfree/arrangement.hpp"
#include "hypfree/error.hpp"
#include "hypfree/field.hpp"

namespace hypfree {

namespace detail {

inline std::string trim_copy(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

inline std::uint64_t parse_uint(const std::string& tok, std::size_t line) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 18) {
    throw Error(Errc::Parse, "line " + std::to_string(line) + ": expected a non-negative integer, got '" + tok + "'");
  }
  return std::stoull(tok);
}

inline Error parse_error(std::size_t line, const std::string& msg) {
  return Error(Errc::Parse, "line " + std::to_string(line) + ": " + msg);
}

}  // namespace detail

inline std::string format_element(const FieldCtx& f, Elem x) {
  if (f.degree() == 1) return std::to_string(x);
  std::string out;
  for (auto c : f.prime_coefficients(x)) {
    if (!out.empty()) out += ",";
    out += std::to_string(c);
  }
  return out;
}

inline std::string format_header(const FieldCtx& f, std::size_t ell) {
  return "q=" + std::to_string(f.characteristic()) + "^" + std::to_string(f.degree()) + " ell=" + std::to_string(ell);
}

inline std::string format_arrangement(const Arrangement& arr) {
  std::string out = format_header(arr.field(), arr.ell()) + "\n";
  for (const auto& h : arr.hyperplanes()) {
    for (std::size_t i = 0; i < h.ell(); ++i) {
      if (i) out += " ";
      out += format_element(arr.field(), h.covector()[i]);
    }
    out += "\n";
  }
  return out;
}

/// Compact one-line id: covectors joined by ';', coefficients by '.'.
inline std::string arrangement_id(const Arrangement& arr) {
  if (arr.empty()) return "empty";
  std::string out;
  for (const auto& h : arr.hyperplanes()) {
    if (!out.empty()) out += ";";
    for (std::size_t i = 0; i < h.ell(); ++i) {
      if (i) out += ".";
      out += std::to_string(h.covector()[i]);
    }
  }
  return out;
}

inline Arrangement parse_arrangement(const std::string& text, std::uint64_t field_ceiling = kDefaultFieldCeiling) {
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  FieldPtr field;
  std::size_t ell = 0;
  std::vector<Covector> covectors;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = detail::trim_copy(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    std::istringstream toks(line);
    std::vector<std::string> parts;
    for (std::string t; toks >> t;) parts.push_back(t);
    if (!field) {
      std::uint64_t p = 0;
      unsigned e = 0;
      bool have_q = false;
      for (const auto& part : parts) {
        if (part.rfind("q=", 0) == 0) {
          const std::string v = part.substr(2);
          const auto caret = v.find('^');
          if (caret == std::string::npos) {
            try {
              std::tie(p, e) = split_prime_power(detail::parse_uint(v, lineno));
            } catch (const Error& err) {
              if (err.code() == Errc::Parse) throw;
              throw detail::parse_error(lineno, err.what());
            }
          } else {
            p = detail::parse_uint(v.substr(0, caret), lineno);
            e = static_cast<unsigned>(detail::parse_uint(v.substr(caret + 1), lineno));
          }
          have_q = true;
        } else if (part.rfind("ell=", 0) == 0) {
          ell = detail::parse_uint(part.substr(4), lineno);
        } else {
          throw detail::parse_error(lineno, "unexpected header token '" + part + "'");
        }
      }
      if (!have_q || ell == 0) throw detail::parse_error(lineno, "header must read q=<p>^<e> ell=<n>");
      try {
        field = make_field(p, e, field_ceiling);
      } catch (const Error& err) {
        throw detail::parse_error(lineno, err.what());
      }
      continue;
    }
    if (parts.size() != ell) {
      throw detail::parse_error(lineno, "expected " + std::to_string(ell) + " coefficients, got " +
                                            std::to_string(parts.size()));
    }
    Covector c;
    for (const auto& tok : parts) {
      std::vector<Elem> digits;
      std::stringstream ss(tok);
      for (std::string d; std::getline(ss, d, ',');) {
        const auto v = detail::parse_uint(d, lineno);
        if (v >= field->characteristic()) {
          throw detail::parse_error(lineno, "coefficient " + d + " outside [0, " +
                                                std::to_string(field->characteristic()) + ")");
        }
        digits.push_back(static_cast<Elem>(v));
      }
      if (digits.size() == 1 && field->degree() > 1) digits.resize(field->degree(), 0);
      if (digits.size() != field->degree()) {
        throw detail::parse_error(lineno, "element '" + tok + "' needs " + std::to_string(field->degree()) +
                                              " comma-separated coordinates");
      }
      c.push_back(field->from_prime_coefficients(digits));
    }
    if (std::all_of(c.begin(), c.end(), [](Elem x) { return x == 0; })) {
      throw Error(Errc::ZeroCovector, "line " + std::to_string(lineno) + ": zero covector");
    }
    covectors.push_back(std::move(c));
  }
  if (!field) throw Error(Errc::Parse, "missing header line q=<p>^<e> ell=<n>");
  return make_arrangement(field, ell, covectors);
}

}  // namespace hypfree
