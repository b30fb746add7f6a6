#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypfree {

enum class Errc {
  NotPrime,
  DegreeOverflow,
  FieldMismatch,
  ZeroCovector,
  DimensionMismatch,
  HyperplaneNotPresent,
  EnumerationOverflow,
  WrongField,
  LatticeOverflow,
  Overflow,
  NotLogarithmic,
  WrongCount,
  NotEssential,
  NotSubarrangement,
  BelowThreshold,
  ChiNonzero,
  PreconditionMismatch,
  CeilingExceeded,
  Parse,
};

inline std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::DegreeOverflow: return "DegreeOverflow";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::ZeroCovector: return "ZeroCovector";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::HyperplaneNotPresent: return "HyperplaneNotPresent";
    case Errc::EnumerationOverflow: return "EnumerationOverflow";
    case Errc::WrongField: return "WrongField";
    case Errc::LatticeOverflow: return "LatticeOverflow";
    case Errc::Overflow: return "Overflow";
    case Errc::NotLogarithmic: return "NotLogarithmic";
    case Errc::WrongCount: return "WrongCount";
    case Errc::NotEssential: return "NotEssential";
    case Errc::NotSubarrangement: return "NotSubarrangement";
    case Errc::BelowThreshold: return "BelowThreshold";
    case Errc::ChiNonzero: return "ChiNonzero";
    case Errc::PreconditionMismatch: return "PreconditionMismatch";
    case Errc::CeilingExceeded: return "CeilingExceeded";
    case Errc::Parse: return "Parse";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace hypfree
