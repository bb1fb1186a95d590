#pragma once

#include <stdexcept>
#include <string>

namespace schublc {

enum class Errc {
  ParseError,
  NotWeaklyDecreasing,
  InvalidContext,
  DoesNotFit,
  BoxOutsideDiagram,
  EmptyPath,
  InvalidPath,
  InvalidPattern,
  NotAdmissible,
  NotGrassmannian,
  InvalidPair,
  BudgetExceeded,
  RankOutOfRange,
  UnexpectedFactorLabel,
  InternalInconsistency,
};

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::ParseError: return "ParseError";
    case Errc::NotWeaklyDecreasing: return "NotWeaklyDecreasing";
    case Errc::InvalidContext: return "InvalidContext";
    case Errc::DoesNotFit: return "DoesNotFit";
    case Errc::BoxOutsideDiagram: return "BoxOutsideDiagram";
    case Errc::EmptyPath: return "EmptyPath";
    case Errc::InvalidPath: return "InvalidPath";
    case Errc::InvalidPattern: return "InvalidPattern";
    case Errc::NotAdmissible: return "NotAdmissible";
    case Errc::NotGrassmannian: return "NotGrassmannian";
    case Errc::InvalidPair: return "InvalidPair";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::RankOutOfRange: return "RankOutOfRange";
    case Errc::UnexpectedFactorLabel: return "UnexpectedFactorLabel";
    case Errc::InternalInconsistency: return "InternalInconsistency";
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

}  // namespace schublc
