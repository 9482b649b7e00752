#include "fractree/error.hpp"

namespace fractree {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NotPrefixFree: return "NotPrefixFree";
    case Errc::SymbolOutOfRange: return "SymbolOutOfRange";
    case Errc::EmptyTerminal: return "EmptyTerminal";
    case Errc::DegenerateTree: return "DegenerateTree";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::NonConvergence: return "NonConvergence";
    case Errc::NotInExpansion: return "NotInExpansion";
    case Errc::NotRightResolving: return "NotRightResolving";
    case Errc::NotIrreducible: return "NotIrreducible";
    case Errc::MultipleEdgeNotToRoot: return "MultipleEdgeNotToRoot";
    case Errc::CycleAvoidsRoot: return "CycleAvoidsRoot";
    case Errc::NoRootInBracket: return "NoRootInBracket";
    case Errc::BlockLengthTooLarge: return "BlockLengthTooLarge";
    case Errc::NotAClosedWalk: return "NotAClosedWalk";
    case Errc::NoSuchWalk: return "NoSuchWalk";
    case Errc::TableMiss: return "TableMiss";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::ParseFailure: return "ParseFailure";
    case Errc::InvalidFormat: return "InvalidFormat";
    case Errc::ArithmeticOverflow: return "ArithmeticOverflow";
    case Errc::InternalCheckFailed: return "InternalCheckFailed";
  }
  return "UnknownError";
}

namespace {

std::string compose(Errc code, const std::string& detail) {
  std::string msg = errc_name(code);
  if (!detail.empty()) {
    msg += ": ";
    msg += detail;
  }
  return msg;
}

}  // namespace

Error::Error(Errc code, const std::string& detail)
    : std::runtime_error(compose(code, detail)), code_(code) {}

void raise(Errc code, const std::string& detail) { throw Error(code, detail); }

}  // namespace fractree
