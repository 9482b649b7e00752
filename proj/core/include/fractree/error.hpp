#pragma once

#include <stdexcept>
#include <string>

namespace fractree {

// Every failure mode surfaced by the library. The enumerator name (as
// returned by errc_name) is the stable identifier printed by the CLI.
enum class Errc {
  NotPrefixFree,
  SymbolOutOfRange,
  EmptyTerminal,
  DegenerateTree,
  LengthMismatch,
  NonConvergence,
  NotInExpansion,
  NotRightResolving,
  NotIrreducible,
  MultipleEdgeNotToRoot,
  CycleAvoidsRoot,
  NoRootInBracket,
  BlockLengthTooLarge,
  NotAClosedWalk,
  NoSuchWalk,
  TableMiss,
  IndexOutOfRange,
  ParseFailure,
  InvalidFormat,
  ArithmeticOverflow,
  InternalCheckFailed,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& detail = {});

}  // namespace fractree
