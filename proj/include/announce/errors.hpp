#pragma once

#include <stdexcept>
#include <string>

namespace announce {

enum class Errc {
  overlapping_blocks,
  uncovered_state,
  unknown_state,
  unknown_agent,
  unknown_prop,
  empty_restriction,
  signature_mismatch,
  syntax_error,
  unknown_operator,
  not_epistemic,
  palette_clash,
  invalid_tiling,
  index_out_of_range,
  chain_broken,
  quantifier_budget_exceeded,
  bad_input,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::overlapping_blocks: return "OverlappingBlocks";
    case Errc::uncovered_state: return "UncoveredState";
    case Errc::unknown_state: return "UnknownState";
    case Errc::unknown_agent: return "UnknownAgent";
    case Errc::unknown_prop: return "UnknownProp";
    case Errc::empty_restriction: return "EmptyRestriction";
    case Errc::signature_mismatch: return "SignatureMismatch";
    case Errc::syntax_error: return "SyntaxError";
    case Errc::unknown_operator: return "UnknownOperator";
    case Errc::not_epistemic: return "NotEpistemic";
    case Errc::palette_clash: return "PaletteClash";
    case Errc::invalid_tiling: return "InvalidTiling";
    case Errc::index_out_of_range: return "IndexOutOfRange";
    case Errc::chain_broken: return "ChainBroken";
    case Errc::quantifier_budget_exceeded: return "QuantifierBudgetExceeded";
    case Errc::bad_input: return "BadInput";
  }
  return "Error";
}

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace announce
