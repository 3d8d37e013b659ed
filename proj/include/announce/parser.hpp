#pragma once

#include <string>

#include "announce/formula.hpp"

namespace announce {

// Concrete grammar (whitespace insensitive, `->` right-associative, unary
// operators bind tightest):
//
//   formula := imp
//   imp     := or ("->" imp)?
//   or      := and ("|" and)*
//   and     := unary ("&" unary)*
//   unary   := "~" unary | "K" IDENT unary | "Kh" IDENT unary
//            | "[" formula "]" unary | "<" formula ">" unary
//            | "[!]" unary | "<!>" unary
//            | "[G" group "]" unary | "<G" group ">" unary
//            | "[C" group "]" unary | "<C" group ">" unary
//            | "true" | "false" | IDENT | "(" formula ")"
//   group   := "{" (IDENT ("," IDENT)*)? "}"
//
// IDENT is [A-Za-z_][A-Za-z0-9_]* minus the keywords true/false/K/Kh.
// Errors carry 1-based line:column positions.
Formula parse_formula(const std::string& text);

}  // namespace announce
