#pragma once

// Surface grammar (ASCII keywords, parentheses allowed everywhere):
//
//   term    := "0" | digits | "S(" term ")" | ident | ident "(" term {"," term} ")"
//            | "eps" ident "." formula
//   formula := term "=" term | "not" formula | formula ("and"|"or"|"->") formula
//            | ("all"|"ex") ident ["<" term] "." formula
//
// Precedence: not > and > or > ->; "->" is right-associative, and/or are
// left-associative. Binder bodies extend as far to the right as possible.
// A decimal literal n abbreviates S(...S(0)...) with n applications.

#include "epsilon/ast.hpp"
#include "epsilon/errors.hpp"
#include "epsilon/signature.hpp"

#include <string_view>

namespace epsilon {

/// Throws ParseError carrying the offending position.
Term parse_term(std::string_view text, const Signature& sig);
Formula parse_formula(std::string_view text, const Signature& sig);

bool is_keyword(std::string_view word);
bool is_identifier(std::string_view word);

}  // namespace epsilon
