#pragma once

#include "epsilon/ast.hpp"

#include <string>

namespace epsilon {

/// Numerals up to this value print as S-chains, larger ones in decimal.
inline constexpr unsigned kMaxChainNumeral = 16;

/// Normalized, parseable text. Bound variables are named from their hints,
/// renamed only where a hint would capture or shadow.
std::string print(const Term& t);
std::string print(const Formula& f);

}  // namespace epsilon
