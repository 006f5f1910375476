#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

namespace epsilon {

/// Arbitrary-precision natural number. Codes of proofs are far beyond 64 bits.
using Natural = boost::multiprecision::cpp_int;

inline std::string to_string(const Natural& n) { return n.str(); }

/// Parses a non-empty decimal digit string. Throws std::invalid_argument.
Natural parse_natural(std::string_view digits);

inline bool fits_u64(const Natural& n) {
  return n >= 0 && n <= std::numeric_limits<std::uint64_t>::max();
}

}  // namespace epsilon
