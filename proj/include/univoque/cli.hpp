#pragma once

#include "univoque/numerics.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace univoque {

/// Base specs: "golden", "tribonacci", "kl", "kl:<bits>", "rational:p/q",
/// "decimal:1.3", "poly:c0,c1,...@lo,hi" or a bare "p/q" / decimal.
BaseValue parse_base(const std::string& text, Alphabet alphabet);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;
inline constexpr int usage = 2;
inline constexpr int precision = 3;
inline constexpr int uncertified = 4;
}  // namespace exit_code

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace univoque
