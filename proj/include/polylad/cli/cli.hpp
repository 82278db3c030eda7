#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "polylad/mp/real.hpp"

namespace polylad::cli {

// Exit codes: 0 success, 1 a check failed, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Value of a discover expression: a product of powers of catalog names, pi,
// log2, integers, zeta(k), beta(k), lambda(k), S(n,p,a1..a8), monomial(a,b)
// and ladder(NAME,n).
mp::MpReal eval_expr(const std::string& expr, mp::Bits P);

// Splits at top-level commas.
std::vector<std::string> split_top_level(const std::string& list);

}  // namespace polylad::cli
