#pragma once

#include "orecalc/multipoly.hpp"
#include "orecalc/ore.hpp"

#include <string>
#include <vector>

namespace orecalc {

// Reads an operator written with + - * / ^, parentheses, integer literals,
// the variable names of the signature, D<name> for the matching D, and t for
// the parameter of QQ[t]. Products are Ore products, so "Dn*n" means
// (n+1)*Dn in the shift algebra. Division is allowed only by a nonzero
// constant and must be exact in the coefficient domain.
OreOperator parse_operator(const std::string &text, const SigPtr &sig);

// Same grammar without D-symbols.
MultiPoly parse_poly(const std::string &text, Domain d, const std::vector<std::string> &names);

} // namespace orecalc
