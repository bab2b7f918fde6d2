#pragma once

#include "orecalc/ore.hpp"
#include "orecalc/parse.hpp"

#include <string>

namespace fixtures {

using namespace orecalc;

inline SigPtr shift_zz() { return OreSignature::shift(Domain::ZZ, {"n"}); }
inline SigPtr shift_qt() { return OreSignature::shift(Domain::QQ_t, {"n"}); }
inline SigPtr diff_zz() { return OreSignature::differential(Domain::ZZ, {"x"}); }

// Recurrence with a removable factor (1+16n)^2 and its contraction partners.
inline const char *AH_L = "(1+16*n)^2*Dn^2 - 32*(7+16*n)*Dn - (1+n)*(17+16*n)^2";
inline const char *AH_T = "64*Dn^3 + (16*n+23)*(16*n-7)*Dn^2 - (576*n+928)*Dn - (16*n+23)*(16*n+25)*(n+1)";
inline const char *AH_TT = "Dn^3 + (128*n^3-104*n^2-11*n-3)*Dn^2 + (-256*n^2+127*n+94)*Dn - (128*n^2+24*n-131)*(1+n)^2";

// Differential operator whose contraction needs order 4.
inline const char *BM_L = "x*Dx^2 - (x+2)*Dx + 2";
inline const char *BM_T = "Dx^4 - Dx^3";

// Shift operator over QQ[t].
inline const char *QT_L = "(n-1)*(n+t)*Dn + n + t + 1";
inline const char *QT_T1 = "(2+t)*n*Dn^2 + (4-n+t)*Dn - 1";
inline const char *QT_T2 = "(n-1)*n*Dn^2 + 2*(n-1)*Dn + 1";

// ZZ-primitive annihilator of binomial(4n, n) + 3^n.
inline const char *EX1_L =
    "3*(n+2)*(3*n+4)*(3*n+5)*(7*n+3)*(25*n^2+21*n+2)*Dn^2"
    " + (-58975*n^6-347289*n^5-798121*n^4-902739*n^3-519976*n^2-141300*n-13680)*Dn"
    " + 24*(2*n+1)*(4*n+1)*(4*n+3)*(7*n+10)*(25*n^2+71*n+48)";

inline OreOperator parse(const char *s, const SigPtr &sig) { return parse_operator(s, sig); }

} // namespace fixtures
