#pragma once

#include "orecalc/multipoly.hpp"
#include "orecalc/ore.hpp"

#include <cstddef>
#include <vector>

namespace orecalc {

// A Groebner basis of a left ideal. When certificates are recorded,
// elements[i] = sum_j certificates[i][j] * inputs[j].
struct GroebnerBasis {
    std::vector<OreOperator> elements;
    TermOrder order;
    std::vector<OreOperator> inputs;
    std::vector<std::vector<OreOperator>> certificates;

    bool has_certificates() const { return !certificates.empty(); }
};

struct GBOptions {
    bool certificates = false;
    // Module mode: these x-indices encode the positions of a free module.
    // Every term carries exactly one of them with exponent 1, and pairs whose
    // heads sit at different positions are skipped.
    std::vector<std::size_t> position_vars;
    // Produce the reduced basis (inter-reduced heads, reduced tails,
    // canonical head coefficients, ascending heads).
    bool reduced = true;
    // Inside the engine, also replace a coefficient by its remainder modulo a
    // non-dividing head coefficient. Curbs integer growth; the resulting
    // basis still has no quasi-divisible monomial.
    bool euclidean = true;
    // The input generates a module closed under division by constants, so
    // new elements may be divided by their content. Ignored with certificates.
    bool primitive = false;
};

// Full reduction of F modulo P. On return F - result = sum cofactors[j]*P[j].
OreOperator reduce(const OreOperator &F, const std::vector<OreOperator> &P, const TermOrder &ord,
                   std::vector<OreOperator> *cofactors = nullptr);
// Keeps HM(F) and reduces every other term modulo G, replacing coefficients
// by remainders where no exact quotient exists. Canonical when G is a
// Groebner basis.
OreOperator reduce_tail(const OreOperator &F, const std::vector<OreOperator> &G, const TermOrder &ord);
// True iff HM(F) is quasi-divisible by some HM(P[j]).
bool top_reducible(const OreOperator &F, const std::vector<OreOperator> &P, const TermOrder &ord);

OreOperator spol(const OreOperator &G1, const OreOperator &G2, const TermOrder &ord);
OreOperator gpol(const OreOperator &G1, const OreOperator &G2, const TermOrder &ord);

GroebnerBasis buchberger(const std::vector<OreOperator> &P, const TermOrder &ord, const GBOptions &opt = {});
bool is_groebner(const std::vector<OreOperator> &G, const TermOrder &ord, const GBOptions &opt = {});

// Reduces to zero modulo a Groebner basis.
bool ideal_member(const GroebnerBasis &G, const OreOperator &F);
// Mutual containment of the left ideals generated by A and B.
bool same_ideal(const std::vector<OreOperator> &A, const std::vector<OreOperator> &B, const TermOrder &ord);

// Groebner basis of the ideal intersected with the subalgebra free of the
// given variables (indices into alpha|beta). ord must eliminate them.
GroebnerBasis eliminate(const std::vector<OreOperator> &P, const std::vector<std::size_t> &eliminated,
                        const TermOrder &ord, const GBOptions &opt = {});

// Groebner basis of I : c^infinity with respect to ord.
GroebnerBasis saturate_const(const std::vector<OreOperator> &P, const Scalar &c, const TermOrder &ord);

// Row vectors v with v*A = 0, for an m x k matrix A over R[x]. The result
// generates the whole syzygy module.
using PolyMatrix = std::vector<std::vector<MultiPoly>>;
PolyMatrix kernel(const PolyMatrix &A);
// True iff v lies in the R[x]-span of the rows.
bool module_member(const std::vector<MultiPoly> &v, const PolyMatrix &rows);

} // namespace orecalc
