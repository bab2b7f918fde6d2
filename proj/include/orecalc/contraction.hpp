#pragma once

#include "orecalc/groebner.hpp"
#include "orecalc/multipoly.hpp"
#include "orecalc/ore.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace orecalc {

// Operators of order at most k in the contraction of L, as a spanning set
// over R[x].
struct SubmoduleBasis {
    OreOperator L;
    std::size_t k = 0;
    std::vector<OreOperator> generators;
};

// Generators of the kth coefficient ideal of the contraction.
struct CoefficientIdealBasis {
    std::size_t k = 0;
    std::vector<MultiPoly> generators;
};

struct ContractionResult {
    std::vector<OreOperator> basis;
    OreOperator desing;
    Scalar sat_constant;
    std::size_t bound_used = 0;
};

SubmoduleBasis submodule_basis(const OreOperator &L, std::size_t k);
CoefficientIdealBasis coefficient_ideal(const SubmoduleBasis &M);

// An element of M_k whose leading coefficient has minimal x-degree in I_k.
OreOperator desingularized_operator(const OreOperator &L, std::size_t k);
OreOperator desingularized_operator(const SubmoduleBasis &M);

// Order of L plus the largest shift j >= 0 at which lc(x+j) and the trailing
// coefficient share a root.
std::size_t order_bound_shift(const OreOperator &L);

ContractionResult contraction_basis(const OreOperator &L, std::size_t k);

// Diagnostics are appended to notes when given.
OreOperator completely_desingularized(const OreOperator &L, std::size_t k, std::vector<std::string> *notes = nullptr);

bool is_R_primitive(const OreOperator &P);

// Number of factors p removable from L at order k.
std::size_t removable_multiplicity(const OreOperator &L, const MultiPoly &p, std::size_t k);

// gamma_i = beta_i * prod_{j<i} alpha(n - j) for i = 1..t.
std::vector<MultiPoly> factorial_product_order1(const MultiPoly &alpha, const std::vector<MultiPoly> &betas);

// True iff F is an R[x]-combination of gens (no multiplication by D).
bool in_span(const OreOperator &F, const std::vector<OreOperator> &gens);
// Mutual containment of the R[x]-spans.
bool same_span(const std::vector<OreOperator> &A, const std::vector<OreOperator> &B);

// Multiplicity of p in f (f nonzero, p not a unit).
std::size_t multiplicity(const MultiPoly &f, const MultiPoly &p);

// Element of minimal x-degree in the ideal of R[x] generated by gens, as a
// combination sum cofactors[i] * gens[i]. Ties at the minimal degree go to
// the smaller canonical content; a note is added for each tie.
struct MinimalElement {
    MultiPoly f;
    std::vector<MultiPoly> cofactors;
};
MinimalElement minimal_degree_element(const std::vector<MultiPoly> &gens, std::vector<std::string> *notes = nullptr);

} // namespace orecalc
