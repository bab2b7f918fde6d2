#pragma once

#include "orecalc/multipoly.hpp"
#include "orecalc/ore.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace orecalc {

// Left ideals of K(x)[D_1..D_n] with K = QQ, stored fraction-free: every
// element has coefficients in ZZ[x] with gcd 1 and a head coefficient whose
// lexicographic leading coefficient is positive. Head terms are chosen by
// the graded order on D-exponents whose ties go to the larger exponent of
// the last variable.
struct WeylGB {
    SigPtr sig;
    std::vector<OreOperator> elements;

    std::size_t n() const { return sig->n(); }
    // D-exponents of the head terms, parallel to elements.
    std::vector<Exponent> head_terms() const;
    std::vector<MultiPoly> head_coefficients() const;
    bool is_d_finite() const;
    // D-exponents not divisible by any head term, ascending. Throws
    // PreconditionError when the set is infinite.
    std::vector<Exponent> parametric_exponents() const;
};

// Differential signature over ZZ with the given variable names.
SigPtr weyl_signature(const std::vector<std::string> &names);

// Reduced Groebner basis of K(x)[D] * P. Inputs may be over ZZ or QQ on a
// differential signature.
WeylGB weyl_gb(const std::vector<OreOperator> &P);
// Remainder of F modulo G over K(x), made primitive; zero iff F lies in the
// ideal.
OreOperator weyl_reduce(const OreOperator &F, const WeylGB &G);
bool weyl_member(const WeylGB &G, const OreOperator &F);
bool same_weyl_ideal(const WeylGB &A, const WeylGB &B);

std::size_t rank(const WeylGB &G);

// lcm of the head coefficients, normalized.
MultiPoly singular_locus(const WeylGB &G);
bool is_ordinary(const WeylGB &G, const std::vector<Scalar> &point);
bool origin_is_ordinary(const WeylGB &G);

// x^(m,..,m) * P = sum over parts of x^v * p_v(delta), with delta_i = x_i*D_i
// and p_v a polynomial in y_1..y_n.
struct EulerForm {
    std::size_t m = 0;
    std::map<Exponent, MultiPoly> parts;
};
EulerForm euler_rewrite(const OreOperator &P);
// Expands the parts back into an operator (equal to x^(m,..,m) * P).
OreOperator euler_expand(const EulerForm &E, const SigPtr &sig);

// The delta-polynomial of the smallest x-term of the Euler form; 0 for 0.
MultiPoly indicial_polynomial(const OreOperator &P);

struct ExponentCandidateSet {
    std::vector<Exponent> candidates;
    std::vector<MultiPoly> generators;
};
ExponentCandidateSet exponent_candidates(const WeylGB &G);

// The ideal generated by x_i*D_i - u_i, whose solutions are c*x^u.
WeylGB euler_ideal(const SigPtr &sig, const Exponent &u);
WeylGB intersect_left_ideals(const WeylGB &I, const WeylGB &J);

// Intersection of G with the Euler ideals of all u with |u| <= m outside B,
// where m is the largest |u| over B.
WeylGB remove_apparent(const WeylGB &G, const std::vector<Exponent> &B);

struct ApparentVerdict {
    bool apparent = false;
    std::vector<Exponent> candidates;
    // The witness when apparent; otherwise the last subset tried.
    std::vector<Exponent> B;
    WeylGB M;
    bool tried = false;
};
// Subsets of the candidate set of size rank(G) are tried in lexicographic
// order; the first one whose left multiple has an ordinary origin wins.
ApparentVerdict detect_apparent(const WeylGB &G, bool parallel = true);
// The same search over a supplied candidate set, for systems whose indicial
// ideal is not zero-dimensional.
ApparentVerdict detect_apparent(const WeylGB &G, const std::vector<Exponent> &candidates, bool parallel = true);

// One solution per parametric exponent lambda, with coefficient 1 at
// x^lambda * (1/lambda!) and 0 at the other parametric exponents.
std::vector<TruncatedSeries> series_solutions(const WeylGB &G, unsigned cap);

} // namespace orecalc
