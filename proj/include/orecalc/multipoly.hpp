#pragma once

#include "orecalc/scalar.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace orecalc {

using Exponent = std::vector<std::uint32_t>;

// Sparse commutative polynomial over a Scalar domain. Terms are kept in a
// map keyed by exponent vectors, so iteration is lexicographic.
class MultiPoly {
public:
    using TermMap = std::map<Exponent, Scalar>;

    MultiPoly() : dom_(Domain::ZZ), nvars_(0) {}
    MultiPoly(Domain d, std::size_t nvars) : dom_(d), nvars_(nvars) {}
    static MultiPoly constant(const Scalar &c, std::size_t nvars);
    static MultiPoly variable(Domain d, std::size_t nvars, std::size_t idx);
    static MultiPoly monomial(const Scalar &c, const Exponent &e);

    Domain domain() const { return dom_; }
    std::size_t nvars() const { return nvars_; }
    const TermMap &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Scalar constant_term() const;
    Scalar coeff(const Exponent &e) const;

    // Adds c*x^e in place.
    void add_term(const Exponent &e, const Scalar &c);

    MultiPoly operator+(const MultiPoly &o) const;
    MultiPoly operator-(const MultiPoly &o) const;
    MultiPoly operator-() const;
    MultiPoly operator*(const MultiPoly &o) const;
    MultiPoly operator*(const Scalar &s) const;
    MultiPoly &operator+=(const MultiPoly &o);
    MultiPoly &operator-=(const MultiPoly &o);
    MultiPoly &operator*=(const MultiPoly &o) { return *this = *this * o; }
    bool operator==(const MultiPoly &o) const;
    bool operator!=(const MultiPoly &o) const { return !(*this == o); }
    MultiPoly pow(unsigned e) const;

    int degree(std::size_t var) const;
    int total_degree() const;
    // Coefficients with respect to one variable: result[i] is the coefficient
    // of var^i (a polynomial in the same ring not involving var).
    std::vector<MultiPoly> coeffs_in(std::size_t var) const;
    static MultiPoly from_coeffs_in(std::size_t var, const std::vector<MultiPoly> &cs, Domain d,
                                    std::size_t nvars);
    // Leading coefficient with respect to var.
    MultiPoly lc_in(std::size_t var) const;

    // Leading term under lexicographic order on exponent vectors.
    const std::pair<const Exponent, Scalar> &lex_lead() const;

    // Substitutes x_var -> gamma*x_var + tau.
    MultiPoly substitute_affine(std::size_t var, const Scalar &gamma, const Scalar &tau) const;
    // Substitutes x_var -> x_var + x_other.
    MultiPoly substitute_shift_by_var(std::size_t var, std::size_t other) const;
    MultiPoly derivative(std::size_t var) const;
    // Evaluates x_var at an integer or scalar value.
    MultiPoly evaluate(std::size_t var, const Scalar &v) const;
    // Value at the origin.
    Scalar at_origin() const { return constant_term(); }

    // Changes the number of variables: old variable i becomes map[i].
    MultiPoly remap(std::size_t new_nvars, const std::vector<std::size_t> &map) const;
    // Converts coefficients to another domain (ZZ -> QQ, ZZ/QQ -> QQ_t, or
    // QQ -> ZZ when all coefficients are integers).
    MultiPoly to_domain(Domain d) const;

    int compare(const MultiPoly &o) const;
    std::string str(const std::vector<std::string> &names) const;

private:
    Domain dom_;
    std::size_t nvars_;
    TermMap terms_;
};

std::vector<std::string> default_names(std::size_t n, const std::string &stem = "x");

struct ContentPrimitive {
    Scalar c;
    MultiPoly g;
};

// f = c*g with g primitive and c canonical.
ContentPrimitive content_primitive(const MultiPoly &f);
Scalar content(const MultiPoly &f);

struct PseudoDivision {
    MultiPoly s; // lc_x(g)^(deg f - deg g + 1), or 1 when deg f < deg g
    MultiPoly q;
    MultiPoly h;
};

// s*f = q*g + h with deg_x h < deg_x g.
PseudoDivision pseudo_divide(const MultiPoly &f, const MultiPoly &g, std::size_t var);

// Exact quotient a/b if b divides a in the polynomial ring.
std::optional<MultiPoly> divide_exact(const MultiPoly &a, const MultiPoly &b);
MultiPoly exact_quotient(const MultiPoly &a, const MultiPoly &b);

// Determinant of the Sylvester matrix of f and g with respect to var.
MultiPoly resultant(const MultiPoly &f, const MultiPoly &g, std::size_t var);

// Greatest common divisor in R[x1..xn], normalized to canonical leading
// coefficient (positive over ZZ, 1 over QQ, monic in t over QQ[t]).
MultiPoly poly_gcd(const MultiPoly &a, const MultiPoly &b);
MultiPoly poly_lcm(const MultiPoly &a, const MultiPoly &b);
// Multiplies by the unit that makes the lexicographic leading coefficient
// canonical.
MultiPoly normalize_unit(const MultiPoly &f);

// Nonnegative integer roots of a polynomial in a single variable (all other
// variables must be absent). Over QQ[t] a root must annihilate every
// t-coefficient.
std::vector<long> nonneg_integer_roots(const MultiPoly &f);

} // namespace orecalc
