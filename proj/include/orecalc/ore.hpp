#pragma once

#include "orecalc/multipoly.hpp"
#include "orecalc/scalar.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

namespace orecalc {

enum class DeltaKind { Zero, Derivation };

// One pair (x_i, D_i) with sigma(x_i) = gamma*x_i + tau and delta(x_i) equal
// to 0 or 1.
struct OrePair {
    std::string name;
    Scalar gamma;
    Scalar tau;
    DeltaKind delta = DeltaKind::Zero;

    bool is_commutative() const { return delta == DeltaKind::Zero && gamma.is_one() && tau.is_zero(); }
    bool operator==(const OrePair &o) const {
        return name == o.name && gamma == o.gamma && tau == o.tau && delta == o.delta;
    }
};

// A term of the expansion D^b x^g = sum coeff * x^xe * D^de for one pair.
struct CommTerm {
    Scalar coeff;
    std::uint32_t xe;
    std::uint32_t de;
};

class OreSignature;
using SigPtr = std::shared_ptr<const OreSignature>;

class OreSignature {
public:
    OreSignature(Domain d, std::vector<OrePair> pairs);

    static SigPtr make(Domain d, std::vector<OrePair> pairs);
    static SigPtr shift(Domain d, const std::vector<std::string> &names);
    static SigPtr differential(Domain d, const std::vector<std::string> &names);
    static SigPtr commutative(Domain d, const std::vector<std::string> &names);

    Domain domain() const { return dom_; }
    std::size_t n() const { return pairs_.size(); }
    const OrePair &pair(std::size_t i) const { return pairs_.at(i); }
    const std::vector<OrePair> &pairs() const { return pairs_; }
    std::vector<std::string> x_names() const;
    std::string d_name(std::size_t i) const { return "D" + pairs_.at(i).name; }
    bool is_shift(std::size_t i) const;
    bool is_differential(std::size_t i) const;

    // sigma_i^k applied to a polynomial in the x-variables (k may be negative).
    MultiPoly apply_sigma(const MultiPoly &f, std::size_t i, long k = 1) const;
    // delta_i applied to a polynomial in the x-variables.
    MultiPoly derive(const MultiPoly &f, std::size_t i) const;
    // Normal-ordered expansion of D_i^b x_i^g (memoized, thread safe).
    std::vector<CommTerm> commute(std::size_t i, std::uint32_t b, std::uint32_t g) const;
    // The unit r with HM(D^beta x^alpha) = r x^alpha D^beta, i.e. the product
    // of gamma_i^(beta_i * alpha_i).
    Scalar head_unit(const Exponent &alpha, const Exponent &beta) const;

    bool same_as(const OreSignature &o) const { return dom_ == o.dom_ && pairs_ == o.pairs_; }

private:
    const std::vector<CommTerm> &commute_locked(std::size_t i, std::uint32_t b, std::uint32_t g) const;

    Domain dom_;
    std::vector<OrePair> pairs_;
    mutable std::mutex mu_;
    mutable std::map<std::tuple<std::size_t, std::uint32_t, std::uint32_t>, std::vector<CommTerm>> cache_;
};

void require_same_signature(const SigPtr &a, const SigPtr &b);

// Term orders on combined exponent vectors (alpha | beta) of length 2n.
// Blocks are compared in sequence; inside a graded block the total degree
// decides first and ties go to the larger exponent of the last listed
// variable, then the one before it; inside a lex block the first listed
// variable is most significant.
struct OrderBlock {
    std::vector<std::size_t> vars;
    bool lex = false;
};

class TermOrder {
public:
    TermOrder() = default;
    explicit TermOrder(std::vector<OrderBlock> blocks) : blocks_(std::move(blocks)) {}

    // D-block dominant, then x-block; both graded.
    static TermOrder ore_default(std::size_t n);
    // Single graded block over the given number of variables.
    static TermOrder graded(std::size_t nvars);
    static TermOrder lex(std::size_t nvars);
    // Blocks: eliminated variables first (graded), then the kept ones in the
    // default arrangement (D-part before x-part).
    static TermOrder elimination(std::size_t n, const std::vector<std::size_t> &eliminated);

    const std::vector<OrderBlock> &blocks() const { return blocks_; }
    int compare(const Exponent &a, const Exponent &b) const;
    bool less(const Exponent &a, const Exponent &b) const { return compare(a, b) < 0; }
    // True iff every block mentioning an eliminated variable precedes every
    // block mentioning a kept one, and no block mixes the two.
    bool eliminates(const std::vector<std::size_t> &eliminated) const;

private:
    std::vector<OrderBlock> blocks_;
};

struct Monomial {
    Scalar coeff;
    Exponent term; // alpha | beta
};

// a s |q b t : a | b and s <= t componentwise.
bool quasi_divides(const Monomial &m1, const Monomial &m2);

class OreOperator {
public:
    using TermMap = std::map<Exponent, Scalar>;

    OreOperator() = default;
    explicit OreOperator(SigPtr sig);
    static OreOperator constant(SigPtr sig, const Scalar &c);
    static OreOperator x(SigPtr sig, std::size_t i);
    static OreOperator d(SigPtr sig, std::size_t i);
    static OreOperator monomial(SigPtr sig, const Scalar &c, const Exponent &term);
    // Embeds a polynomial in the x-variables.
    static OreOperator from_poly(SigPtr sig, const MultiPoly &p);
    // Sum of coeffs[beta] * D^beta with polynomial coefficients on the left.
    static OreOperator from_d_coefficients(SigPtr sig, const std::map<Exponent, MultiPoly> &cs);
    // Univariate helper: sum cs[k] * D_i^k.
    static OreOperator from_coeff_list(SigPtr sig, const std::vector<MultiPoly> &cs, std::size_t i = 0);

    const SigPtr &signature() const { return sig_; }
    const TermMap &terms() const { return terms_; }
    std::size_t n() const { return sig_->n(); }
    Domain domain() const { return sig_->domain(); }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add_term(const Exponent &term, const Scalar &c);

    OreOperator operator+(const OreOperator &o) const;
    OreOperator operator-(const OreOperator &o) const;
    OreOperator operator-() const;
    OreOperator operator*(const OreOperator &o) const;
    OreOperator operator*(const Scalar &s) const;
    OreOperator &operator+=(const OreOperator &o);
    OreOperator &operator-=(const OreOperator &o);
    bool operator==(const OreOperator &o) const;
    bool operator!=(const OreOperator &o) const { return !(*this == o); }
    OreOperator pow(unsigned e) const;

    // Coefficients of the D-monomials as polynomials in x.
    std::map<Exponent, MultiPoly> d_coefficients() const;
    // Degree in D_i (-1 for zero).
    int order(std::size_t i = 0) const;
    int total_order() const;
    // Univariate view in D_i: coefficient of D_i^k with all other D's absent.
    MultiPoly coeff(std::size_t k, std::size_t i = 0) const;
    MultiPoly lc(std::size_t i = 0) const;
    // Maximum x-degree over all coefficients.
    int x_degree() const;
    bool involves(std::size_t var_index) const;

    // Maps terms into a signature with more pairs: old pair i goes to map[i].
    OreOperator embed(SigPtr target, const std::vector<std::size_t> &map) const;
    OreOperator to_domain(SigPtr target) const;

    std::string str() const;

private:
    SigPtr sig_;
    TermMap terms_;
};

OreOperator multiply(const OreOperator &P, const OreOperator &Q);
// Calls fn(term, coeff) for every term of the normal-ordered product of the
// monomials a*ta and b*tb (a term may be reported more than once).
void for_each_product_term(const OreSignature &sig, const Exponent &ta, const Scalar &a, const Exponent &tb,
                           const Scalar &b, const std::function<void(const Exponent &, const Scalar &)> &fn);
// Same product; the outer loop over the monomials of P runs under OpenMP.
OreOperator multiply_parallel(const OreOperator &P, const OreOperator &Q);

struct Head {
    Exponent term;
    Scalar coeff;
    Monomial monomial() const { return {coeff, term}; }
};

Head head(const OreOperator &P, const TermOrder &ord);

// m3 with HM(m3 * m1) = m2 (m1 |q m2 required).
Monomial quasi_quotient(const OreSignature &sig, const Monomial &m1, const Monomial &m2);

// Rational function num/den over R[x] in reduced form.
struct RatFunc {
    MultiPoly num;
    MultiPoly den;

    static RatFunc make(MultiPoly num, MultiPoly den);
    static RatFunc poly(const MultiPoly &p);
    bool is_zero() const { return num.is_zero(); }
    RatFunc operator+(const RatFunc &o) const;
    RatFunc operator-(const RatFunc &o) const;
    RatFunc operator*(const RatFunc &o) const;
    RatFunc operator/(const RatFunc &o) const;
    RatFunc operator-() const { return {-num, den}; }
    bool operator==(const RatFunc &o) const { return num == o.num && den == o.den; }
};

// Univariate operator in D_0 with coefficients in the quotient field of R[x].
class RatOreOperator {
public:
    RatOreOperator() = default;
    explicit RatOreOperator(SigPtr sig) : sig_(std::move(sig)) {}
    static RatOreOperator from(const OreOperator &P);

    const SigPtr &signature() const { return sig_; }
    const std::vector<RatFunc> &coeffs() const { return c_; }
    int order() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const RatFunc &lc() const { return c_.back(); }
    RatFunc coeff(std::size_t k) const;
    void set_coeff(std::size_t k, const RatFunc &r);

    RatOreOperator operator+(const RatOreOperator &o) const;
    RatOreOperator operator-(const RatOreOperator &o) const;
    RatOreOperator operator*(const RatOreOperator &o) const;
    bool operator==(const RatOreOperator &o) const { return c_ == o.c_; }
    // D * this
    RatOreOperator d_times() const;
    RatFunc apply_sigma(const RatFunc &r, long k = 1) const;
    RatFunc derive(const RatFunc &r) const;

    std::string str() const;

private:
    void trim();
    SigPtr sig_;
    std::vector<RatFunc> c_;
};

// F = Q*G + R with deg R < deg G.
RatOreOperator rrem(const RatOreOperator &F, const RatOreOperator &G, RatOreOperator *quotient = nullptr);
bool right_divisible(const OreOperator &F, const OreOperator &L);

// Multivariate power series known up to total degree cap.
struct TruncatedSeries {
    std::size_t nvars = 0;
    unsigned cap = 0;
    std::map<Exponent, mpq_class> coeffs;

    mpq_class coeff(const Exponent &e) const;
    bool is_zero() const;
    // Support minimum under the graded order with last-variable priority.
    Exponent initial_exponent() const;
};

// Natural action on truncated series; all pairs must be differential or
// commutative. The result is valid up to cap minus the total D-order.
TruncatedSeries apply(const OreOperator &P, const TruncatedSeries &f);
// Natural action of a univariate shift operator on a sequence prefix;
// produces out_len values and needs out_len + order input values.
std::vector<mpq_class> apply(const OreOperator &P, const std::vector<mpq_class> &prefix, std::size_t out_len);

} // namespace orecalc
