#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace orecalc {

enum class Domain { ZZ, QQ, QQ_t };

std::string domain_name(Domain d);

// Dense univariate polynomial over the rationals. c[i] is the coefficient of
// t^i; there are never trailing zeros, so the zero polynomial is empty.
class UPolyQ {
public:
    UPolyQ() = default;
    explicit UPolyQ(std::vector<mpq_class> coeffs);
    static UPolyQ constant(const mpq_class &c);
    static UPolyQ monomial(const mpq_class &c, std::size_t deg);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<mpq_class> &coeffs() const { return c_; }
    mpq_class coeff(std::size_t i) const { return i < c_.size() ? c_[i] : mpq_class(0); }
    const mpq_class &lc() const { return c_.back(); }
    mpq_class eval(const mpq_class &x) const;

    UPolyQ operator+(const UPolyQ &o) const;
    UPolyQ operator-(const UPolyQ &o) const;
    UPolyQ operator-() const;
    UPolyQ operator*(const UPolyQ &o) const;
    UPolyQ operator*(const mpq_class &s) const;
    bool operator==(const UPolyQ &o) const { return c_ == o.c_; }
    bool operator!=(const UPolyQ &o) const { return !(*this == o); }

    // Euclidean division: *this = q*d + r with deg r < deg d.
    void divmod(const UPolyQ &d, UPolyQ &q, UPolyQ &r) const;
    UPolyQ monic() const;
    UPolyQ derivative() const;

    int compare(const UPolyQ &o) const;
    std::string str(const std::string &var = "t") const;

private:
    void trim();
    std::vector<mpq_class> c_;
};

// Monic gcd over QQ; gcd(0,0) = 0.
UPolyQ gcd(const UPolyQ &a, const UPolyQ &b);

// An element of the coefficient PID: ZZ, QQ or QQ[t].
class Scalar {
public:
    Scalar() : dom_(Domain::ZZ), v_(mpz_class(0)) {}
    explicit Scalar(Domain d);
    Scalar(Domain d, long v);
    Scalar(Domain d, const mpz_class &v);
    Scalar(Domain d, const mpq_class &v);
    explicit Scalar(const UPolyQ &p);
    static Scalar t();

    Domain domain() const { return dom_; }
    bool is_zero() const;
    bool is_one() const;
    bool is_unit() const;
    // Constant in QQ[t] sense (degree <= 0); always true for ZZ and QQ.
    bool is_constant() const;
    // For ZZ/QQ the sign of the value; for QQ[t] the sign of the leading
    // coefficient.
    int sign() const;

    const mpz_class &integer() const;
    const mpq_class &rational() const;
    const UPolyQ &poly() const;
    // Value as a rational number; throws if non-constant in QQ[t].
    mpq_class to_rational() const;

    Scalar operator+(const Scalar &o) const;
    Scalar operator-(const Scalar &o) const;
    Scalar operator-() const;
    Scalar operator*(const Scalar &o) const;
    Scalar &operator+=(const Scalar &o) { return *this = *this + o; }
    Scalar &operator-=(const Scalar &o) { return *this = *this - o; }
    Scalar &operator*=(const Scalar &o) { return *this = *this * o; }
    bool operator==(const Scalar &o) const;
    bool operator!=(const Scalar &o) const { return !(*this == o); }
    Scalar pow(unsigned e) const;

    // The unit u with *this / u canonical; 1 for zero.
    Scalar unit_part() const;
    Scalar canonical() const;
    Scalar inverse() const;

    // Total order used for deterministic tie-breaking.
    int compare(const Scalar &o) const;
    std::string str() const;

private:
    Domain dom_;
    std::variant<mpz_class, mpq_class, UPolyQ> v_;
};

void require_same_domain(const Scalar &a, const Scalar &b);

struct GcdExt {
    Scalar g, c1, c2;
};

// g = c1*a + c2*b with g canonical. Over ZZ, c1 is the representative of
// smallest absolute value (ties resolved towards the positive one).
GcdExt gcd_ext(const Scalar &a, const Scalar &b);
Scalar gcd(const Scalar &a, const Scalar &b);
Scalar lcm(const Scalar &a, const Scalar &b);
// True iff a | b; on success stores b/a in *quot when given (a != 0).
bool divides(const Scalar &a, const Scalar &b, Scalar *quot = nullptr);
// b / a, throwing PreconditionError if a does not divide b.
Scalar exact_div(const Scalar &b, const Scalar &a);

} // namespace orecalc
