#include "orecalc/scalar.hpp"

#include "orecalc/errors.hpp"

#include <algorithm>
#include <sstream>

namespace orecalc {

std::string domain_name(Domain d) {
    switch (d) {
    case Domain::ZZ: return "ZZ";
    case Domain::QQ: return "QQ";
    case Domain::QQ_t: return "QQ_t";
    }
    return "?";
}

// ---------------------------------------------------------------- UPolyQ

UPolyQ::UPolyQ(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) {
    for (auto &x : c_) x.canonicalize();
    trim();
}

UPolyQ UPolyQ::constant(const mpq_class &c) { return UPolyQ({c}); }

UPolyQ UPolyQ::monomial(const mpq_class &c, std::size_t deg) {
    std::vector<mpq_class> v(deg + 1);
    v[deg] = c;
    return UPolyQ(std::move(v));
}

void UPolyQ::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

mpq_class UPolyQ::eval(const mpq_class &x) const {
    mpq_class r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

UPolyQ UPolyQ::operator+(const UPolyQ &o) const {
    std::vector<mpq_class> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return UPolyQ(std::move(r));
}

UPolyQ UPolyQ::operator-() const {
    UPolyQ r = *this;
    for (auto &x : r.c_) x = -x;
    return r;
}

UPolyQ UPolyQ::operator-(const UPolyQ &o) const { return *this + (-o); }

UPolyQ UPolyQ::operator*(const UPolyQ &o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<mpq_class> r(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return UPolyQ(std::move(r));
}

UPolyQ UPolyQ::operator*(const mpq_class &s) const {
    if (s == 0) return {};
    UPolyQ r = *this;
    for (auto &x : r.c_) x *= s;
    return r;
}

void UPolyQ::divmod(const UPolyQ &d, UPolyQ &q, UPolyQ &r) const {
    if (d.is_zero()) throw PreconditionError("division by zero polynomial");
    std::vector<mpq_class> rem = c_;
    int dd = d.degree();
    std::vector<mpq_class> quo;
    if (degree() >= dd) quo.resize(degree() - dd + 1);
    mpq_class inv = 1 / d.lc();
    for (int k = degree(); k >= dd; --k) {
        if (rem[k] == 0) continue;
        mpq_class f = rem[k] * inv;
        quo[k - dd] = f;
        for (int i = 0; i <= dd; ++i) rem[k - dd + i] -= f * d.c_[i];
    }
    q = UPolyQ(std::move(quo));
    r = UPolyQ(std::move(rem));
}

UPolyQ UPolyQ::monic() const {
    if (is_zero()) return {};
    return *this * mpq_class(1 / lc());
}

UPolyQ UPolyQ::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<mpq_class> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
    return UPolyQ(std::move(r));
}

int UPolyQ::compare(const UPolyQ &o) const {
    if (degree() != o.degree()) return degree() < o.degree() ? -1 : 1;
    for (int i = degree(); i >= 0; --i) {
        int s = cmp(c_[i], o.c_[i]);
        if (s != 0) return s < 0 ? -1 : 1;
    }
    return 0;
}

std::string UPolyQ::str(const std::string &var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const mpq_class &a = c_[i];
        if (a == 0) continue;
        mpq_class mag = abs(a);
        if (first) {
            if (a < 0) os << "-";
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        first = false;
        bool one = (mag == 1);
        if (i == 0) {
            os << mag.get_str();
        } else {
            if (!one) os << mag.get_str() << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

UPolyQ gcd(const UPolyQ &a, const UPolyQ &b) {
    UPolyQ x = a, y = b;
    while (!y.is_zero()) {
        UPolyQ q, r;
        x.divmod(y, q, r);
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(Domain d) : dom_(d) {
    switch (d) {
    case Domain::ZZ: v_ = mpz_class(0); break;
    case Domain::QQ: v_ = mpq_class(0); break;
    case Domain::QQ_t: v_ = UPolyQ(); break;
    }
}

Scalar::Scalar(Domain d, long v) : Scalar(d, mpz_class(v)) {}

Scalar::Scalar(Domain d, const mpz_class &v) : dom_(d) {
    switch (d) {
    case Domain::ZZ: v_ = v; break;
    case Domain::QQ: v_ = mpq_class(v); break;
    case Domain::QQ_t: v_ = UPolyQ::constant(mpq_class(v)); break;
    }
}

Scalar::Scalar(Domain d, const mpq_class &v) : dom_(d) {
    mpq_class q = v;
    q.canonicalize();
    switch (d) {
    case Domain::ZZ:
        if (q.get_den() != 1) throw DomainMismatch("non-integer value " + q.get_str() + " in ZZ");
        v_ = mpz_class(q.get_num());
        break;
    case Domain::QQ: v_ = q; break;
    case Domain::QQ_t: v_ = UPolyQ::constant(q); break;
    }
}

Scalar::Scalar(const UPolyQ &p) : dom_(Domain::QQ_t), v_(p) {}

Scalar Scalar::t() { return Scalar(UPolyQ::monomial(1, 1)); }

const mpz_class &Scalar::integer() const {
    if (dom_ != Domain::ZZ) throw DomainMismatch("expected ZZ scalar");
    return std::get<mpz_class>(v_);
}

const mpq_class &Scalar::rational() const {
    if (dom_ != Domain::QQ) throw DomainMismatch("expected QQ scalar");
    return std::get<mpq_class>(v_);
}

const UPolyQ &Scalar::poly() const {
    if (dom_ != Domain::QQ_t) throw DomainMismatch("expected QQ_t scalar");
    return std::get<UPolyQ>(v_);
}

mpq_class Scalar::to_rational() const {
    switch (dom_) {
    case Domain::ZZ: return mpq_class(integer());
    case Domain::QQ: return rational();
    case Domain::QQ_t:
        if (poly().degree() > 0) throw DomainMismatch("non-constant QQ_t scalar");
        return poly().coeff(0);
    }
    return 0;
}

bool Scalar::is_zero() const {
    switch (dom_) {
    case Domain::ZZ: return std::get<mpz_class>(v_) == 0;
    case Domain::QQ: return std::get<mpq_class>(v_) == 0;
    case Domain::QQ_t: return std::get<UPolyQ>(v_).is_zero();
    }
    return false;
}

bool Scalar::is_one() const {
    switch (dom_) {
    case Domain::ZZ: return std::get<mpz_class>(v_) == 1;
    case Domain::QQ: return std::get<mpq_class>(v_) == 1;
    case Domain::QQ_t: {
        const auto &p = std::get<UPolyQ>(v_);
        return p.degree() == 0 && p.lc() == 1;
    }
    }
    return false;
}

bool Scalar::is_unit() const {
    switch (dom_) {
    case Domain::ZZ: return abs(std::get<mpz_class>(v_)) == 1;
    case Domain::QQ: return !is_zero();
    case Domain::QQ_t: return std::get<UPolyQ>(v_).degree() == 0;
    }
    return false;
}

bool Scalar::is_constant() const {
    return dom_ != Domain::QQ_t || std::get<UPolyQ>(v_).degree() <= 0;
}

int Scalar::sign() const {
    switch (dom_) {
    case Domain::ZZ: return sgn(std::get<mpz_class>(v_));
    case Domain::QQ: return sgn(std::get<mpq_class>(v_));
    case Domain::QQ_t: {
        const auto &p = std::get<UPolyQ>(v_);
        return p.is_zero() ? 0 : sgn(p.lc());
    }
    }
    return 0;
}

void require_same_domain(const Scalar &a, const Scalar &b) {
    if (a.domain() != b.domain())
        throw DomainMismatch("scalar domains differ: " + domain_name(a.domain()) + " vs " +
                             domain_name(b.domain()));
}

Scalar Scalar::operator+(const Scalar &o) const {
    require_same_domain(*this, o);
    switch (dom_) {
    case Domain::ZZ: return Scalar(dom_, mpz_class(integer() + o.integer()));
    case Domain::QQ: return Scalar(dom_, mpq_class(rational() + o.rational()));
    case Domain::QQ_t: return Scalar(poly() + o.poly());
    }
    return {};
}

Scalar Scalar::operator-(const Scalar &o) const {
    require_same_domain(*this, o);
    switch (dom_) {
    case Domain::ZZ: return Scalar(dom_, mpz_class(integer() - o.integer()));
    case Domain::QQ: return Scalar(dom_, mpq_class(rational() - o.rational()));
    case Domain::QQ_t: return Scalar(poly() - o.poly());
    }
    return {};
}

Scalar Scalar::operator-() const {
    switch (dom_) {
    case Domain::ZZ: return Scalar(dom_, mpz_class(-integer()));
    case Domain::QQ: return Scalar(dom_, mpq_class(-rational()));
    case Domain::QQ_t: return Scalar(-poly());
    }
    return {};
}

Scalar Scalar::operator*(const Scalar &o) const {
    require_same_domain(*this, o);
    switch (dom_) {
    case Domain::ZZ: return Scalar(dom_, mpz_class(integer() * o.integer()));
    case Domain::QQ: return Scalar(dom_, mpq_class(rational() * o.rational()));
    case Domain::QQ_t: return Scalar(poly() * o.poly());
    }
    return {};
}

bool Scalar::operator==(const Scalar &o) const {
    if (dom_ != o.dom_) return false;
    switch (dom_) {
    case Domain::ZZ: return integer() == o.integer();
    case Domain::QQ: return rational() == o.rational();
    case Domain::QQ_t: return poly() == o.poly();
    }
    return false;
}

Scalar Scalar::pow(unsigned e) const {
    Scalar r(dom_, 1L), b = *this;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

Scalar Scalar::unit_part() const {
    if (is_zero()) return Scalar(dom_, 1L);
    switch (dom_) {
    case Domain::ZZ: return Scalar(dom_, long(sign()));
    case Domain::QQ: return *this;
    case Domain::QQ_t: return Scalar(UPolyQ::constant(poly().lc()));
    }
    return {};
}

Scalar Scalar::canonical() const {
    if (is_zero()) return *this;
    switch (dom_) {
    case Domain::ZZ: return Scalar(dom_, mpz_class(abs(integer())));
    case Domain::QQ: return Scalar(dom_, 1L);
    case Domain::QQ_t: return Scalar(poly().monic());
    }
    return {};
}

Scalar Scalar::inverse() const {
    if (!is_unit()) throw PreconditionError("scalar " + str() + " is not a unit");
    switch (dom_) {
    case Domain::ZZ: return *this;
    case Domain::QQ: return Scalar(dom_, mpq_class(1 / rational()));
    case Domain::QQ_t: return Scalar(UPolyQ::constant(mpq_class(1 / poly().lc())));
    }
    return {};
}

int Scalar::compare(const Scalar &o) const {
    require_same_domain(*this, o);
    int s = 0;
    switch (dom_) {
    case Domain::ZZ: s = cmp(integer(), o.integer()); break;
    case Domain::QQ: s = cmp(rational(), o.rational()); break;
    case Domain::QQ_t: s = poly().compare(o.poly()); break;
    }
    return s < 0 ? -1 : (s > 0 ? 1 : 0);
}

std::string Scalar::str() const {
    switch (dom_) {
    case Domain::ZZ: return integer().get_str();
    case Domain::QQ: return rational().get_str();
    case Domain::QQ_t: return poly().str("t");
    }
    return "?";
}

// ---------------------------------------------------------------- gcd family

namespace {

GcdExt gcd_ext_zz(const mpz_class &a, const mpz_class &b) {
    Domain d = Domain::ZZ;
    if (a == 0 && b == 0) return {Scalar(d), Scalar(d), Scalar(d)};
    mpz_class g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (b == 0) return {Scalar(d, g), Scalar(d, mpz_class(sgn(a))), Scalar(d)};
    // Choose the representative of s mod |b|/g with the smallest magnitude.
    mpz_class m = abs(b) / g;
    mpz_class c1 = s % m;
    if (c1 < 0) c1 += m;
    if (2 * c1 > m) c1 -= m;
    mpz_class c2 = (g - c1 * a) / b;
    return {Scalar(d, g), Scalar(d, c1), Scalar(d, c2)};
}

GcdExt gcd_ext_qt(const UPolyQ &a, const UPolyQ &b) {
    if (a.is_zero() && b.is_zero()) {
        Scalar z{UPolyQ()};
        return {z, z, z};
    }
    UPolyQ r0 = a, r1 = b, s0 = UPolyQ::constant(1), s1, t0, t1 = UPolyQ::constant(1);
    while (!r1.is_zero()) {
        UPolyQ q, r;
        r0.divmod(r1, q, r);
        UPolyQ s2 = s0 - q * s1, t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    mpq_class inv = 1 / r0.lc();
    return {Scalar(r0 * inv), Scalar(s0 * inv), Scalar(t0 * inv)};
}

} // namespace

GcdExt gcd_ext(const Scalar &a, const Scalar &b) {
    require_same_domain(a, b);
    Domain d = a.domain();
    switch (d) {
    case Domain::ZZ: return gcd_ext_zz(a.integer(), b.integer());
    case Domain::QQ:
        if (!a.is_zero()) return {Scalar(d, 1L), a.inverse(), Scalar(d)};
        if (!b.is_zero()) return {Scalar(d, 1L), Scalar(d), b.inverse()};
        return {Scalar(d), Scalar(d), Scalar(d)};
    case Domain::QQ_t: return gcd_ext_qt(a.poly(), b.poly());
    }
    return {};
}

Scalar gcd(const Scalar &a, const Scalar &b) {
    require_same_domain(a, b);
    switch (a.domain()) {
    case Domain::ZZ: return Scalar(Domain::ZZ, mpz_class(::gcd(a.integer(), b.integer())));
    case Domain::QQ:
        return (a.is_zero() && b.is_zero()) ? Scalar(Domain::QQ) : Scalar(Domain::QQ, 1L);
    case Domain::QQ_t: return Scalar(gcd(a.poly(), b.poly()));
    }
    return {};
}

Scalar lcm(const Scalar &a, const Scalar &b) {
    require_same_domain(a, b);
    if (a.is_zero() || b.is_zero()) return Scalar(a.domain());
    return exact_div(a * b, gcd(a, b)).canonical();
}

bool divides(const Scalar &a, const Scalar &b, Scalar *quot) {
    require_same_domain(a, b);
    if (a.is_zero()) {
        if (quot && b.is_zero()) throw PreconditionError("quotient by zero requested");
        return b.is_zero();
    }
    switch (a.domain()) {
    case Domain::ZZ:
        if (!mpz_divisible_p(b.integer().get_mpz_t(), a.integer().get_mpz_t())) return false;
        if (quot) *quot = Scalar(Domain::ZZ, mpz_class(b.integer() / a.integer()));
        return true;
    case Domain::QQ:
        if (quot) *quot = Scalar(Domain::QQ, mpq_class(b.rational() / a.rational()));
        return true;
    case Domain::QQ_t: {
        UPolyQ q, r;
        b.poly().divmod(a.poly(), q, r);
        if (!r.is_zero()) return false;
        if (quot) *quot = Scalar(q);
        return true;
    }
    }
    return false;
}

Scalar exact_div(const Scalar &b, const Scalar &a) {
    if (a.is_zero()) throw PreconditionError("division by zero");
    Scalar q;
    if (!divides(a, b, &q))
        throw PreconditionError(a.str() + " does not divide " + b.str());
    return q;
}

} // namespace orecalc
