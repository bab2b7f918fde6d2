#include "orecalc/multipoly.hpp"

#include "orecalc/errors.hpp"
#include "print_util.hpp"

#include <algorithm>
#include <numeric>

namespace orecalc {

namespace {

void require_compatible(const MultiPoly &a, const MultiPoly &b) {
    if (a.domain() != b.domain())
        throw DomainMismatch("polynomial domains differ: " + domain_name(a.domain()) + " vs " +
                             domain_name(b.domain()));
    if (a.nvars() != b.nvars()) throw DomainMismatch("polynomial variable counts differ");
}

unsigned total(const Exponent &e) {
    return std::accumulate(e.begin(), e.end(), 0u);
}

} // namespace

std::vector<std::string> default_names(std::size_t n, const std::string &stem) {
    std::vector<std::string> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(stem + std::to_string(i + 1));
    return v;
}

MultiPoly MultiPoly::constant(const Scalar &c, std::size_t nvars) {
    MultiPoly p(c.domain(), nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
}

MultiPoly MultiPoly::variable(Domain d, std::size_t nvars, std::size_t idx) {
    MultiPoly p(d, nvars);
    Exponent e(nvars, 0);
    e.at(idx) = 1;
    p.add_term(e, Scalar(d, 1L));
    return p;
}

MultiPoly MultiPoly::monomial(const Scalar &c, const Exponent &e) {
    MultiPoly p(c.domain(), e.size());
    p.add_term(e, c);
    return p;
}

bool MultiPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total(terms_.begin()->first) == 0);
}

Scalar MultiPoly::constant_term() const { return coeff(Exponent(nvars_, 0)); }

Scalar MultiPoly::coeff(const Exponent &e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar(dom_) : it->second;
}

void MultiPoly::add_term(const Exponent &e, const Scalar &c) {
    if (c.domain() != dom_) throw DomainMismatch("term domain differs from polynomial domain");
    if (e.size() != nvars_) throw DomainMismatch("exponent length mismatch");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MultiPoly &MultiPoly::operator+=(const MultiPoly &o) {
    require_compatible(*this, o);
    for (const auto &[e, c] : o.terms_) add_term(e, c);
    return *this;
}

MultiPoly &MultiPoly::operator-=(const MultiPoly &o) {
    require_compatible(*this, o);
    for (const auto &[e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MultiPoly MultiPoly::operator+(const MultiPoly &o) const {
    MultiPoly r = *this;
    r += o;
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly &o) const {
    MultiPoly r = *this;
    r -= o;
    return r;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r = *this;
    for (auto &[e, c] : r.terms_) c = -c;
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly &o) const {
    require_compatible(*this, o);
    MultiPoly r(dom_, nvars_);
    Exponent e(nvars_);
    for (const auto &[ea, ca] : terms_)
        for (const auto &[eb, cb] : o.terms_) {
            for (std::size_t i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

MultiPoly MultiPoly::operator*(const Scalar &s) const {
    if (s.domain() != dom_) throw DomainMismatch("scalar domain differs from polynomial domain");
    MultiPoly r(dom_, nvars_);
    if (s.is_zero()) return r;
    for (const auto &[e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, c * s);
    return r;
}

bool MultiPoly::operator==(const MultiPoly &o) const {
    return dom_ == o.dom_ && nvars_ == o.nvars_ && terms_ == o.terms_;
}

MultiPoly MultiPoly::pow(unsigned e) const {
    MultiPoly r = constant(Scalar(dom_, 1L), nvars_), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

int MultiPoly::degree(std::size_t var) const {
    int d = -1;
    for (const auto &[e, c] : terms_) d = std::max(d, static_cast<int>(e[var]));
    return d;
}

int MultiPoly::total_degree() const {
    int d = -1;
    for (const auto &[e, c] : terms_) d = std::max(d, static_cast<int>(total(e)));
    return d;
}

std::vector<MultiPoly> MultiPoly::coeffs_in(std::size_t var) const {
    int d = degree(var);
    std::vector<MultiPoly> out(d < 0 ? 0 : d + 1, MultiPoly(dom_, nvars_));
    for (const auto &[e, c] : terms_) {
        Exponent f = e;
        f[var] = 0;
        out[e[var]].terms_.emplace(f, c);
    }
    return out;
}

MultiPoly MultiPoly::from_coeffs_in(std::size_t var, const std::vector<MultiPoly> &cs, Domain d,
                                    std::size_t nvars) {
    MultiPoly r(d, nvars);
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (const auto &[e, c] : cs[i].terms()) {
            Exponent f = e;
            f[var] += static_cast<std::uint32_t>(i);
            r.add_term(f, c);
        }
    return r;
}

MultiPoly MultiPoly::lc_in(std::size_t var) const {
    auto cs = coeffs_in(var);
    return cs.empty() ? MultiPoly(dom_, nvars_) : cs.back();
}

const std::pair<const Exponent, Scalar> &MultiPoly::lex_lead() const {
    if (terms_.empty()) throw PreconditionError("leading term of zero polynomial");
    return *terms_.rbegin();
}

MultiPoly MultiPoly::substitute_affine(std::size_t var, const Scalar &gamma,
                                       const Scalar &tau) const {
    // (gamma*x + tau)^k expanded once per needed power.
    int d = degree(var);
    if (d <= 0) return *this;
    MultiPoly lin = variable(dom_, nvars_, var) * gamma + constant(tau, nvars_);
    std::vector<MultiPoly> pw{constant(Scalar(dom_, 1L), nvars_)};
    for (int i = 1; i <= d; ++i) pw.push_back(pw.back() * lin);
    MultiPoly r(dom_, nvars_);
    for (const auto &[e, c] : terms_) {
        Exponent f = e;
        f[var] = 0;
        r += pw[e[var]] * monomial(c, f);
    }
    return r;
}

MultiPoly MultiPoly::substitute_shift_by_var(std::size_t var, std::size_t other) const {
    int d = degree(var);
    if (d <= 0) return *this;
    MultiPoly lin = variable(dom_, nvars_, var) + variable(dom_, nvars_, other);
    std::vector<MultiPoly> pw{constant(Scalar(dom_, 1L), nvars_)};
    for (int i = 1; i <= d; ++i) pw.push_back(pw.back() * lin);
    MultiPoly r(dom_, nvars_);
    for (const auto &[e, c] : terms_) {
        Exponent f = e;
        f[var] = 0;
        r += pw[e[var]] * monomial(c, f);
    }
    return r;
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
    MultiPoly r(dom_, nvars_);
    for (const auto &[e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponent f = e;
        f[var] -= 1;
        r.add_term(f, c * Scalar(dom_, static_cast<long>(e[var])));
    }
    return r;
}

MultiPoly MultiPoly::evaluate(std::size_t var, const Scalar &v) const {
    MultiPoly r(dom_, nvars_);
    for (const auto &[e, c] : terms_) {
        Exponent f = e;
        f[var] = 0;
        r.add_term(f, c * v.pow(e[var]));
    }
    return r;
}

MultiPoly MultiPoly::remap(std::size_t new_nvars, const std::vector<std::size_t> &map) const {
    MultiPoly r(dom_, new_nvars);
    for (const auto &[e, c] : terms_) {
        Exponent f(new_nvars, 0);
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            if (i >= map.size() || map[i] >= new_nvars)
                throw DomainMismatch("variable remap drops a used variable");
            f[map[i]] += e[i];
        }
        r.add_term(f, c);
    }
    return r;
}

MultiPoly MultiPoly::to_domain(Domain d) const {
    if (d == dom_) return *this;
    MultiPoly r(d, nvars_);
    for (const auto &[e, c] : terms_) {
        switch (d) {
        case Domain::ZZ: r.add_term(e, Scalar(d, c.to_rational())); break;
        case Domain::QQ: r.add_term(e, Scalar(d, c.to_rational())); break;
        case Domain::QQ_t: r.add_term(e, Scalar(d, c.to_rational())); break;
        }
    }
    return r;
}

int MultiPoly::compare(const MultiPoly &o) const {
    require_compatible(*this, o);
    auto a = terms_.rbegin(), b = o.terms_.rbegin();
    for (; a != terms_.rend() && b != o.terms_.rend(); ++a, ++b) {
        if (a->first != b->first) return a->first < b->first ? -1 : 1;
        int s = a->second.compare(b->second);
        if (s) return s;
    }
    if (a == terms_.rend() && b == o.terms_.rend()) return 0;
    return a == terms_.rend() ? -1 : 1;
}

std::string MultiPoly::str(const std::vector<std::string> &names) const {
    if (terms_.empty()) return "0";
    // Descending by total degree, then lexicographically.
    std::vector<const std::pair<const Exponent, Scalar> *> ts;
    for (const auto &t : terms_) ts.push_back(&t);
    std::stable_sort(ts.begin(), ts.end(), [](auto *a, auto *b) {
        unsigned da = total(a->first), db = total(b->first);
        if (da != db) return da > db;
        return a->first > b->first;
    });
    std::string out;
    for (auto *t : ts) {
        std::string mono;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (!t->first[i]) continue;
            if (!mono.empty()) mono += "*";
            mono += detail::power(i < names.size() ? names[i] : "x" + std::to_string(i + 1),
                                  t->first[i]);
        }
        detail::append_term(out, t->second, mono);
    }
    return out;
}

// ---------------------------------------------------------------- content

Scalar content(const MultiPoly &f) {
    Scalar g(f.domain());
    for (const auto &[e, c] : f.terms()) {
        g = gcd(g, c);
        if (g.is_unit()) break;
    }
    return g.canonical();
}

ContentPrimitive content_primitive(const MultiPoly &f) {
    if (f.is_zero()) return {Scalar(f.domain()), f};
    Scalar c = content(f);
    MultiPoly g(f.domain(), f.nvars());
    for (const auto &[e, a] : f.terms()) g.add_term(e, exact_div(a, c));
    return {c, g};
}

// ---------------------------------------------------------------- division

PseudoDivision pseudo_divide(const MultiPoly &f, const MultiPoly &g, std::size_t var) {
    if (g.is_zero()) throw PreconditionError("pseudo-division by zero polynomial");
    require_compatible(f, g);
    std::size_t n = f.nvars();
    Domain d = f.domain();
    int df = f.degree(var), dg = g.degree(var);
    MultiPoly one = MultiPoly::constant(Scalar(d, 1L), n);
    if (df < dg) return {one, MultiPoly(d, n), f};
    MultiPoly lc = g.lc_in(var);
    int e = df - dg + 1;
    MultiPoly q(d, n), h = f;
    while (!h.is_zero() && h.degree(var) >= dg) {
        Exponent sh(n, 0);
        sh[var] = static_cast<std::uint32_t>(h.degree(var) - dg);
        MultiPoly t = h.lc_in(var) * MultiPoly::monomial(Scalar(d, 1L), sh);
        q = lc * q + t;
        h = lc * h - t * g;
        --e;
    }
    MultiPoly scale = lc.pow(static_cast<unsigned>(e));
    return {lc.pow(static_cast<unsigned>(df - dg + 1)), q * scale, h * scale};
}

std::optional<MultiPoly> divide_exact(const MultiPoly &a, const MultiPoly &b) {
    require_compatible(a, b);
    if (b.is_zero()) throw PreconditionError("division by zero polynomial");
    std::size_t n = a.nvars();
    MultiPoly q(a.domain(), n), r = a;
    const auto &[eb, cb] = b.lex_lead();
    while (!r.is_zero()) {
        const auto &[er, cr] = r.lex_lead();
        Exponent e(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (er[i] < eb[i]) return std::nullopt;
            e[i] = er[i] - eb[i];
        }
        Scalar c;
        if (!divides(cb, cr, &c)) return std::nullopt;
        MultiPoly m = MultiPoly::monomial(c, e);
        q += m;
        r -= m * b;
    }
    return q;
}

MultiPoly exact_quotient(const MultiPoly &a, const MultiPoly &b) {
    auto q = divide_exact(a, b);
    if (!q) throw PreconditionError("polynomial division is not exact");
    return *q;
}

// ---------------------------------------------------------------- resultant

MultiPoly resultant(const MultiPoly &f, const MultiPoly &g, std::size_t var) {
    if (f.is_zero() || g.is_zero()) throw PreconditionError("resultant of a zero polynomial");
    require_compatible(f, g);
    auto fc = f.coeffs_in(var), gc = g.coeffs_in(var);
    std::size_t m = fc.size() - 1, k = gc.size() - 1, N = m + k;
    Domain d = f.domain();
    std::size_t n = f.nvars();
    MultiPoly zero(d, n);
    if (N == 0) return MultiPoly::constant(Scalar(d, 1L), n);
    // Rows of g first, then rows of f; coefficients in descending degree.
    std::vector<std::vector<MultiPoly>> M(N, std::vector<MultiPoly>(N, zero));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= k; ++j) M[i][i + j] = gc[k - j];
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j <= m; ++j) M[m + i][i + j] = fc[m - j];
    // Fraction-free Bareiss elimination.
    MultiPoly prev = MultiPoly::constant(Scalar(d, 1L), n);
    bool negate = false;
    for (std::size_t c = 0; c + 1 < N; ++c) {
        if (M[c][c].is_zero()) {
            std::size_t p = c + 1;
            while (p < N && M[p][c].is_zero()) ++p;
            if (p == N) return zero;
            std::swap(M[c], M[p]);
            negate = !negate;
        }
        for (std::size_t i = c + 1; i < N; ++i) {
            for (std::size_t j = c + 1; j < N; ++j)
                M[i][j] = exact_quotient(M[i][j] * M[c][c] - M[i][c] * M[c][j], prev);
            M[i][c] = zero;
        }
        prev = M[c][c];
    }
    MultiPoly det = M[N - 1][N - 1];
    return negate ? -det : det;
}

// ---------------------------------------------------------------- gcd

namespace {

int top_var(const MultiPoly &p) {
    int v = -1;
    for (const auto &[e, c] : p.terms())
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] && static_cast<int>(i) > v) v = static_cast<int>(i);
    return v;
}

MultiPoly positive_lead(const MultiPoly &p) {
    if (!p.is_zero() && p.lex_lead().second.sign() < 0) return -p;
    return p;
}

MultiPoly gcd_zz(const MultiPoly &a, const MultiPoly &b);

// Content of p regarded as a polynomial in var with coefficients in the
// remaining variables.
MultiPoly content_in(const MultiPoly &p, std::size_t var) {
    MultiPoly g(p.domain(), p.nvars());
    for (const auto &c : p.coeffs_in(var)) {
        if (c.is_zero()) continue;
        g = gcd_zz(g, c);
        if (g.is_constant() && g.constant_term().is_one()) break;
    }
    return g;
}

MultiPoly gcd_zz(const MultiPoly &a, const MultiPoly &b) {
    if (a.is_zero()) return positive_lead(b);
    if (b.is_zero()) return positive_lead(a);
    int v = std::max(top_var(a), top_var(b));
    if (v < 0) {
        mpz_class g = ::gcd(a.constant_term().integer(), b.constant_term().integer());
        return MultiPoly::constant(Scalar(Domain::ZZ, g), a.nvars());
    }
    std::size_t var = static_cast<std::size_t>(v);
    MultiPoly ca = content_in(a, var), cb = content_in(b, var);
    MultiPoly c = gcd_zz(ca, cb);
    MultiPoly pa = exact_quotient(a, ca), pb = exact_quotient(b, cb);
    if (pa.degree(var) < pb.degree(var)) std::swap(pa, pb);
    while (!pb.is_zero()) {
        if (pb.degree(var) == 0) {
            pa = MultiPoly::constant(Scalar(Domain::ZZ, 1L), a.nvars());
            break;
        }
        MultiPoly r = pseudo_divide(pa, pb, var).h;
        pa = std::move(pb);
        pb = r.is_zero() ? r : exact_quotient(r, content_in(r, var));
    }
    pa = exact_quotient(pa, content_in(pa, var));
    return positive_lead(c * pa);
}

// Clears denominators of a QQ polynomial, returning the ZZ polynomial.
MultiPoly qq_to_zz(const MultiPoly &p) {
    mpz_class den = 1;
    for (const auto &[e, c] : p.terms()) den = ::lcm(den, mpz_class(c.rational().get_den()));
    MultiPoly r(Domain::ZZ, p.nvars());
    for (const auto &[e, c] : p.terms())
        r.add_term(e, Scalar(Domain::ZZ, mpz_class(c.rational().get_num() * (den / c.rational().get_den()))));
    return r;
}

// QQ[t][x1..xn] -> ZZ[x1..xn, t] with t as the last variable.
MultiPoly qt_to_zz(const MultiPoly &p) {
    std::size_t n = p.nvars();
    MultiPoly q(Domain::QQ, n + 1);
    for (const auto &[e, c] : p.terms()) {
        const auto &cs = c.poly().coeffs();
        for (std::size_t i = 0; i < cs.size(); ++i) {
            if (cs[i] == 0) continue;
            Exponent f = e;
            f.push_back(static_cast<std::uint32_t>(i));
            q.add_term(f, Scalar(Domain::QQ, cs[i]));
        }
    }
    return qq_to_zz(q);
}

MultiPoly zz_to_qt(const MultiPoly &p, std::size_t n) {
    MultiPoly r(Domain::QQ_t, n);
    for (const auto &[e, c] : p.terms()) {
        Exponent f(e.begin(), e.begin() + static_cast<long>(n));
        r.add_term(f, Scalar(UPolyQ::monomial(mpq_class(c.integer()), e[n])));
    }
    return r;
}

} // namespace

MultiPoly normalize_unit(const MultiPoly &f) {
    if (f.is_zero()) return f;
    return f * f.lex_lead().second.unit_part().inverse();
}

MultiPoly poly_gcd(const MultiPoly &a, const MultiPoly &b) {
    require_compatible(a, b);
    switch (a.domain()) {
    case Domain::ZZ: return gcd_zz(a, b);
    case Domain::QQ: return normalize_unit(gcd_zz(qq_to_zz(a), qq_to_zz(b)).to_domain(Domain::QQ));
    case Domain::QQ_t:
        return normalize_unit(zz_to_qt(gcd_zz(qt_to_zz(a), qt_to_zz(b)), a.nvars()));
    }
    return {};
}

MultiPoly poly_lcm(const MultiPoly &a, const MultiPoly &b) {
    if (a.is_zero() || b.is_zero()) return MultiPoly(a.domain(), a.nvars());
    return normalize_unit(exact_quotient(a * b, poly_gcd(a, b)));
}

// ---------------------------------------------------------------- roots

namespace {

std::vector<long> integer_poly_roots(std::vector<mpz_class> p) {
    std::vector<long> roots;
    while (!p.empty() && p.back() == 0) p.pop_back();
    if (p.empty()) throw PreconditionError("zero polynomial has infinitely many roots");
    std::size_t low = 0;
    while (p[low] == 0) ++low;
    if (low > 0) {
        roots.push_back(0);
        p.erase(p.begin(), p.begin() + static_cast<long>(low));
    }
    std::size_t n = p.size() - 1;
    if (n == 0) return roots;
    // Fujiwara bound: every complex root has modulus at most
    // 2 * max_i |a_{n-i}/a_n|^(1/i).
    mpz_class lead = abs(p[n]), bound = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        mpz_class num = abs(p[n - i]);
        if (num == 0) continue;
        mpz_class q = (num + lead - 1) / lead;
        mpz_class r;
        mpz_root(r.get_mpz_t(), q.get_mpz_t(), i);
        r += 1;
        if (r > bound) bound = r;
    }
    bound *= 2;
    mpz_class c0 = abs(p[0]);
    if (c0 < bound) bound = c0;
    if (bound > 100000000) throw PreconditionError("integer root bound too large: " + bound.get_str());
    long B = bound.get_si();
    for (long d = 1; d <= B; ++d) {
        if (!mpz_divisible_ui_p(c0.get_mpz_t(), static_cast<unsigned long>(d))) continue;
        mpz_class v = 0, x = d;
        for (std::size_t i = n + 1; i-- > 0;) v = v * x + p[i];
        if (v == 0) roots.push_back(d);
    }
    return roots;
}

std::vector<mpz_class> clear_upoly(const UPolyQ &u) {
    mpz_class den = 1;
    for (const auto &c : u.coeffs()) den = ::lcm(den, mpz_class(c.get_den()));
    std::vector<mpz_class> r;
    for (const auto &c : u.coeffs()) r.push_back(mpz_class(c.get_num() * (den / c.get_den())));
    return r;
}

} // namespace

std::vector<long> nonneg_integer_roots(const MultiPoly &f) {
    if (f.is_zero()) throw PreconditionError("zero polynomial has infinitely many roots");
    int var = -1;
    for (const auto &[e, c] : f.terms())
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i]) {
                if (var >= 0 && var != static_cast<int>(i))
                    throw PreconditionError("root finding expects a univariate polynomial");
                var = static_cast<int>(i);
            }
    if (var < 0) return {};
    auto cs = f.coeffs_in(static_cast<std::size_t>(var));
    switch (f.domain()) {
    case Domain::ZZ: {
        std::vector<mpz_class> p;
        for (const auto &c : cs) p.push_back(c.constant_term().integer());
        return integer_poly_roots(p);
    }
    case Domain::QQ: {
        std::vector<mpq_class> p;
        for (const auto &c : cs) p.push_back(c.constant_term().rational());
        return integer_poly_roots(clear_upoly(UPolyQ(p)));
    }
    case Domain::QQ_t: {
        // Coefficient of t^i as a polynomial in the root variable, then gcd.
        std::size_t dt = 0;
        for (const auto &c : cs)
            if (!c.is_zero()) dt = std::max<std::size_t>(dt, c.constant_term().poly().coeffs().size());
        UPolyQ g;
        for (std::size_t i = 0; i < dt; ++i) {
            std::vector<mpq_class> p;
            for (const auto &c : cs) p.push_back(c.is_zero() ? mpq_class(0) : c.constant_term().poly().coeff(i));
            g = gcd(g, UPolyQ(p));
        }
        return integer_poly_roots(clear_upoly(g));
    }
    }
    return {};
}

} // namespace orecalc
