#include "orecalc/ore.hpp"

#include "orecalc/errors.hpp"
#include "print_util.hpp"

#include <algorithm>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace orecalc {

namespace {

Scalar binomial(Domain d, unsigned long n, unsigned long k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Scalar(d, b);
}

unsigned sum_range(const Exponent &e, std::size_t from, std::size_t to) {
    unsigned s = 0;
    for (std::size_t i = from; i < to; ++i) s += e[i];
    return s;
}

} // namespace

// ---------------------------------------------------------------- signature

OreSignature::OreSignature(Domain d, std::vector<OrePair> pairs) : dom_(d), pairs_(std::move(pairs)) {
    for (const auto &p : pairs_) {
        if (p.gamma.domain() != d || p.tau.domain() != d)
            throw DomainMismatch("signature constants must lie in " + domain_name(d));
        if (!p.gamma.is_unit()) throw PreconditionError("sigma must be invertible (gamma a unit)");
    }
}

SigPtr OreSignature::make(Domain d, std::vector<OrePair> pairs) {
    return std::make_shared<OreSignature>(d, std::move(pairs));
}

SigPtr OreSignature::shift(Domain d, const std::vector<std::string> &names) {
    std::vector<OrePair> ps;
    for (const auto &n : names) ps.push_back({n, Scalar(d, 1L), Scalar(d, 1L), DeltaKind::Zero});
    return make(d, std::move(ps));
}

SigPtr OreSignature::differential(Domain d, const std::vector<std::string> &names) {
    std::vector<OrePair> ps;
    for (const auto &n : names) ps.push_back({n, Scalar(d, 1L), Scalar(d), DeltaKind::Derivation});
    return make(d, std::move(ps));
}

SigPtr OreSignature::commutative(Domain d, const std::vector<std::string> &names) {
    std::vector<OrePair> ps;
    for (const auto &n : names) ps.push_back({n, Scalar(d, 1L), Scalar(d), DeltaKind::Zero});
    return make(d, std::move(ps));
}

std::vector<std::string> OreSignature::x_names() const {
    std::vector<std::string> v;
    for (const auto &p : pairs_) v.push_back(p.name);
    return v;
}

bool OreSignature::is_shift(std::size_t i) const {
    const auto &p = pairs_.at(i);
    return p.delta == DeltaKind::Zero && p.gamma.is_one() && p.tau.is_one();
}

bool OreSignature::is_differential(std::size_t i) const {
    const auto &p = pairs_.at(i);
    return p.delta == DeltaKind::Derivation && p.gamma.is_one() && p.tau.is_zero();
}

MultiPoly OreSignature::apply_sigma(const MultiPoly &f, std::size_t i, long k) const {
    const auto &p = pairs_.at(i);
    if (k == 0 || (p.gamma.is_one() && p.tau.is_zero())) return f;
    // Affine map x -> a*x + b for sigma or its inverse, composed |k| times.
    Scalar a = p.gamma, b = p.tau;
    if (k < 0) {
        a = p.gamma.inverse();
        b = -(a * p.tau);
    }
    Scalar A(dom_, 1L), B(dom_);
    for (long j = 0; j < std::labs(k); ++j) {
        B = a * B + b;
        A = a * A;
    }
    return f.substitute_affine(i, A, B);
}

MultiPoly OreSignature::derive(const MultiPoly &f, std::size_t i) const {
    const auto &p = pairs_.at(i);
    if (p.delta == DeltaKind::Zero) return MultiPoly(f.domain(), f.nvars());
    if (p.gamma.is_one() && p.tau.is_zero()) return f.derivative(i);
    // delta(x^g) = sum_{j<g} sigma(x)^j x^(g-1-j) for delta(x) = 1.
    MultiPoly r(f.domain(), f.nvars());
    MultiPoly sx = apply_sigma(MultiPoly::variable(dom_, f.nvars(), i), i, 1);
    MultiPoly xv = MultiPoly::variable(dom_, f.nvars(), i);
    for (const auto &[e, c] : f.terms()) {
        if (e[i] == 0) continue;
        Exponent rest = e;
        rest[i] = 0;
        MultiPoly acc(f.domain(), f.nvars());
        for (std::uint32_t j = 0; j < e[i]; ++j) acc += sx.pow(j) * xv.pow(e[i] - 1 - j);
        r += acc * MultiPoly::monomial(c, rest);
    }
    return r;
}

const std::vector<CommTerm> &OreSignature::commute_locked(std::size_t i, std::uint32_t b,
                                                          std::uint32_t g) const {
    auto key = std::make_tuple(i, b, g);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::map<std::pair<std::uint32_t, std::uint32_t>, Scalar> acc;
    auto add = [&](std::uint32_t xe, std::uint32_t de, const Scalar &c) {
        auto [jt, ins] = acc.try_emplace({xe, de}, c);
        if (!ins) jt->second += c;
    };
    const auto &p = pairs_[i];
    if (b == 0) {
        add(g, 0, Scalar(dom_, 1L));
    } else {
        // D^b x^g = D^(b-1) (sigma(x^g) D + delta(x^g)).
        std::vector<Scalar> sig(g + 1, Scalar(dom_));
        for (std::uint32_t e = 0; e <= g; ++e)
            sig[e] = binomial(dom_, g, e) * p.gamma.pow(e) * p.tau.pow(g - e);
        for (std::uint32_t e = 0; e <= g; ++e) {
            if (sig[e].is_zero()) continue;
            for (const auto &t : commute_locked(i, b - 1, e)) add(t.xe, t.de + 1, sig[e] * t.coeff);
        }
        if (p.delta == DeltaKind::Derivation && g > 0) {
            // delta(x^g) = sum_{j<g} (gamma x + tau)^j x^(g-1-j)
            std::vector<Scalar> del(g, Scalar(dom_));
            for (std::uint32_t j = 0; j < g; ++j)
                for (std::uint32_t e = 0; e <= j; ++e)
                    del[e + g - 1 - j] += binomial(dom_, j, e) * p.gamma.pow(e) * p.tau.pow(j - e);
            for (std::uint32_t e = 0; e < g; ++e) {
                if (del[e].is_zero()) continue;
                for (const auto &t : commute_locked(i, b - 1, e)) add(t.xe, t.de, del[e] * t.coeff);
            }
        }
    }
    std::vector<CommTerm> out;
    for (auto &[k, c] : acc)
        if (!c.is_zero()) out.push_back({c, k.first, k.second});
    return cache_.emplace(key, std::move(out)).first->second;
}

std::vector<CommTerm> OreSignature::commute(std::size_t i, std::uint32_t b, std::uint32_t g) const {
    std::lock_guard<std::mutex> lock(mu_);
    return commute_locked(i, b, g);
}

Scalar OreSignature::head_unit(const Exponent &alpha, const Exponent &beta) const {
    Scalar r(dom_, 1L);
    for (std::size_t i = 0; i < pairs_.size(); ++i)
        if (alpha[i] && beta[i] && !pairs_[i].gamma.is_one()) r *= pairs_[i].gamma.pow(alpha[i] * beta[i]);
    return r;
}

void require_same_signature(const SigPtr &a, const SigPtr &b) {
    if (!a || !b) throw DomainMismatch("operator without signature");
    if (a != b && !a->same_as(*b)) throw DomainMismatch("operators belong to different Ore algebras");
}

// ---------------------------------------------------------------- term orders

TermOrder TermOrder::ore_default(std::size_t n) {
    OrderBlock d, x;
    for (std::size_t i = 0; i < n; ++i) {
        x.vars.push_back(i);
        d.vars.push_back(n + i);
    }
    return TermOrder({d, x});
}

TermOrder TermOrder::graded(std::size_t nvars) {
    OrderBlock b;
    for (std::size_t i = 0; i < nvars; ++i) b.vars.push_back(i);
    return TermOrder({b});
}

TermOrder TermOrder::lex(std::size_t nvars) {
    OrderBlock b;
    b.lex = true;
    for (std::size_t i = 0; i < nvars; ++i) b.vars.push_back(i);
    return TermOrder({b});
}

TermOrder TermOrder::elimination(std::size_t n, const std::vector<std::size_t> &eliminated) {
    std::vector<bool> elim(2 * n, false);
    for (auto v : eliminated) elim.at(v) = true;
    OrderBlock e, d, x;
    for (std::size_t i = 0; i < 2 * n; ++i) {
        if (elim[i])
            e.vars.push_back(i);
        else if (i >= n)
            d.vars.push_back(i);
        else
            x.vars.push_back(i);
    }
    std::vector<OrderBlock> bs;
    for (auto *b : {&e, &d, &x})
        if (!b->vars.empty()) bs.push_back(*b);
    return TermOrder(bs);
}

int TermOrder::compare(const Exponent &a, const Exponent &b) const {
    for (const auto &blk : blocks_) {
        if (blk.lex) {
            for (auto v : blk.vars)
                if (a[v] != b[v]) return a[v] < b[v] ? -1 : 1;
            continue;
        }
        unsigned da = 0, db = 0;
        for (auto v : blk.vars) {
            da += a[v];
            db += b[v];
        }
        if (da != db) return da < db ? -1 : 1;
        for (auto it = blk.vars.rbegin(); it != blk.vars.rend(); ++it)
            if (a[*it] != b[*it]) return a[*it] < b[*it] ? -1 : 1;
    }
    return 0;
}

bool TermOrder::eliminates(const std::vector<std::size_t> &eliminated) const {
    auto is_elim = [&](std::size_t v) {
        return std::find(eliminated.begin(), eliminated.end(), v) != eliminated.end();
    };
    bool seen_kept = false;
    for (const auto &blk : blocks_) {
        bool has_e = false, has_k = false;
        for (auto v : blk.vars) (is_elim(v) ? has_e : has_k) = true;
        if (has_e && has_k) return false;
        if (has_e && seen_kept) return false;
        if (has_k) seen_kept = true;
    }
    return true;
}

bool quasi_divides(const Monomial &m1, const Monomial &m2) {
    if (m1.term.size() != m2.term.size()) throw DomainMismatch("monomials of different algebras");
    for (std::size_t i = 0; i < m1.term.size(); ++i)
        if (m1.term[i] > m2.term[i]) return false;
    return divides(m1.coeff, m2.coeff);
}

// ---------------------------------------------------------------- operators

OreOperator::OreOperator(SigPtr sig) : sig_(std::move(sig)) {}

OreOperator OreOperator::constant(SigPtr sig, const Scalar &c) {
    std::size_t n = sig->n();
    OreOperator r(std::move(sig));
    r.add_term(Exponent(2 * n, 0), c);
    return r;
}

OreOperator OreOperator::x(SigPtr sig, std::size_t i) {
    Exponent e(2 * sig->n(), 0);
    e.at(i) = 1;
    Domain d = sig->domain();
    return monomial(std::move(sig), Scalar(d, 1L), e);
}

OreOperator OreOperator::d(SigPtr sig, std::size_t i) {
    Exponent e(2 * sig->n(), 0);
    e.at(sig->n() + i) = 1;
    Domain d = sig->domain();
    return monomial(std::move(sig), Scalar(d, 1L), e);
}

OreOperator OreOperator::monomial(SigPtr sig, const Scalar &c, const Exponent &term) {
    OreOperator r(std::move(sig));
    r.add_term(term, c);
    return r;
}

OreOperator OreOperator::from_poly(SigPtr sig, const MultiPoly &p) {
    std::size_t n = sig->n();
    if (p.nvars() != n) throw DomainMismatch("polynomial variable count differs from algebra");
    OreOperator r(std::move(sig));
    for (const auto &[e, c] : p.terms()) {
        Exponent t(2 * n, 0);
        std::copy(e.begin(), e.end(), t.begin());
        r.add_term(t, c);
    }
    return r;
}

OreOperator OreOperator::from_d_coefficients(SigPtr sig, const std::map<Exponent, MultiPoly> &cs) {
    std::size_t n = sig->n();
    OreOperator r(std::move(sig));
    for (const auto &[beta, p] : cs)
        for (const auto &[e, c] : p.terms()) {
            Exponent t(2 * n, 0);
            std::copy(e.begin(), e.end(), t.begin());
            std::copy(beta.begin(), beta.end(), t.begin() + static_cast<long>(n));
            r.add_term(t, c);
        }
    return r;
}

OreOperator OreOperator::from_coeff_list(SigPtr sig, const std::vector<MultiPoly> &cs, std::size_t i) {
    std::map<Exponent, MultiPoly> m;
    for (std::size_t k = 0; k < cs.size(); ++k) {
        if (cs[k].is_zero()) continue;
        Exponent beta(sig->n(), 0);
        beta.at(i) = static_cast<std::uint32_t>(k);
        m.emplace(beta, cs[k]);
    }
    return from_d_coefficients(std::move(sig), m);
}

void OreOperator::add_term(const Exponent &term, const Scalar &c) {
    if (term.size() != 2 * sig_->n()) throw DomainMismatch("term length differs from algebra");
    if (c.domain() != sig_->domain()) throw DomainMismatch("coefficient domain differs from algebra");
    if (c.is_zero()) return;
    auto [it, ins] = terms_.try_emplace(term, c);
    if (!ins) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

OreOperator &OreOperator::operator+=(const OreOperator &o) {
    require_same_signature(sig_, o.sig_);
    for (const auto &[e, c] : o.terms_) add_term(e, c);
    return *this;
}

OreOperator &OreOperator::operator-=(const OreOperator &o) {
    require_same_signature(sig_, o.sig_);
    for (const auto &[e, c] : o.terms_) add_term(e, -c);
    return *this;
}

OreOperator OreOperator::operator+(const OreOperator &o) const {
    OreOperator r = *this;
    r += o;
    return r;
}

OreOperator OreOperator::operator-(const OreOperator &o) const {
    OreOperator r = *this;
    r -= o;
    return r;
}

OreOperator OreOperator::operator-() const {
    OreOperator r = *this;
    for (auto &[e, c] : r.terms_) c = -c;
    return r;
}

OreOperator OreOperator::operator*(const Scalar &s) const {
    OreOperator r(sig_);
    if (s.is_zero()) return r;
    for (const auto &[e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, c * s);
    return r;
}

OreOperator OreOperator::operator*(const OreOperator &o) const { return multiply(*this, o); }

bool OreOperator::operator==(const OreOperator &o) const {
    if (!sig_ || !o.sig_) return terms_ == o.terms_;
    return (sig_ == o.sig_ || sig_->same_as(*o.sig_)) && terms_ == o.terms_;
}

OreOperator OreOperator::pow(unsigned e) const {
    OreOperator r = constant(sig_, Scalar(sig_->domain(), 1L));
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
}

std::map<Exponent, MultiPoly> OreOperator::d_coefficients() const {
    std::size_t n = sig_->n();
    std::map<Exponent, MultiPoly> out;
    for (const auto &[t, c] : terms_) {
        Exponent a(t.begin(), t.begin() + static_cast<long>(n)), b(t.begin() + static_cast<long>(n), t.end());
        auto it = out.try_emplace(b, MultiPoly(sig_->domain(), n)).first;
        it->second.add_term(a, c);
    }
    return out;
}

int OreOperator::order(std::size_t i) const {
    int d = -1;
    for (const auto &[t, c] : terms_) d = std::max(d, static_cast<int>(t[sig_->n() + i]));
    return d;
}

int OreOperator::total_order() const {
    int d = -1;
    std::size_t n = sig_->n();
    for (const auto &[t, c] : terms_) d = std::max(d, static_cast<int>(sum_range(t, n, 2 * n)));
    return d;
}

MultiPoly OreOperator::coeff(std::size_t k, std::size_t i) const {
    std::size_t n = sig_->n();
    MultiPoly r(sig_->domain(), n);
    for (const auto &[t, c] : terms_) {
        bool match = true;
        for (std::size_t j = 0; j < n && match; ++j) match = t[n + j] == (j == i ? k : 0);
        if (match) r.add_term(Exponent(t.begin(), t.begin() + static_cast<long>(n)), c);
    }
    return r;
}

MultiPoly OreOperator::lc(std::size_t i) const {
    if (is_zero()) throw PreconditionError("leading coefficient of zero operator");
    return coeff(static_cast<std::size_t>(order(i)), i);
}

int OreOperator::x_degree() const {
    int d = -1;
    for (const auto &[t, c] : terms_) d = std::max(d, static_cast<int>(sum_range(t, 0, sig_->n())));
    return d;
}

bool OreOperator::involves(std::size_t var_index) const {
    for (const auto &[t, c] : terms_)
        if (t[var_index]) return true;
    return false;
}

OreOperator OreOperator::embed(SigPtr target, const std::vector<std::size_t> &map) const {
    std::size_t n = sig_->n(), m = target->n();
    OreOperator r(target);
    for (const auto &[t, c] : terms_) {
        Exponent u(2 * m, 0);
        for (std::size_t i = 0; i < n; ++i) {
            u.at(map.at(i)) = t[i];
            u.at(m + map.at(i)) = t[n + i];
        }
        r.add_term(u, c);
    }
    return r;
}

OreOperator OreOperator::to_domain(SigPtr target) const {
    if (target->n() != sig_->n()) throw DomainMismatch("algebras differ in size");
    OreOperator r(target);
    Domain d = target->domain();
    for (const auto &[t, c] : terms_) {
        if (d == c.domain())
            r.add_term(t, c);
        else
            r.add_term(t, Scalar(d, c.to_rational()));
    }
    return r;
}

std::string OreOperator::str() const {
    if (terms_.empty()) return "0";
    std::size_t n = sig_->n();
    TermOrder ord = TermOrder::ore_default(n);
    std::vector<const std::pair<const Exponent, Scalar> *> ts;
    for (const auto &t : terms_) ts.push_back(&t);
    std::sort(ts.begin(), ts.end(), [&](auto *a, auto *b) { return ord.compare(a->first, b->first) > 0; });
    std::string out;
    for (auto *t : ts) {
        std::string mono;
        for (std::size_t i = 0; i < 2 * n; ++i) {
            if (!t->first[i]) continue;
            if (!mono.empty()) mono += "*";
            mono += detail::power(i < n ? sig_->pair(i).name : sig_->d_name(i - n), t->first[i]);
        }
        detail::append_term(out, t->second, mono);
    }
    return out;
}

namespace {

using Acc = std::map<Exponent, Scalar>;

void accumulate(Acc &acc, const Exponent &e, const Scalar &c) {
    auto [it, ins] = acc.try_emplace(e, c);
    if (!ins) it->second += c;
}

template <class Fn>
void product_terms(const OreSignature &sig, const Exponent &ta, const Scalar &a, const Exponent &tb,
                   const Scalar &b, Fn &&fn) {
    std::size_t n = sig.n();
    bool plain = true;
    for (std::size_t i = 0; i < n && plain; ++i)
        plain = ta[n + i] == 0 || tb[i] == 0 || sig.pair(i).is_commutative();
    if (plain) {
        Exponent t(2 * n);
        for (std::size_t i = 0; i < 2 * n; ++i) t[i] = ta[i] + tb[i];
        fn(t, a * b);
        return;
    }
    // Expansion of D^beta x^g as a product over the pairs.
    std::vector<std::vector<CommTerm>> parts(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t beta = ta[n + i], g = tb[i];
        if (beta == 0 || g == 0 || sig.pair(i).is_commutative())
            parts[i] = {{Scalar(sig.domain(), 1L), g, beta}};
        else
            parts[i] = sig.commute(i, beta, g);
    }
    Scalar ab = a * b;
    Exponent t(2 * n);
    std::vector<std::size_t> idx(n, 0);
    while (true) {
        Scalar c = ab;
        for (std::size_t i = 0; i < n; ++i) {
            const auto &ct = parts[i][idx[i]];
            c *= ct.coeff;
            t[i] = ta[i] + ct.xe;
            t[n + i] = ct.de + tb[n + i];
        }
        fn(t, c);
        std::size_t k = 0;
        while (k < n && ++idx[k] == parts[k].size()) idx[k++] = 0;
        if (k == n) break;
    }
}

// Adds a*x^alpha * (D^beta * b x^g D^eta) into acc.
void multiply_terms(const OreSignature &sig, const Exponent &ta, const Scalar &a, const Exponent &tb,
                    const Scalar &b, Acc &acc) {
    product_terms(sig, ta, a, tb, b, [&](const Exponent &e, const Scalar &c) { accumulate(acc, e, c); });
}

OreOperator from_acc(const SigPtr &sig, Acc &acc) {
    OreOperator r(sig);
    for (auto &[e, c] : acc) r.add_term(e, c);
    return r;
}

} // namespace

void for_each_product_term(const OreSignature &sig, const Exponent &ta, const Scalar &a, const Exponent &tb,
                           const Scalar &b, const std::function<void(const Exponent &, const Scalar &)> &fn) {
    product_terms(sig, ta, a, tb, b, fn);
}

OreOperator multiply(const OreOperator &P, const OreOperator &Q) {
    require_same_signature(P.signature(), Q.signature());
    Acc acc;
    for (const auto &[ta, a] : P.terms())
        for (const auto &[tb, b] : Q.terms()) multiply_terms(*P.signature(), ta, a, tb, b, acc);
    return from_acc(P.signature(), acc);
}

OreOperator multiply_parallel(const OreOperator &P, const OreOperator &Q) {
    require_same_signature(P.signature(), Q.signature());
    std::vector<const std::pair<const Exponent, Scalar> *> left;
    for (const auto &t : P.terms()) left.push_back(&t);
    long m = static_cast<long>(left.size());
    std::vector<Acc> partial(left.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < m; ++i)
        for (const auto &[tb, b] : Q.terms())
            multiply_terms(*P.signature(), left[i]->first, left[i]->second, tb, b, partial[i]);
    Acc acc;
    for (auto &p : partial)
        for (auto &[e, c] : p) accumulate(acc, e, c);
    return from_acc(P.signature(), acc);
}

Head head(const OreOperator &P, const TermOrder &ord) {
    if (P.is_zero()) throw PreconditionError("head of zero operator");
    auto best = P.terms().begin();
    for (auto it = std::next(best); it != P.terms().end(); ++it)
        if (ord.compare(it->first, best->first) > 0) best = it;
    return {best->first, best->second};
}

Monomial quasi_quotient(const OreSignature &sig, const Monomial &m1, const Monomial &m2) {
    if (!quasi_divides(m1, m2)) throw PreconditionError("monomial is not quasi-divisible");
    std::size_t n = sig.n();
    Exponent s(2 * n);
    for (std::size_t i = 0; i < 2 * n; ++i) s[i] = m2.term[i] - m1.term[i];
    Exponent alpha1(m1.term.begin(), m1.term.begin() + static_cast<long>(n));
    Exponent sbeta(s.begin() + static_cast<long>(n), s.end());
    Scalar r = sig.head_unit(alpha1, sbeta);
    return {exact_div(m2.coeff, r * m1.coeff), s};
}

// ---------------------------------------------------------------- rational functions

RatFunc RatFunc::make(MultiPoly num, MultiPoly den) {
    if (den.is_zero()) throw PreconditionError("rational function with zero denominator");
    if (num.is_zero()) return {num, MultiPoly::constant(Scalar(den.domain(), 1L), den.nvars())};
    MultiPoly g = poly_gcd(num, den);
    if (!(g.is_constant() && g.constant_term().is_one())) {
        num = exact_quotient(num, g);
        den = exact_quotient(den, g);
    }
    Scalar u = den.lex_lead().second.unit_part();
    if (!u.is_one()) {
        Scalar ui = u.inverse();
        num = num * ui;
        den = den * ui;
    }
    return {std::move(num), std::move(den)};
}

RatFunc RatFunc::poly(const MultiPoly &p) {
    return {p, MultiPoly::constant(Scalar(p.domain(), 1L), p.nvars())};
}

RatFunc RatFunc::operator+(const RatFunc &o) const {
    if (den == o.den) return make(num + o.num, den);
    return make(num * o.den + o.num * den, den * o.den);
}

RatFunc RatFunc::operator-(const RatFunc &o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc &o) const { return make(num * o.num, den * o.den); }

RatFunc RatFunc::operator/(const RatFunc &o) const {
    if (o.is_zero()) throw PreconditionError("division by zero rational function");
    return make(num * o.den, den * o.num);
}

RatOreOperator RatOreOperator::from(const OreOperator &P) {
    RatOreOperator r(P.signature());
    std::size_t n = P.n();
    for (const auto &[t, c] : P.terms())
        for (std::size_t j = 1; j < n; ++j)
            if (t[n + j]) throw PreconditionError("rational operators are univariate in D");
    int ord = P.order(0);
    for (int k = 0; k <= ord; ++k) r.c_.push_back(RatFunc::poly(P.coeff(static_cast<std::size_t>(k))));
    r.trim();
    return r;
}

RatFunc RatOreOperator::coeff(std::size_t k) const {
    if (k < c_.size()) return c_[k];
    MultiPoly z(sig_->domain(), sig_->n());
    return RatFunc::poly(z);
}

void RatOreOperator::set_coeff(std::size_t k, const RatFunc &r) {
    while (c_.size() <= k) c_.push_back(RatFunc::poly(MultiPoly(sig_->domain(), sig_->n())));
    c_[k] = r;
    trim();
}

void RatOreOperator::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

RatOreOperator RatOreOperator::operator+(const RatOreOperator &o) const {
    RatOreOperator r(sig_);
    std::size_t m = std::max(c_.size(), o.c_.size());
    for (std::size_t k = 0; k < m; ++k) r.c_.push_back(coeff(k) + o.coeff(k));
    r.trim();
    return r;
}

RatOreOperator RatOreOperator::operator-(const RatOreOperator &o) const {
    RatOreOperator r(sig_);
    std::size_t m = std::max(c_.size(), o.c_.size());
    for (std::size_t k = 0; k < m; ++k) r.c_.push_back(coeff(k) - o.coeff(k));
    r.trim();
    return r;
}

RatFunc RatOreOperator::apply_sigma(const RatFunc &r, long k) const {
    return RatFunc::make(sig_->apply_sigma(r.num, 0, k), sig_->apply_sigma(r.den, 0, k));
}

RatFunc RatOreOperator::derive(const RatFunc &r) const {
    if (sig_->pair(0).delta == DeltaKind::Zero) return RatFunc::poly(MultiPoly(sig_->domain(), sig_->n()));
    // delta(n/d) = (delta(n) sigma(d) - sigma(n) delta(d)) / (sigma(d) d)
    MultiPoly sn = sig_->apply_sigma(r.num, 0), sd = sig_->apply_sigma(r.den, 0);
    MultiPoly dn = sig_->derive(r.num, 0), dd = sig_->derive(r.den, 0);
    return RatFunc::make(dn * sd - sn * dd, sd * r.den);
}

RatOreOperator RatOreOperator::d_times() const {
    RatOreOperator r(sig_);
    if (c_.empty()) return r;
    r.c_.assign(c_.size() + 1, RatFunc::poly(MultiPoly(sig_->domain(), sig_->n())));
    for (std::size_t j = 0; j < c_.size(); ++j) {
        r.c_[j + 1] = r.c_[j + 1] + apply_sigma(c_[j]);
        RatFunc dj = derive(c_[j]);
        if (!dj.is_zero()) r.c_[j] = r.c_[j] + dj;
    }
    r.trim();
    return r;
}

RatOreOperator RatOreOperator::operator*(const RatOreOperator &o) const {
    RatOreOperator r(sig_), cur = o;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i].is_zero()) {
            RatOreOperator t(sig_);
            for (const auto &c : cur.c_) t.c_.push_back(c_[i] * c);
            t.trim();
            r = r + t;
        }
        if (i + 1 < c_.size()) cur = cur.d_times();
    }
    return r;
}

std::string RatOreOperator::str() const {
    if (c_.empty()) return "0";
    auto names = sig_->x_names();
    std::string out;
    for (std::size_t k = c_.size(); k-- > 0;) {
        if (c_[k].is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + c_[k].num.str(names) + ")/(" + c_[k].den.str(names) + ")";
        if (k) out += "*" + detail::power(sig_->d_name(0), static_cast<unsigned>(k));
    }
    return out;
}

RatOreOperator rrem(const RatOreOperator &F, const RatOreOperator &G, RatOreOperator *quotient) {
    if (G.is_zero()) throw PreconditionError("right division by zero operator");
    RatOreOperator R = F, Q(G.signature());
    std::vector<RatOreOperator> dkG{G};
    int r = G.order();
    while (!R.is_zero() && R.order() >= r) {
        auto k = static_cast<std::size_t>(R.order() - r);
        while (dkG.size() <= k) dkG.push_back(dkG.back().d_times());
        RatFunc q = R.lc() / dkG[k].lc();
        RatOreOperator t(G.signature());
        t.set_coeff(k, q);
        R = R - t * G;
        if (quotient) Q = Q + t;
    }
    if (quotient) *quotient = Q;
    return R;
}

bool right_divisible(const OreOperator &F, const OreOperator &L) {
    return rrem(RatOreOperator::from(F), RatOreOperator::from(L)).is_zero();
}

// ---------------------------------------------------------------- actions

mpq_class TruncatedSeries::coeff(const Exponent &e) const {
    auto it = coeffs.find(e);
    return it == coeffs.end() ? mpq_class(0) : it->second;
}

bool TruncatedSeries::is_zero() const {
    for (const auto &[e, c] : coeffs)
        if (c != 0) return false;
    return true;
}

Exponent TruncatedSeries::initial_exponent() const {
    TermOrder ord = TermOrder::graded(nvars);
    const Exponent *best = nullptr;
    for (const auto &[e, c] : coeffs)
        if (c != 0 && (!best || ord.less(e, *best))) best = &e;
    if (!best) throw PreconditionError("initial exponent of zero series");
    return *best;
}

TruncatedSeries apply(const OreOperator &P, const TruncatedSeries &f) {
    const auto &sig = *P.signature();
    std::size_t n = sig.n();
    if (f.nvars != n) throw DomainMismatch("series and operator have different variable counts");
    for (std::size_t i = 0; i < n; ++i)
        if (!sig.is_differential(i) && !sig.pair(i).is_commutative())
            throw PreconditionError("series action needs differential or commutative pairs");
    int ord = std::max(P.total_order(), 0);
    if (static_cast<int>(f.cap) < ord)
        throw PreconditionError("series truncated at degree " + std::to_string(f.cap) +
                                " is too short for an operator of order " + std::to_string(ord));
    TruncatedSeries r;
    r.nvars = n;
    r.cap = f.cap - static_cast<unsigned>(ord);
    for (const auto &[t, c] : P.terms()) {
        mpq_class pc = c.to_rational();
        for (const auto &[u, v] : f.coeffs) {
            mpq_class coef = pc * v;
            Exponent w(n);
            bool ok = true;
            unsigned deg = 0;
            for (std::size_t i = 0; i < n && ok; ++i) {
                std::uint32_t b = t[n + i];
                if (sig.pair(i).is_commutative() && b) {
                    ok = false; // a commutative D annihilates nothing; treat as zero map
                    break;
                }
                if (u[i] < b) {
                    ok = false;
                    break;
                }
                for (std::uint32_t k = 0; k < b; ++k) coef *= (u[i] - k);
                w[i] = u[i] - b + t[i];
                deg += w[i];
            }
            if (!ok || coef == 0 || deg > r.cap) continue;
            r.coeffs[w] += coef;
        }
    }
    for (auto it = r.coeffs.begin(); it != r.coeffs.end();)
        it = (it->second == 0) ? r.coeffs.erase(it) : std::next(it);
    return r;
}

std::vector<mpq_class> apply(const OreOperator &P, const std::vector<mpq_class> &prefix, std::size_t out_len) {
    const auto &sig = *P.signature();
    if (sig.n() != 1 || !sig.is_shift(0)) throw PreconditionError("sequence action needs a univariate shift algebra");
    int ord = std::max(P.order(0), 0);
    std::size_t need = out_len + static_cast<std::size_t>(ord);
    if (prefix.size() < need)
        throw PreconditionError("sequence prefix too short: " + std::to_string(need) + " terms required, " +
                                std::to_string(prefix.size()) + " given");
    std::vector<mpq_class> out(out_len, mpq_class(0));
    for (const auto &[t, c] : P.terms()) {
        mpq_class pc = c.to_rational();
        for (std::size_t k = 0; k < out_len; ++k) {
            mpq_class v = pc;
            for (std::uint32_t j = 0; j < t[0]; ++j) v *= static_cast<long>(k);
            out[k] += v * prefix[k + t[1]];
        }
    }
    return out;
}

} // namespace orecalc
