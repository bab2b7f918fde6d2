#include "orecalc/dfinite.hpp"

#include "orecalc/errors.hpp"
#include "orecalc/groebner.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>

namespace orecalc {

namespace {

// Keys are D-exponents, compared graded with ties going to the larger
// exponent of the last variable.
struct KeyOrder {
    std::size_t n = 0;

    int compare(const Exponent &a, const Exponent &b) const {
        unsigned da = 0, db = 0;
        for (std::size_t i = 0; i < n; ++i) {
            da += a[i];
            db += b[i];
        }
        if (da != db) return da < db ? -1 : 1;
        for (std::size_t i = n; i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }
};

struct KeyCmp {
    const KeyOrder *ord;
    bool operator()(const Exponent &a, const Exponent &b) const { return ord->compare(a, b) < 0; }
};

using Terms = std::map<Exponent, MultiPoly, KeyCmp>;

struct DOp {
    Terms t;

    explicit DOp(const KeyOrder *o) : t(KeyCmp{o}) {}
    bool zero() const { return t.empty(); }
    const Exponent &ht() const { return t.rbegin()->first; }
    const MultiPoly &hc() const { return t.rbegin()->second; }

    void add(const Exponent &e, const MultiPoly &c) {
        if (c.is_zero()) return;
        auto [it, ins] = t.try_emplace(e, c);
        if (!ins) {
            it->second += c;
            if (it->second.is_zero()) t.erase(it);
        }
    }
};

bool key_divides(const Exponent &a, const Exponent &b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Exponent key_lcm(const Exponent &a, const Exponent &b) {
    Exponent r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

class Weyl {
public:
    explicit Weyl(std::size_t n) : ord_{n} {}

    const KeyOrder *ord() const { return &ord_; }
    std::size_t n() const { return ord_.n; }

    DOp make() const { return DOp(&ord_); }

    // D^k * F.
    DOp monomial_times(const Exponent &k, const DOp &F) const {
        DOp cur = F;
        for (std::size_t i = 0; i < n(); ++i)
            for (unsigned r = 0; r < k[i]; ++r) {
                DOp next = make();
                for (const auto &[e, c] : cur.t) {
                    Exponent u = e;
                    ++u[i];
                    next.add(u, c);
                    next.add(e, c.derivative(i));
                }
                cur = std::move(next);
            }
        return cur;
    }

    static void scale(DOp &F, const MultiPoly &p) {
        for (auto &[e, c] : F.t) c = c * p;
    }

    static void axpy(DOp &F, const MultiPoly &p, const DOp &G) {
        for (const auto &[e, c] : G.t) F.add(e, c * p);
    }

    // Divides F (and *mult) by their common content; makes the head
    // coefficient canonical when mult is absent.
    static void primitive(DOp &F, MultiPoly *mult = nullptr) {
        if (F.zero()) return;
        MultiPoly g = mult ? *mult : MultiPoly(F.hc().domain(), F.hc().nvars());
        for (auto it = F.t.rbegin(); it != F.t.rend(); ++it) {
            g = poly_gcd(g, it->second);
            if (g.is_constant() && g.constant_term().is_one()) break;
        }
        if (!g.is_constant() || !g.constant_term().is_one()) {
            for (auto &[e, c] : F.t) c = exact_quotient(c, g);
            if (mult) *mult = exact_quotient(*mult, g);
        }
        if (!mult && normalize_unit(F.hc()) != F.hc())
            for (auto &[e, c] : F.t) c = -c;
    }

    // Full reduction modulo the live elements of B. When mult is given it is
    // multiplied by the factor applied to F, so that mult_in * F_in equals
    // F_out modulo the ideal after dividing out the mult_out factor.
    void reduce(DOp &F, const std::vector<DOp> &B, const std::vector<bool> *dead = nullptr,
                MultiPoly *mult = nullptr) const {
        if (F.zero()) return;
        std::optional<Exponent> bound;
        while (!F.zero()) {
            auto it = bound ? F.t.lower_bound(*bound) : F.t.end();
            // Largest key strictly below bound (or the head).
            if (it == F.t.begin()) break;
            --it;
            const Exponent v = it->first;
            std::size_t j = B.size();
            for (std::size_t k = 0; k < B.size(); ++k) {
                if (dead && (*dead)[k]) continue;
                if (!B[k].zero() && key_divides(B[k].ht(), v)) {
                    j = k;
                    break;
                }
            }
            if (j == B.size()) {
                bound = v;
                continue;
            }
            Exponent w(n());
            for (std::size_t i = 0; i < n(); ++i) w[i] = v[i] - B[j].ht()[i];
            MultiPoly c = it->second;
            const MultiPoly &h = B[j].hc();
            MultiPoly g = poly_gcd(h, c);
            MultiPoly hf = exact_quotient(h, g), cf = exact_quotient(c, g);
            scale(F, hf);
            if (mult) *mult = *mult * hf;
            axpy(F, -cf, monomial_times(w, B[j]));
            primitive(F, mult);
            // Every new term lies below v and the terms above v stay
            // irreducible.
            bound = v;
        }
    }

    DOp spoly(const DOp &A, const DOp &B) const {
        Exponent l = key_lcm(A.ht(), B.ht());
        Exponent wa(n()), wb(n());
        for (std::size_t i = 0; i < n(); ++i) {
            wa[i] = l[i] - A.ht()[i];
            wb[i] = l[i] - B.ht()[i];
        }
        MultiPoly g = poly_gcd(A.hc(), B.hc());
        DOp r = monomial_times(wa, A);
        scale(r, exact_quotient(B.hc(), g));
        axpy(r, -exact_quotient(A.hc(), g), monomial_times(wb, B));
        return r;
    }

    // Reduced Groebner basis, ascending by head.
    std::vector<DOp> groebner(std::vector<DOp> input) const {
        std::vector<DOp> G;
        std::vector<bool> dead;
        struct PairKey {
            Exponent l;
            std::size_t seq, i, j;
        };
        auto cmp = [this](const PairKey &a, const PairKey &b) {
            int c = ord_.compare(a.l, b.l);
            if (c) return c < 0;
            return a.seq < b.seq;
        };
        std::set<PairKey, decltype(cmp)> pairs(cmp);
        std::size_t seq = 0;
        std::vector<DOp> queue = std::move(input);
        auto insert = [&](DOp p) {
            std::size_t m = G.size();
            G.push_back(std::move(p));
            dead.push_back(false);
            for (std::size_t k = 0; k < m; ++k) {
                if (dead[k]) continue;
                if (key_divides(G[m].ht(), G[k].ht())) {
                    dead[k] = true;
                    queue.push_back(G[k]);
                    continue;
                }
                pairs.insert({key_lcm(G[k].ht(), G[m].ht()), seq++, k, m});
            }
        };
        auto drain = [&] {
            while (!queue.empty()) {
                DOp p = std::move(queue.back());
                queue.pop_back();
                primitive(p);
                reduce(p, G, &dead);
                if (!p.zero()) {
                    primitive(p);
                    insert(std::move(p));
                }
            }
        };
        drain();
        while (!pairs.empty()) {
            PairKey pk = *pairs.begin();
            pairs.erase(pairs.begin());
            if (dead[pk.i] || dead[pk.j]) continue;
            queue.push_back(spoly(G[pk.i], G[pk.j]));
            drain();
        }
        std::vector<DOp> live;
        for (std::size_t k = 0; k < G.size(); ++k)
            if (!dead[k]) live.push_back(G[k]);
        return finalize(std::move(live));
    }

    std::vector<DOp> finalize(std::vector<DOp> G) const {
        std::vector<DOp> minimal;
        for (std::size_t i = 0; i < G.size(); ++i) {
            bool redundant = false;
            for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
                if (i == j) continue;
                if (key_divides(G[j].ht(), G[i].ht()) && (G[j].ht() != G[i].ht() || j < i)) redundant = true;
            }
            if (!redundant) minimal.push_back(G[i]);
        }
        std::sort(minimal.begin(), minimal.end(),
                  [this](const DOp &a, const DOp &b) { return ord_.compare(a.ht(), b.ht()) < 0; });
        for (std::size_t i = 0; i < minimal.size(); ++i) {
            DOp tail = minimal[i];
            Exponent h = tail.ht();
            MultiPoly hc = tail.hc();
            tail.t.erase(std::prev(tail.t.end()));
            std::vector<DOp> others;
            for (std::size_t j = 0; j < minimal.size(); ++j)
                if (j != i) others.push_back(minimal[j]);
            MultiPoly mult = MultiPoly::constant(Scalar(Domain::ZZ, 1L), hc.nvars());
            reduce(tail, others, nullptr, &mult);
            DOp r = make();
            for (const auto &[e, c] : tail.t) r.t.emplace(e, c);
            r.add(h, hc * mult);
            primitive(r);
            minimal[i] = std::move(r);
        }
        return minimal;
    }

private:
    KeyOrder ord_;
};

void require_weyl(const SigPtr &sig) {
    if (!sig) throw PreconditionError("operator without signature");
    for (std::size_t i = 0; i < sig->n(); ++i)
        if (!sig->is_differential(i)) throw PreconditionError("D-finite systems need a differential signature");
    if (sig->domain() == Domain::QQ_t) throw PreconditionError("D-finite systems need coefficients in ZZ or QQ");
}

// Coefficients over ZZ after clearing denominators.
std::map<Exponent, MultiPoly> integer_coefficients(const OreOperator &P) {
    auto cs = P.d_coefficients();
    if (P.domain() == Domain::ZZ) return cs;
    mpz_class den = 1;
    for (const auto &[e, c] : cs)
        for (const auto &[x, v] : c.terms()) den = lcm(den, mpz_class(v.rational().get_den()));
    Scalar s(Domain::QQ, mpq_class(den));
    std::map<Exponent, MultiPoly> out;
    for (const auto &[e, c] : cs) out.emplace(e, (c * s).to_domain(Domain::ZZ));
    return out;
}

DOp to_dop(const Weyl &W, const OreOperator &P) {
    DOp r = W.make();
    for (const auto &[e, c] : integer_coefficients(P)) r.add(e, c);
    return r;
}

OreOperator to_op(const DOp &F, const SigPtr &sig) {
    std::map<Exponent, MultiPoly> cs;
    for (const auto &[e, c] : F.t) cs.emplace(e, c);
    return OreOperator::from_d_coefficients(sig, cs);
}

SigPtr integer_signature(const SigPtr &sig) {
    if (sig->domain() == Domain::ZZ) return sig;
    return weyl_signature(sig->x_names());
}

std::vector<DOp> to_dops(const Weyl &W, const WeylGB &G) {
    std::vector<DOp> out;
    for (const auto &g : G.elements) out.push_back(to_dop(W, g));
    return out;
}

MultiPoly one_poly(std::size_t n) { return MultiPoly::constant(Scalar(Domain::ZZ, 1L), n); }

KeyOrder d_order(std::size_t n) { return KeyOrder{n}; }

} // namespace

SigPtr weyl_signature(const std::vector<std::string> &names) { return OreSignature::differential(Domain::ZZ, names); }

std::vector<Exponent> WeylGB::head_terms() const {
    KeyOrder ord = d_order(n());
    std::vector<Exponent> out;
    for (const auto &g : elements) {
        std::optional<Exponent> best;
        for (const auto &[e, c] : g.d_coefficients())
            if (!best || ord.compare(e, *best) > 0) best = e;
        out.push_back(*best);
    }
    return out;
}

std::vector<MultiPoly> WeylGB::head_coefficients() const {
    std::vector<MultiPoly> out;
    auto hts = head_terms();
    for (std::size_t i = 0; i < elements.size(); ++i) out.push_back(elements[i].d_coefficients().at(hts[i]));
    return out;
}

bool WeylGB::is_d_finite() const {
    auto hts = head_terms();
    for (std::size_t i = 0; i < n(); ++i) {
        bool found = false;
        for (const auto &h : hts) {
            bool pure = true;
            for (std::size_t j = 0; j < n() && pure; ++j)
                if (j != i && h[j]) pure = false;
            found = found || pure;
        }
        if (!found) return false;
    }
    return true;
}

std::vector<Exponent> WeylGB::parametric_exponents() const {
    if (!is_d_finite()) throw PreconditionError("the ideal is not D-finite: infinitely many parametric terms");
    auto hts = head_terms();
    Exponent box(n(), 0);
    for (const auto &h : hts) {
        std::size_t nz = 0, idx = 0;
        for (std::size_t j = 0; j < n(); ++j)
            if (h[j]) {
                ++nz;
                idx = j;
            }
        if (nz == 0) return {};
        if (nz == 1) box[idx] = box[idx] ? std::min(box[idx], h[idx]) : h[idx];
    }
    std::vector<Exponent> out;
    Exponent u(n(), 0);
    while (true) {
        bool param = true;
        for (const auto &h : hts) param = param && !key_divides(h, u);
        if (param) out.push_back(u);
        std::size_t i = 0;
        while (i < n()) {
            if (++u[i] < box[i]) break;
            u[i] = 0;
            ++i;
        }
        if (i == n()) break;
    }
    KeyOrder ord = d_order(n());
    std::sort(out.begin(), out.end(), [&](const Exponent &a, const Exponent &b) { return ord.compare(a, b) < 0; });
    return out;
}

WeylGB weyl_gb(const std::vector<OreOperator> &P) {
    SigPtr sig;
    for (const auto &p : P) {
        if (p.is_zero()) throw PreconditionError("zero generator");
        if (!sig) sig = p.signature();
        require_same_signature(sig, p.signature());
    }
    if (!sig) throw PreconditionError("no generators");
    require_weyl(sig);
    Weyl W(sig->n());
    std::vector<DOp> in;
    for (const auto &p : P) in.push_back(to_dop(W, p));
    WeylGB out{integer_signature(sig), {}};
    for (const auto &g : W.groebner(std::move(in))) out.elements.push_back(to_op(g, out.sig));
    return out;
}

OreOperator weyl_reduce(const OreOperator &F, const WeylGB &G) {
    require_same_signature(integer_signature(F.signature()), G.sig);
    Weyl W(G.n());
    DOp f = to_dop(W, F);
    W.primitive(f);
    W.reduce(f, to_dops(W, G));
    W.primitive(f);
    return to_op(f, G.sig);
}

bool weyl_member(const WeylGB &G, const OreOperator &F) { return weyl_reduce(F, G).is_zero(); }

bool same_weyl_ideal(const WeylGB &A, const WeylGB &B) {
    for (const auto &a : A.elements)
        if (!weyl_member(B, a)) return false;
    for (const auto &b : B.elements)
        if (!weyl_member(A, b)) return false;
    return true;
}

std::size_t rank(const WeylGB &G) { return G.parametric_exponents().size(); }

MultiPoly singular_locus(const WeylGB &G) {
    MultiPoly f = one_poly(G.n());
    for (const auto &h : G.head_coefficients()) f = poly_lcm(f, h);
    return normalize_unit(f);
}

bool is_ordinary(const WeylGB &G, const std::vector<Scalar> &point) {
    if (point.size() != G.n()) throw PreconditionError("point has the wrong dimension");
    MultiPoly f = singular_locus(G).to_domain(Domain::QQ);
    for (std::size_t i = 0; i < point.size(); ++i) {
        if (point[i].domain() == Domain::QQ_t) throw DomainMismatch("point coordinates must be rational");
        f = f.evaluate(i, Scalar(Domain::QQ, point[i].to_rational()));
    }
    return !f.is_zero();
}

bool origin_is_ordinary(const WeylGB &G) {
    for (const auto &h : G.head_coefficients())
        if (h.constant_term().is_zero()) return false;
    return true;
}

EulerForm euler_rewrite(const OreOperator &P) {
    require_weyl(P.signature());
    std::size_t n = P.n();
    EulerForm E;
    if (P.is_zero()) return E;
    E.m = static_cast<std::size_t>(P.total_order());
    Domain d = P.domain();
    // Falling factorials y_i (y_i - 1) ... (y_i - k + 1).
    auto falling = [&](std::size_t i, unsigned k) {
        MultiPoly r = MultiPoly::constant(Scalar(d, 1L), n);
        MultiPoly y = MultiPoly::variable(d, n, i);
        for (unsigned j = 0; j < k; ++j) r = r * (y - MultiPoly::constant(Scalar(d, static_cast<long>(j)), n));
        return r;
    };
    for (const auto &[u, c] : P.d_coefficients()) {
        MultiPoly delta = MultiPoly::constant(Scalar(d, 1L), n);
        for (std::size_t i = 0; i < n; ++i) delta = delta * falling(i, u[i]);
        for (const auto &[a, v] : c.terms()) {
            Exponent x(n);
            for (std::size_t i = 0; i < n; ++i) x[i] = a[i] + static_cast<std::uint32_t>(E.m) - u[i];
            auto it = E.parts.try_emplace(x, d, n).first;
            it->second += delta * v;
            if (it->second.is_zero()) E.parts.erase(it);
        }
    }
    return E;
}

OreOperator euler_expand(const EulerForm &E, const SigPtr &sig) {
    std::size_t n = sig->n();
    OreOperator r(sig);
    for (const auto &[v, p] : E.parts) {
        Exponent xt(2 * n, 0);
        std::copy(v.begin(), v.end(), xt.begin());
        OreOperator xv = OreOperator::monomial(sig, Scalar(sig->domain(), 1L), xt);
        for (const auto &[w, c] : p.terms()) {
            OreOperator t = xv * c;
            for (std::size_t i = 0; i < n; ++i)
                t = t * (OreOperator::x(sig, i) * OreOperator::d(sig, i)).pow(w[i]);
            r += t;
        }
    }
    return r;
}

MultiPoly indicial_polynomial(const OreOperator &P) {
    if (P.is_zero()) return MultiPoly(P.domain(), P.n());
    EulerForm E = euler_rewrite(P);
    KeyOrder ord = d_order(P.n());
    auto best = E.parts.begin();
    for (auto it = E.parts.begin(); it != E.parts.end(); ++it)
        if (ord.compare(it->first, best->first) < 0) best = it;
    return best->second;
}

ExponentCandidateSet exponent_candidates(const WeylGB &G) {
    std::size_t n = G.n();
    ExponentCandidateSet out;
    for (const auto &g : G.elements) {
        MultiPoly p = indicial_polynomial(g);
        if (!p.is_zero()) out.generators.push_back(p);
    }
    std::vector<std::string> ys;
    for (std::size_t i = 0; i < n; ++i) ys.push_back("y" + std::to_string(i + 1));
    SigPtr csig = OreSignature::commutative(Domain::QQ, ys);
    std::vector<OreOperator> gens;
    for (const auto &p : out.generators) gens.push_back(OreOperator::from_poly(csig, p.to_domain(Domain::QQ)));
    if (gens.empty()) throw PreconditionError("no nonzero indicial polynomials");
    TermOrder ord = TermOrder::ore_default(n);
    GroebnerBasis gb = buchberger(gens, ord);
    for (std::size_t i = 0; i < n; ++i) {
        bool pure = false;
        for (const auto &g : gb.elements) {
            Exponent h = head(g, ord).term;
            bool ok = true;
            for (std::size_t j = 0; j < n && ok; ++j) ok = (j == i) || h[j] == 0;
            pure = pure || ok;
        }
        if (!pure)
            throw PreconditionError("the indicial polynomials of the basis do not generate a zero-dimensional ideal; "
                                    "augment the generators with further reduced elements of the ideal");
    }
    std::vector<std::vector<long>> roots(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> elim;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) elim.push_back(j);
        GroebnerBasis e = eliminate(gens, elim, TermOrder::elimination(n, elim));
        std::optional<MultiPoly> uni;
        for (const auto &g : e.elements) {
            MultiPoly p = g.coeff(0, 0);
            if (!p.is_zero() && (!uni || p.total_degree() < uni->total_degree())) uni = p;
        }
        if (!uni) throw PreconditionError("elimination produced no univariate polynomial");
        if (uni->is_constant()) return out;
        roots[i] = nonneg_integer_roots(uni->remap(1, std::vector<std::size_t>(n, 0)));
        if (roots[i].empty()) return out;
    }
    std::vector<std::size_t> idx(n, 0);
    while (true) {
        Exponent u(n);
        for (std::size_t i = 0; i < n; ++i) u[i] = static_cast<std::uint32_t>(roots[i][idx[i]]);
        bool ok = true;
        for (const auto &p : out.generators) {
            MultiPoly v = p;
            for (std::size_t i = 0; i < n; ++i) v = v.evaluate(i, Scalar(v.domain(), static_cast<long>(u[i])));
            if (!v.is_zero()) {
                ok = false;
                break;
            }
        }
        if (ok) out.candidates.push_back(u);
        std::size_t i = 0;
        while (i < n) {
            if (++idx[i] < roots[i].size()) break;
            idx[i] = 0;
            ++i;
        }
        if (i == n) break;
    }
    std::sort(out.candidates.begin(), out.candidates.end());
    return out;
}

WeylGB euler_ideal(const SigPtr &sig, const Exponent &u) {
    require_weyl(sig);
    if (u.size() != sig->n()) throw PreconditionError("exponent has the wrong dimension");
    SigPtr zsig = integer_signature(sig);
    WeylGB out{zsig, {}};
    for (std::size_t i = 0; i < sig->n(); ++i)
        out.elements.push_back(OreOperator::x(zsig, i) * OreOperator::d(zsig, i) -
                               OreOperator::constant(zsig, Scalar(Domain::ZZ, static_cast<long>(u[i]))));
    // x_i D_i - u_i commute pairwise, so this is already a reduced basis up
    // to ordering.
    return weyl_gb(out.elements);
}

namespace {

using RVec = std::vector<RatFunc>;

RatFunc rzero(std::size_t n) { return RatFunc::poly(MultiPoly(Domain::ZZ, n)); }

// D/I as a K(x)-space with basis the parametric terms; act[i][l] is the
// normal form of D_i * D^pe[l].
struct Quotient {
    std::size_t n = 0;
    std::vector<Exponent> pe;
    std::vector<std::vector<RVec>> act;
    Weyl W{0};
    std::vector<DOp> B;

    explicit Quotient(const WeylGB &G) : n(G.n()), pe(G.parametric_exponents()), W(G.n()) {
        B = to_dops(W, G);
        act.assign(n, {});
        for (std::size_t i = 0; i < n; ++i)
            for (const auto &l : pe) {
                Exponent e = l;
                ++e[i];
                act[i].push_back(normal_form(e));
            }
    }

    RVec normal_form(const Exponent &e) const {
        DOp F = W.make();
        F.add(e, one_poly(n));
        MultiPoly mult = one_poly(n);
        W.reduce(F, B, nullptr, &mult);
        RVec v(pe.size(), rzero(n));
        for (const auto &[k, c] : F.t) {
            auto it = std::lower_bound(pe.begin(), pe.end(), k, [&](const Exponent &a, const Exponent &b) {
                return W.ord()->compare(a, b) < 0;
            });
            v[static_cast<std::size_t>(it - pe.begin())] = RatFunc::make(c, mult);
        }
        return v;
    }

    // D_i applied to the class of sum v[l] * D^pe[l].
    RVec apply_d(std::size_t i, const RVec &v) const {
        RVec r(pe.size(), rzero(n));
        for (std::size_t l = 0; l < pe.size(); ++l) {
            if (v[l].is_zero()) continue;
            const MultiPoly &num = v[l].num, &den = v[l].den;
            r[l] = r[l] + RatFunc::make(num.derivative(i) * den - num * den.derivative(i), den * den);
            for (std::size_t k = 0; k < pe.size(); ++k)
                if (!act[i][l][k].is_zero()) r[k] = r[k] + v[l] * act[i][l][k];
        }
        return r;
    }
};

} // namespace

// Linear algebra in D/I + D/J: terms are visited in increasing order and
// every term whose image depends on the images of the earlier staircase
// terms yields a basis element of the kernel I cap J.
WeylGB intersect_left_ideals(const WeylGB &I, const WeylGB &J) {
    require_same_signature(I.sig, J.sig);
    std::size_t n = I.n();
    Quotient QI(I), QJ(J);
    std::size_t dim = QI.pe.size() + QJ.pe.size();
    KeyOrder ord = d_order(n);
    auto less = [&](const Exponent &a, const Exponent &b) { return ord.compare(a, b) < 0; };

    std::vector<Exponent> stair;
    std::vector<RVec> images;
    // Echelon rows: rows[k] = sum combos[k][j] * images[j].
    std::vector<RVec> rows, combos;
    std::vector<std::size_t> pivot;
    std::vector<Exponent> heads;
    std::vector<OreOperator> kept;
    std::map<Exponent, std::pair<std::size_t, std::size_t>, decltype(less)> next(less);
    std::set<Exponent> seen;

    auto image_of_one = [&] {
        RVec v = QI.normal_form(Exponent(n, 0)), w = QJ.normal_form(Exponent(n, 0));
        v.insert(v.end(), w.begin(), w.end());
        return v;
    };
    auto visit = [&](const Exponent &t, RVec v) {
        RVec c;
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (v[pivot[k]].is_zero()) continue;
            RatFunc f = v[pivot[k]] / rows[k][pivot[k]];
            for (std::size_t j = 0; j < dim; ++j)
                if (!rows[k][j].is_zero()) v[j] = v[j] - f * rows[k][j];
            c.resize(stair.size(), rzero(n));
            for (std::size_t j = 0; j < combos[k].size(); ++j)
                if (!combos[k][j].is_zero()) c[j] = c[j] - f * combos[k][j];
        }
        c.resize(stair.size(), rzero(n));
        std::size_t p = 0;
        while (p < dim && v[p].is_zero()) ++p;
        if (p == dim) {
            // t + sum c[j] * stair[j] lies in both ideals.
            MultiPoly den = one_poly(n);
            for (const auto &x : c)
                if (!x.is_zero()) den = poly_lcm(den, x.den);
            std::map<Exponent, MultiPoly> cs{{t, den}};
            for (std::size_t j = 0; j < c.size(); ++j)
                if (!c[j].is_zero()) cs.emplace(stair[j], c[j].num * exact_quotient(den, c[j].den));
            kept.push_back(OreOperator::from_d_coefficients(integer_signature(I.sig), cs));
            heads.push_back(t);
            return;
        }
        c.push_back(RatFunc::poly(one_poly(n)));
        stair.push_back(t);
        rows.push_back(std::move(v));
        combos.push_back(std::move(c));
        pivot.push_back(p);
        std::size_t s = stair.size() - 1;
        for (std::size_t i = 0; i < n; ++i) {
            Exponent u = t;
            ++u[i];
            if (seen.insert(u).second) next.emplace(u, std::make_pair(s, i));
        }
    };

    RVec one = image_of_one();
    images.push_back(one);
    seen.insert(Exponent(n, 0));
    visit(Exponent(n, 0), one);
    if (stair.empty()) images.clear();
    while (!next.empty()) {
        auto [t, src] = *next.begin();
        next.erase(next.begin());
        bool divisible = false;
        for (const auto &h : heads) divisible = divisible || key_divides(h, t);
        if (divisible) continue;
        const RVec &base = images[src.first];
        RVec a(base.begin(), base.begin() + static_cast<long>(QI.pe.size()));
        RVec b(base.begin() + static_cast<long>(QI.pe.size()), base.end());
        RVec v = QI.apply_d(src.second, a), w = QJ.apply_d(src.second, b);
        v.insert(v.end(), w.begin(), w.end());
        std::size_t before = stair.size();
        visit(t, v);
        if (stair.size() > before) images.push_back(std::move(v));
    }
    if (kept.empty()) throw PreconditionError("intersection is the zero ideal");
    return weyl_gb(kept);
}

namespace {

std::vector<Exponent> simplex(std::size_t n, std::size_t m) {
    std::vector<Exponent> out;
    Exponent u(n, 0);
    while (true) {
        unsigned s = 0;
        for (auto v : u) s += v;
        if (s <= m) out.push_back(u);
        std::size_t i = 0;
        while (i < n) {
            if (++u[i] <= m) break;
            u[i] = 0;
            ++i;
        }
        if (i == n) break;
    }
    KeyOrder ord = d_order(n);
    std::sort(out.begin(), out.end(), [&](const Exponent &a, const Exponent &b) { return ord.compare(a, b) < 0; });
    return out;
}

// Left ideal of all p(theta) with p vanishing on U, theta_i = x_i*D_i. Its
// solutions are spanned by the x^u, u in U, so it is the intersection of the
// Euler ideals of U; the degree grows until the rank reaches |U|.
WeylGB vanishing_theta_ideal(const SigPtr &sig, const std::vector<Exponent> &U) {
    std::size_t n = sig->n();
    SigPtr zsig = integer_signature(sig);
    std::vector<OreOperator> theta;
    for (std::size_t i = 0; i < n; ++i) theta.push_back(OreOperator::x(zsig, i) * OreOperator::d(zsig, i));
    for (std::size_t deg = 1;; ++deg) {
        std::vector<Exponent> monos = simplex(n, deg);
        std::size_t cols = monos.size();
        std::vector<std::vector<mpq_class>> A;
        for (const auto &u : U) {
            std::vector<mpq_class> row;
            for (const auto &a : monos) {
                mpz_class v = 1;
                for (std::size_t i = 0; i < n; ++i) {
                    mpz_class p;
                    mpz_ui_pow_ui(p.get_mpz_t(), u[i], a[i]);
                    v *= p;
                }
                row.emplace_back(v);
            }
            A.push_back(std::move(row));
        }
        // Reduced row echelon form; kernel vectors come from free columns.
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols && r < A.size(); ++c) {
            std::size_t p = r;
            while (p < A.size() && A[p][c] == 0) ++p;
            if (p == A.size()) continue;
            std::swap(A[p], A[r]);
            mpq_class inv = 1 / A[r][c];
            for (auto &x : A[r]) x *= inv;
            for (std::size_t q = 0; q < A.size(); ++q) {
                if (q == r || A[q][c] == 0) continue;
                mpq_class f = A[q][c];
                for (std::size_t k = 0; k < cols; ++k) A[q][k] -= f * A[r][k];
            }
            pivots.push_back(c);
            ++r;
        }
        std::vector<OreOperator> gens;
        for (std::size_t f = 0; f < cols; ++f) {
            if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
            std::vector<mpq_class> v(cols);
            v[f] = 1;
            for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -A[k][f];
            mpz_class den = 1;
            for (const auto &x : v) den = lcm(den, mpz_class(x.get_den()));
            OreOperator P(zsig);
            for (std::size_t j = 0; j < cols; ++j) {
                if (v[j] == 0) continue;
                mpq_class c = v[j] * den;
                OreOperator t = OreOperator::constant(zsig, Scalar(Domain::ZZ, c.get_num()));
                for (std::size_t i = 0; i < n; ++i) t = t * theta[i].pow(monos[j][i]);
                P += t;
            }
            gens.push_back(std::move(P));
        }
        if (gens.empty()) continue;
        WeylGB E = weyl_gb(gens);
        if (E.is_d_finite() && rank(E) == U.size()) return E;
    }
}

WeylGB left_multiple(const WeylGB &G, const std::vector<Exponent> &B) {
    std::size_t m = 0;
    for (const auto &b : B) {
        if (b.size() != G.n()) throw PreconditionError("exponent has the wrong dimension");
        m = std::max<std::size_t>(m, std::accumulate(b.begin(), b.end(), 0u));
    }
    std::vector<Exponent> U;
    for (const auto &u : simplex(G.n(), m))
        if (std::find(B.begin(), B.end(), u) == B.end()) U.push_back(u);
    if (U.empty()) return G;
    return intersect_left_ideals(G, vanishing_theta_ideal(G.sig, U));
}

} // namespace

WeylGB remove_apparent(const WeylGB &G, const std::vector<Exponent> &B) {
    std::size_t d = rank(G);
    std::set<Exponent> distinct(B.begin(), B.end());
    if (distinct.size() != B.size() || B.size() != d)
        throw PreconditionError("B must hold rank(G) = " + std::to_string(d) + " distinct exponents");
    return left_multiple(G, B);
}

ApparentVerdict detect_apparent(const WeylGB &G, bool parallel) {
    return detect_apparent(G, exponent_candidates(G).candidates, parallel);
}

ApparentVerdict detect_apparent(const WeylGB &G, const std::vector<Exponent> &candidates, bool parallel) {
    std::size_t d = rank(G);
    ApparentVerdict v;
    v.candidates = candidates;
    std::sort(v.candidates.begin(), v.candidates.end());
    v.candidates.erase(std::unique(v.candidates.begin(), v.candidates.end()), v.candidates.end());
    std::size_t s = v.candidates.size();
    if (s < d) return v;
    // Subsets as index combinations in lexicographic order.
    std::vector<std::vector<std::size_t>> subsets;
    std::vector<std::size_t> c(d);
    std::iota(c.begin(), c.end(), 0);
    while (true) {
        subsets.push_back(c);
        std::size_t i = d;
        while (i > 0 && c[i - 1] == s - d + i - 1) --i;
        if (i == 0) break;
        ++c[i - 1];
        for (std::size_t j = i; j < d; ++j) c[j] = c[j - 1] + 1;
    }
    auto subset = [&](std::size_t k) {
        std::vector<Exponent> B;
        for (auto i : subsets[k]) B.push_back(v.candidates[i]);
        return B;
    };
    std::vector<std::optional<WeylGB>> results(subsets.size());
    if (parallel && subsets.size() > 1) {
        std::vector<std::string> errors(subsets.size());
#pragma omp parallel for schedule(dynamic)
        for (std::size_t k = 0; k < subsets.size(); ++k) {
            try {
                results[k] = left_multiple(G, subset(k));
            } catch (const std::exception &e) {
                errors[k] = e.what();
            }
        }
        for (const auto &e : errors)
            if (!e.empty()) throw PreconditionError(e);
        for (std::size_t k = 0; k < subsets.size(); ++k) {
            v.tried = true;
            v.B = subset(k);
            v.M = *results[k];
            if (origin_is_ordinary(v.M)) {
                v.apparent = true;
                return v;
            }
        }
        return v;
    }
    for (std::size_t k = 0; k < subsets.size(); ++k) {
        v.tried = true;
        v.B = subset(k);
        v.M = left_multiple(G, v.B);
        if (origin_is_ordinary(v.M)) {
            v.apparent = true;
            return v;
        }
    }
    return v;
}

namespace {

mpz_class factorial(unsigned k) {
    mpz_class r = 1;
    for (unsigned i = 2; i <= k; ++i) r *= i;
    return r;
}

} // namespace

std::vector<TruncatedSeries> series_solutions(const WeylGB &G, unsigned cap) {
    std::size_t n = G.n();
    if (!origin_is_ordinary(G)) throw PreconditionError("the origin is not an ordinary point");
    std::vector<Exponent> pe = G.parametric_exponents();
    Weyl W(n);
    std::vector<DOp> B = to_dops(W, G);
    std::set<Exponent> param(pe.begin(), pe.end());

    // For each exponent v with |v| <= cap: ell * D^v = A modulo the ideal,
    // with A supported on parametric terms.
    struct Rep {
        MultiPoly ell;
        DOp A;
    };
    std::map<Exponent, Rep> reps;
    for (const auto &v : simplex(n, cap)) {
        if (param.count(v)) {
            DOp a = W.make();
            a.add(v, one_poly(n));
            reps.emplace(v, Rep{one_poly(n), std::move(a)});
            continue;
        }
        std::size_t i = 0;
        while (v[i] == 0) ++i;
        Exponent prev = v;
        --prev[i];
        const Rep &r = reps.at(prev);
        Exponent ei(n, 0);
        ei[i] = 1;
        DOp a = W.monomial_times(ei, r.A);
        Weyl::scale(a, r.ell);
        Weyl::axpy(a, -r.ell.derivative(i), r.A);
        MultiPoly ell = r.ell * r.ell;
        W.reduce(a, B, nullptr, &ell);
        Weyl::primitive(a, &ell);
        reps.emplace(v, Rep{std::move(ell), std::move(a)});
    }

    std::vector<TruncatedSeries> out;
    for (const auto &lam : pe) {
        TruncatedSeries f;
        f.nvars = n;
        f.cap = cap;
        for (const auto &[v, r] : reps) {
            auto it = r.A.t.find(lam);
            if (it == r.A.t.end()) continue;
            mpq_class c(it->second.constant_term().integer(), r.ell.constant_term().integer());
            if (c == 0) continue;
            mpz_class uf = 1;
            for (auto e : v) uf *= factorial(e);
            c /= uf;
            c.canonicalize();
            f.coeffs.emplace(v, c);
        }
        out.push_back(std::move(f));
    }
    return out;
}

} // namespace orecalc
