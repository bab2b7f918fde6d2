#include "orecalc/groebner.hpp"

#include "orecalc/errors.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>

namespace orecalc {

namespace {

struct Cmp {
    const TermOrder *ord;
    bool operator()(const Exponent &a, const Exponent &b) const { return ord->compare(a, b) < 0; }
};

// Operator with terms sorted by the active term order; the head is the last
// entry.
struct Poly {
    std::map<Exponent, Scalar, Cmp> t;

    explicit Poly(const TermOrder *o) : t(Cmp{o}) {}
    bool zero() const { return t.empty(); }
    const Exponent &ht() const { return t.rbegin()->first; }
    const Scalar &hc() const { return t.rbegin()->second; }

    void add(const Exponent &e, const Scalar &c) {
        if (c.is_zero()) return;
        auto [it, ins] = t.try_emplace(e, c);
        if (!ins) {
            it->second += c;
            if (it->second.is_zero()) t.erase(it);
        }
    }
};

Poly to_poly(const OreOperator &P, const TermOrder *ord) {
    Poly r(ord);
    for (const auto &[e, c] : P.terms()) r.t.emplace(e, c);
    return r;
}

OreOperator to_op(const Poly &p, const SigPtr &sig) {
    OreOperator r(sig);
    for (const auto &[e, c] : p.t) r.add_term(e, c);
    return r;
}

// F += c * x^alpha D^beta * H  where s = alpha|beta.
void add_product(Poly &F, const OreSignature &sig, const Scalar &c, const Exponent &s, const Poly &H) {
    for (const auto &[e, b] : H.t)
        for_each_product_term(sig, s, c, e, b, [&](const Exponent &u, const Scalar &v) { F.add(u, v); });
}

Poly scaled_product(const OreSignature &sig, const Scalar &c, const Exponent &s, const Poly &H,
                    const TermOrder *ord) {
    Poly r(ord);
    add_product(r, sig, c, s, H);
    return r;
}

bool exp_le(const Exponent &a, const Exponent &b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Exponent exp_lcm(const Exponent &a, const Exponent &b) {
    Exponent r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

Exponent exp_sub(const Exponent &a, const Exponent &b) {
    Exponent r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

using Cert = std::vector<OreOperator>;

// Quotient of a by b with remainder in (-|b|/2, |b|/2] over ZZ and of lower
// t-degree over QQ[t]; zero when that remainder would be a itself.
Scalar euclid_quotient(const Scalar &a, const Scalar &b) {
    switch (a.domain()) {
    case Domain::ZZ: {
        mpz_class q, absb = abs(b.integer());
        mpz_class r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.integer().get_mpz_t(), absb.get_mpz_t());
        if (2 * r > absb) ++q;
        if (sgn(b.integer()) < 0) q = -q;
        return Scalar(Domain::ZZ, q);
    }
    case Domain::QQ:
        return Scalar(Domain::QQ);
    case Domain::QQ_t: {
        UPolyQ q, r;
        a.poly().divmod(b.poly(), q, r);
        return Scalar(q);
    }
    }
    return Scalar(a.domain());
}

class Engine {
public:
    Engine(SigPtr sig, const TermOrder &ord, const GBOptions &opt, std::size_t ninputs)
        : sig_(std::move(sig)), ord_(ord), opt_(opt), ninputs_(ninputs), n_(sig_->n()) {}

    std::vector<Poly> G;
    std::vector<Cert> C;

    const TermOrder *ord() const { return &ord_; }

    Cert unit_cert(std::size_t i) const {
        Cert c(ninputs_, OreOperator(sig_));
        c[i] = OreOperator::constant(sig_, Scalar(sig_->domain(), 1L));
        return c;
    }

    OreOperator mono(const Scalar &c, const Exponent &s) const { return OreOperator::monomial(sig_, c, s); }

    // cert += m * other
    void cert_axpy(Cert &cert, const Scalar &c, const Exponent &s, const Cert &other) const {
        if (!opt_.certificates) return;
        OreOperator m = mono(c, s);
        for (std::size_t k = 0; k < ninputs_; ++k)
            if (!other[k].is_zero()) cert[k] += m * other[k];
    }

    std::optional<std::size_t> reducer(const Exponent &e, const Scalar &c, std::size_t skip = SIZE_MAX) const {
        for (std::size_t j = 0; j < G.size(); ++j) {
            if (j == skip || !alive(j)) continue;
            if (exp_le(G[j].ht(), e) && divides(G[j].hc(), c)) return j;
        }
        return std::nullopt;
    }

    // Division with remainder of the coefficient c at term e by a head
    // coefficient that does not divide it. Keeps integer coefficients below
    // the head coefficients of the basis and t-degrees below theirs.
    bool euclid_step(Poly &F, const Exponent &e, const Scalar &c, Cert *cert, std::size_t skip) const {
        if (!opt_.euclidean) return false;
        for (std::size_t j = 0; j < G.size(); ++j) {
            if (j == skip || !alive(j) || !exp_le(G[j].ht(), e)) continue;
            Scalar q = euclid_quotient(c, G[j].hc());
            if (q.is_zero()) continue;
            Exponent s = exp_sub(e, G[j].ht());
            Exponent alpha(G[j].ht().begin(), G[j].ht().begin() + static_cast<long>(n_));
            Exponent beta(s.begin() + static_cast<long>(n_), s.end());
            Scalar k = q * sig_->head_unit(alpha, beta).inverse();
            add_product(F, *sig_, -k, s, G[j]);
            if (cert) cert_axpy(*cert, -k, s, C[j]);
            return true;
        }
        return false;
    }

    // Reduces F (with certificate cert) modulo the live elements.
    void reduce(Poly &F, Cert *cert, bool full, std::size_t skip = SIZE_MAX) const {
        std::optional<Exponent> bound;
        while (true) {
            if (F.zero()) return;
            auto it = F.t.end();
            if (bound) {
                it = F.t.lower_bound(*bound);
                if (it == F.t.begin()) return;
            }
            --it;
            Exponent e = it->first;
            Scalar c = it->second;
            auto j = reducer(e, c, skip);
            if (j) {
                Monomial m3 = quasi_quotient(*sig_, {G[*j].hc(), G[*j].ht()}, {c, e});
                add_product(F, *sig_, -m3.coeff, m3.term, G[*j]);
                if (cert) cert_axpy(*cert, -m3.coeff, m3.term, C[*j]);
            } else if (euclid_step(F, e, c, cert, skip)) {
                continue;
            } else if (!full) {
                return;
            }
            bound = e;
        }
    }

    int position(const Exponent &e) const {
        for (std::size_t k = 0; k < opt_.position_vars.size(); ++k)
            if (e[opt_.position_vars[k]]) return static_cast<int>(k);
        return -1;
    }

    bool alive(std::size_t j) const { return j >= dead_.size() || !dead_[j]; }

    struct PairData {
        Exponent t, s1, s2;
        Scalar u1, u2; // r_i^{-1}
    };

    PairData pair_data(std::size_t i, std::size_t j) const {
        PairData d;
        d.t = exp_lcm(G[i].ht(), G[j].ht());
        d.s1 = exp_sub(d.t, G[i].ht());
        d.s2 = exp_sub(d.t, G[j].ht());
        auto unit = [&](const Exponent &h, const Exponent &s) {
            Exponent alpha(h.begin(), h.begin() + static_cast<long>(n_));
            Exponent beta(s.begin() + static_cast<long>(n_), s.end());
            return sig_->head_unit(alpha, beta).inverse();
        };
        d.u1 = unit(G[i].ht(), d.s1);
        d.u2 = unit(G[j].ht(), d.s2);
        return d;
    }

    // c1 u1 s1 G_i + c2 u2 s2 G_j with its certificate.
    std::pair<Poly, Cert> combine(std::size_t i, std::size_t j, const PairData &d, const Scalar &c1,
                                  const Scalar &c2) const {
        Poly p = scaled_product(*sig_, c1 * d.u1, d.s1, G[i], &ord_);
        add_product(p, *sig_, c2 * d.u2, d.s2, G[j]);
        Cert cert;
        if (opt_.certificates) {
            cert.assign(ninputs_, OreOperator(sig_));
            cert_axpy(cert, c1 * d.u1, d.s1, C[i]);
            cert_axpy(cert, c2 * d.u2, d.s2, C[j]);
        }
        return {std::move(p), std::move(cert)};
    }

    bool same_position(std::size_t i, std::size_t j) const {
        return opt_.position_vars.empty() || position(G[i].ht()) == position(G[j].ht());
    }

    void make_primitive(Poly &p) const {
        Scalar g(p.hc().domain());
        for (const auto &[e, c] : p.t) {
            g = gcd(g, c);
            if (g.is_unit()) return;
        }
        for (auto &[e, c] : p.t) c = exact_div(c, g);
    }

    std::size_t add(Poly p, Cert c) {
        G.push_back(std::move(p));
        C.push_back(std::move(c));
        dead_.push_back(false);
        return G.size() - 1;
    }

    void run() {
        struct PairKey {
            Exponent t;
            std::size_t seq, i, j;
        };
        auto cmp = [this](const PairKey &a, const PairKey &b) {
            int c = ord_.compare(a.t, b.t);
            if (c) return c < 0;
            return a.seq < b.seq;
        };
        std::set<PairKey, decltype(cmp)> pairs(cmp);
        std::size_t seq = 0;
        auto add_pairs = [&](std::size_t m) {
            for (std::size_t k = 0; k < m; ++k)
                if (alive(k) && same_position(k, m)) pairs.insert({exp_lcm(G[k].ht(), G[m].ht()), seq++, k, m});
        };
        // Adding h retires every live element whose head monomial h
        // quasi-divides; the retired element is reduced and re-enters the
        // basis if it does not vanish. Pairs of retired elements are dropped.
        std::function<void(Poly, Cert)> insert = [&](Poly p, Cert c) {
            if (opt_.primitive && !opt_.certificates) make_primitive(p);
            std::size_t m = add(std::move(p), std::move(c));
            std::vector<std::size_t> retired;
            for (std::size_t k = 0; k < m; ++k)
                if (alive(k) && exp_le(G[m].ht(), G[k].ht()) && divides(G[m].hc(), G[k].hc())) {
                    dead_[k] = true;
                    retired.push_back(k);
                }
            add_pairs(m);
            for (auto k : retired) {
                Poly q = G[k];
                Cert qc = opt_.certificates ? C[k] : Cert{};
                reduce(q, opt_.certificates ? &qc : nullptr, true);
                if (!q.zero()) insert(std::move(q), std::move(qc));
            }
        };
        {
            std::vector<Poly> start = std::move(G);
            std::vector<Cert> cstart = std::move(C);
            G.clear();
            C.clear();
            dead_.clear();
            for (std::size_t m = 0; m < start.size(); ++m) {
                Poly p = std::move(start[m]);
                Cert c = opt_.certificates ? std::move(cstart[m]) : Cert{};
                reduce(p, opt_.certificates ? &c : nullptr, true);
                if (!p.zero()) insert(std::move(p), std::move(c));
            }
        }
        while (!pairs.empty()) {
            PairKey pk = *pairs.begin();
            pairs.erase(pairs.begin());
            std::size_t i = pk.i, j = pk.j;
            if (!alive(i) || !alive(j)) continue;
            PairData d = pair_data(i, j);
            Scalar a1 = G[i].hc(), a2 = G[j].hc();
            GcdExt ge = gcd_ext(a1, a2);
            Scalar l = lcm(a1, a2);
            auto [s, scert] = combine(i, j, d, exact_div(l, a1), -exact_div(l, a2));
            bool covered = static_cast<bool>(reducer(d.t, ge.g));
            if (!covered) {
                auto [g, cert] = combine(i, j, d, ge.c1, ge.c2);
                reduce(g, opt_.certificates ? &cert : nullptr, true);
                if (!g.zero()) insert(std::move(g), std::move(cert));
            }
            reduce(s, opt_.certificates ? &scert : nullptr, true);
            if (!s.zero()) insert(std::move(s), std::move(scert));
        }
    }

    // Turns G into the reduced basis, sorted ascending by head.
    void finalize() {
        dead_.resize(G.size(), false);
        auto qdiv = [&](std::size_t i, std::size_t j) {
            return exp_le(G[i].ht(), G[j].ht()) && divides(G[i].hc(), G[j].hc());
        };
        for (std::size_t j = 0; j < G.size(); ++j)
            for (std::size_t i = 0; i < G.size() && !dead_[j]; ++i) {
                if (i == j || dead_[i] || !qdiv(i, j)) continue;
                if (qdiv(j, i) && j < i) continue;
                dead_[j] = true;
                break;
            }
        std::vector<std::size_t> keep;
        for (std::size_t j = 0; j < G.size(); ++j)
            if (!dead_[j]) keep.push_back(j);
        // Tails are reduced one element at a time; heads never change, so the
        // final result does not depend on the processing order.
        for (std::size_t j : keep) {
            Poly p = G[j];
            Cert c = opt_.certificates ? C[j] : Cert{};
            Exponent h = p.ht();
            Scalar hc = p.hc();
            p.t.erase(std::prev(p.t.end()));
            reduce(p, opt_.certificates ? &c : nullptr, true, j);
            p.add(h, hc);
            G[j] = std::move(p);
            if (opt_.certificates) C[j] = std::move(c);
        }
        std::vector<Poly> g2;
        std::vector<Cert> c2;
        for (std::size_t j : keep) {
            Scalar u = G[j].hc().unit_part();
            if (!u.is_one()) {
                Scalar ui = u.inverse();
                for (auto &[e, c] : G[j].t) c *= ui;
                if (opt_.certificates)
                    for (auto &x : C[j]) x = x * ui;
            }
            g2.push_back(std::move(G[j]));
            if (opt_.certificates) c2.push_back(std::move(C[j]));
        }
        std::vector<std::size_t> idx(g2.size());
        for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return ord_.less(g2[a].ht(), g2[b].ht()); });
        G.clear();
        C.clear();
        for (auto k : idx) {
            G.push_back(std::move(g2[k]));
            if (opt_.certificates) C.push_back(std::move(c2[k]));
        }
        dead_.clear();
    }

    GroebnerBasis result(const std::vector<OreOperator> &inputs) const {
        GroebnerBasis gb;
        gb.order = ord_;
        for (const auto &p : G) gb.elements.push_back(to_op(p, sig_));
        if (opt_.certificates) {
            gb.inputs = inputs;
            gb.certificates = C;
        }
        return gb;
    }

private:
    SigPtr sig_;
    TermOrder ord_;
    GBOptions opt_;
    std::size_t ninputs_;
    std::size_t n_;
    std::vector<bool> dead_;
};

SigPtr common_signature(const std::vector<OreOperator> &P) {
    SigPtr sig;
    for (const auto &p : P) {
        if (!p.signature()) continue;
        if (!sig)
            sig = p.signature();
        else
            require_same_signature(sig, p.signature());
    }
    return sig;
}

} // namespace

OreOperator reduce(const OreOperator &F, const std::vector<OreOperator> &P, const TermOrder &ord,
                   std::vector<OreOperator> *cofactors) {
    const SigPtr &sig = F.signature();
    for (const auto &p : P) {
        require_same_signature(sig, p.signature());
        if (p.is_zero()) throw PreconditionError("reduction by the zero operator");
    }
    GBOptions opt;
    opt.certificates = cofactors != nullptr;
    opt.euclidean = false;
    Engine eng(sig, ord, opt, P.size());
    for (std::size_t j = 0; j < P.size(); ++j) eng.add(to_poly(P[j], &ord), opt.certificates ? eng.unit_cert(j) : Cert{});
    Poly f = to_poly(F, &ord);
    Cert cert;
    if (cofactors) cert.assign(P.size(), OreOperator(sig));
    eng.reduce(f, cofactors ? &cert : nullptr, true);
    if (cofactors)
        for (auto &c : cert) c = -c;
    if (cofactors) *cofactors = std::move(cert);
    return to_op(f, sig);
}

OreOperator reduce_tail(const OreOperator &F, const std::vector<OreOperator> &G, const TermOrder &ord) {
    if (F.is_zero()) return F;
    const SigPtr &sig = F.signature();
    Engine eng(sig, ord, GBOptions{}, G.size());
    for (const auto &g : G) {
        require_same_signature(sig, g.signature());
        if (!g.is_zero()) eng.add(to_poly(g, &ord), Cert{});
    }
    Poly f = to_poly(F, &ord);
    auto top = *f.t.rbegin();
    f.t.erase(std::prev(f.t.end()));
    eng.reduce(f, nullptr, true);
    f.t.emplace(top.first, top.second);
    return to_op(f, sig);
}

bool top_reducible(const OreOperator &F, const std::vector<OreOperator> &P, const TermOrder &ord) {
    if (F.is_zero()) return false;
    Head h = head(F, ord);
    for (const auto &p : P) {
        Head hp = head(p, ord);
        if (quasi_divides(hp.monomial(), h.monomial())) return true;
    }
    return false;
}

namespace {

OreOperator pair_poly(const OreOperator &G1, const OreOperator &G2, const TermOrder &ord, bool s) {
    require_same_signature(G1.signature(), G2.signature());
    if (G1.is_zero() || G2.is_zero()) throw PreconditionError("S/G-polynomial of the zero operator");
    Engine eng(G1.signature(), ord, {}, 0);
    eng.add(to_poly(G1, &ord), {});
    eng.add(to_poly(G2, &ord), {});
    auto d = eng.pair_data(0, 1);
    const Scalar &a1 = eng.G[0].hc(), &a2 = eng.G[1].hc();
    if (s) {
        Scalar l = lcm(a1, a2);
        return to_op(eng.combine(0, 1, d, exact_div(l, a1), -exact_div(l, a2)).first, G1.signature());
    }
    GcdExt ge = gcd_ext(a1, a2);
    return to_op(eng.combine(0, 1, d, ge.c1, ge.c2).first, G1.signature());
}

} // namespace

OreOperator spol(const OreOperator &G1, const OreOperator &G2, const TermOrder &ord) {
    return pair_poly(G1, G2, ord, true);
}

OreOperator gpol(const OreOperator &G1, const OreOperator &G2, const TermOrder &ord) {
    return pair_poly(G1, G2, ord, false);
}

GroebnerBasis buchberger(const std::vector<OreOperator> &P, const TermOrder &ord, const GBOptions &opt) {
    SigPtr sig = common_signature(P);
    GroebnerBasis empty;
    empty.order = ord;
    if (!sig) return empty;
    Engine eng(sig, ord, opt, P.size());
    for (std::size_t j = 0; j < P.size(); ++j)
        if (!P[j].is_zero()) eng.add(to_poly(P[j], &ord), opt.certificates ? eng.unit_cert(j) : Cert{});
    eng.run();
    if (opt.reduced) eng.finalize();
    return eng.result(P);
}

bool is_groebner(const std::vector<OreOperator> &G, const TermOrder &ord, const GBOptions &opt) {
    SigPtr sig = common_signature(G);
    if (!sig) return true;
    GBOptions o = opt;
    o.certificates = false;
    Engine eng(sig, ord, o, 0);
    for (const auto &g : G) {
        if (g.is_zero()) throw PreconditionError("zero element in a basis");
        eng.add(to_poly(g, &ord), {});
    }
    for (std::size_t j = 1; j < eng.G.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) {
            if (!eng.same_position(i, j)) continue;
            auto d = eng.pair_data(i, j);
            const Scalar &a1 = eng.G[i].hc(), &a2 = eng.G[j].hc();
            GcdExt ge = gcd_ext(a1, a2);
            if (!eng.reducer(d.t, ge.g)) return false;
            Scalar l = lcm(a1, a2);
            Poly s = eng.combine(i, j, d, exact_div(l, a1), -exact_div(l, a2)).first;
            eng.reduce(s, nullptr, false);
            if (!s.zero()) return false;
        }
    return true;
}

bool ideal_member(const GroebnerBasis &G, const OreOperator &F) {
    if (F.is_zero()) return true;
    if (G.elements.empty()) return false;
    return reduce(F, G.elements, G.order).is_zero();
}

bool same_ideal(const std::vector<OreOperator> &A, const std::vector<OreOperator> &B, const TermOrder &ord) {
    GroebnerBasis ga = buchberger(A, ord), gb = buchberger(B, ord);
    for (const auto &b : B)
        if (!ideal_member(ga, b)) return false;
    for (const auto &a : A)
        if (!ideal_member(gb, a)) return false;
    return true;
}

GroebnerBasis eliminate(const std::vector<OreOperator> &P, const std::vector<std::size_t> &eliminated,
                        const TermOrder &ord, const GBOptions &opt) {
    if (!ord.eliminates(eliminated)) throw PreconditionError("term order does not eliminate the requested variables");
    GroebnerBasis gb = buchberger(P, ord, opt);
    GroebnerBasis out;
    out.order = ord;
    out.inputs = gb.inputs;
    for (std::size_t i = 0; i < gb.elements.size(); ++i) {
        bool free = true;
        for (auto v : eliminated) free = free && !gb.elements[i].involves(v);
        if (!free) continue;
        out.elements.push_back(gb.elements[i]);
        if (gb.has_certificates()) out.certificates.push_back(gb.certificates[i]);
    }
    return out;
}

GroebnerBasis saturate_const(const std::vector<OreOperator> &P, const Scalar &c, const TermOrder &ord) {
    if (c.is_zero()) throw PreconditionError("saturation by zero");
    SigPtr sig = common_signature(P);
    GroebnerBasis out;
    out.order = ord;
    if (!sig) return out;
    if (c.domain() != sig->domain()) throw DomainMismatch("saturation constant from another domain");
    std::size_t n = sig->n();
    std::vector<OrePair> pairs = sig->pairs();
    pairs.push_back({"_y", Scalar(sig->domain(), 1L), Scalar(sig->domain()), DeltaKind::Zero});
    SigPtr ext = OreSignature::make(sig->domain(), pairs);
    auto remap = [&](std::size_t v) { return v < n ? v : v + 1; };
    std::vector<OrderBlock> blocks{{{n, 2 * n + 1}, false}};
    for (const auto &b : ord.blocks()) {
        OrderBlock nb{{}, b.lex};
        for (auto v : b.vars) nb.vars.push_back(remap(v));
        blocks.push_back(nb);
    }
    TermOrder eord(blocks);
    std::vector<std::size_t> map(n);
    for (std::size_t i = 0; i < n; ++i) map[i] = i;
    std::vector<OreOperator> gens;
    for (const auto &p : P) gens.push_back(p.embed(ext, map));
    OreOperator y = OreOperator::x(ext, n);
    gens.push_back(OreOperator::constant(ext, Scalar(sig->domain(), 1L)) - y * c);
    GroebnerBasis gb = eliminate(gens, {n, 2 * n + 1}, eord);
    for (const auto &g : gb.elements) {
        OreOperator r(sig);
        for (const auto &[e, v] : g.terms()) {
            Exponent u(2 * n);
            for (std::size_t i = 0; i < n; ++i) {
                u[i] = e[i];
                u[n + i] = e[n + 1 + i];
            }
            r.add_term(u, v);
        }
        out.elements.push_back(r);
    }
    return out;
}

PolyMatrix kernel(const PolyMatrix &A) {
    if (A.empty()) throw PreconditionError("kernel of a matrix without rows");
    std::size_t m = A.size(), k = A[0].size();
    if (k == 0) throw PreconditionError("kernel of a matrix without columns");
    for (const auto &row : A)
        if (row.size() != k) throw PreconditionError("ragged matrix");
    Domain d = A[0][0].domain();
    std::size_t nv = A[0][0].nvars();
    std::vector<std::string> names = default_names(nv);
    for (std::size_t j = 0; j < k; ++j) names.push_back("_e" + std::to_string(j));
    for (std::size_t i = 0; i < m; ++i) names.push_back("_f" + std::to_string(i));
    std::size_t N = names.size();
    SigPtr sig = OreSignature::commutative(d, names);
    OrderBlock pos{{}, true}, xs{{}, false};
    for (std::size_t v = nv; v < N; ++v) pos.vars.push_back(v);
    for (std::size_t v = 0; v < nv; ++v) xs.vars.push_back(v);
    TermOrder ord({pos, xs});
    GBOptions opt;
    opt.primitive = true;
    for (std::size_t v = nv; v < N; ++v) opt.position_vars.push_back(v);

    std::vector<std::size_t> xmap(nv);
    for (std::size_t v = 0; v < nv; ++v) xmap[v] = v;
    auto embed = [&](const MultiPoly &p, std::size_t position) {
        if (p.domain() != d || p.nvars() != nv) throw DomainMismatch("matrix entries from different rings");
        OreOperator r(sig);
        for (const auto &[e, c] : p.terms()) {
            Exponent u(2 * N, 0);
            std::copy(e.begin(), e.end(), u.begin());
            u[position] = 1;
            r.add_term(u, c);
        }
        return r;
    };
    std::vector<OreOperator> gens;
    for (std::size_t i = 0; i < m; ++i) {
        OreOperator g = embed(MultiPoly::constant(Scalar(d, 1L), nv), nv + k + i);
        for (std::size_t j = 0; j < k; ++j) g += embed(A[i][j], nv + j);
        gens.push_back(g);
    }
    GroebnerBasis gb = buchberger(gens, ord, opt);
    PolyMatrix out;
    for (const auto &g : gb.elements) {
        Head h = head(g, ord);
        bool in_f = false;
        for (std::size_t i = 0; i < m; ++i) in_f = in_f || h.term[nv + k + i];
        if (!in_f) continue;
        std::vector<MultiPoly> v(m, MultiPoly(d, nv));
        for (const auto &[e, c] : g.terms()) {
            for (std::size_t i = 0; i < m; ++i)
                if (e[nv + k + i]) v[i].add_term(Exponent(e.begin(), e.begin() + static_cast<long>(nv)), c);
        }
        out.push_back(std::move(v));
    }
    return out;
}

bool module_member(const std::vector<MultiPoly> &v, const PolyMatrix &rows) {
    if (rows.empty()) {
        for (const auto &p : v)
            if (!p.is_zero()) return false;
        return true;
    }
    std::size_t k = v.size();
    for (const auto &row : rows)
        if (row.size() != k) throw PreconditionError("vectors of different lengths");
    Domain d = rows[0][0].domain();
    std::size_t nv = rows[0][0].nvars();
    std::vector<std::string> names = default_names(nv);
    for (std::size_t j = 0; j < k; ++j) names.push_back("_e" + std::to_string(j));
    std::size_t N = names.size();
    SigPtr sig = OreSignature::commutative(d, names);
    OrderBlock pos{{}, true}, xs{{}, false};
    for (std::size_t j = nv; j < N; ++j) pos.vars.push_back(j);
    for (std::size_t j = 0; j < nv; ++j) xs.vars.push_back(j);
    TermOrder ord({pos, xs});
    GBOptions opt;
    for (std::size_t j = nv; j < N; ++j) opt.position_vars.push_back(j);
    auto embed = [&](const std::vector<MultiPoly> &w) {
        OreOperator r(sig);
        for (std::size_t j = 0; j < k; ++j) {
            if (w[j].domain() != d || w[j].nvars() != nv) throw DomainMismatch("vector entries from different rings");
            for (const auto &[e, c] : w[j].terms()) {
                Exponent u(2 * N, 0);
                std::copy(e.begin(), e.end(), u.begin());
                u[nv + j] = 1;
                r.add_term(u, c);
            }
        }
        return r;
    };
    std::vector<OreOperator> gens;
    for (const auto &row : rows) {
        OreOperator g = embed(row);
        if (!g.is_zero()) gens.push_back(std::move(g));
    }
    OreOperator target = embed(v);
    if (target.is_zero()) return true;
    if (gens.empty()) return false;
    GroebnerBasis gb = buchberger(gens, ord, opt);
    return reduce(target, gb.elements, ord).is_zero();
}

} // namespace orecalc
