#pragma once

#include "orecalc/multipoly.hpp"
#include "orecalc/ore.hpp"
#include "orecalc/parse.hpp"

#include <random>
#include <string>
#include <vector>

namespace testing {

using namespace orecalc;

inline Scalar Z(long v) { return Scalar(Domain::ZZ, v); }
inline Scalar Q(long p, long q) { return Scalar(Domain::QQ, mpq_class(p, q)); }
inline Scalar T(std::vector<long> cs) {
    std::vector<mpq_class> v;
    for (long c : cs) v.emplace_back(c);
    return Scalar(UPolyQ(v));
}

inline MultiPoly poly(const std::string &s, const std::vector<std::string> &names, Domain d = Domain::ZZ) {
    return parse_poly(s, d, names);
}

inline OreOperator op(const std::string &s, const SigPtr &sig) { return parse_operator(s, sig); }

inline Scalar random_scalar(std::mt19937_64 &rng, Domain d, int range = 20) {
    std::uniform_int_distribution<long> u(-range, range);
    switch (d) {
    case Domain::ZZ:
        return Scalar(d, u(rng));
    case Domain::QQ: {
        long den = std::uniform_int_distribution<long>(1, 6)(rng);
        return Scalar(d, mpq_class(u(rng), den));
    }
    case Domain::QQ_t: {
        int deg = std::uniform_int_distribution<int>(-1, 2)(rng);
        std::vector<mpq_class> cs;
        for (int i = 0; i <= deg; ++i) cs.emplace_back(u(rng) % 5);
        return Scalar(UPolyQ(cs));
    }
    }
    return Scalar(d);
}

inline MultiPoly random_poly(std::mt19937_64 &rng, Domain d, std::size_t nvars, unsigned maxdeg, int nterms,
                             int range = 5) {
    MultiPoly p(d, nvars);
    std::uniform_int_distribution<unsigned> e(0, maxdeg);
    for (int k = 0; k < nterms; ++k) {
        Exponent ex(nvars);
        for (auto &x : ex) x = e(rng);
        unsigned tot = 0;
        for (auto x : ex) tot += x;
        if (tot > maxdeg) continue;
        p.add_term(ex, random_scalar(rng, d, range));
    }
    return p;
}

inline OreOperator random_operator(std::mt19937_64 &rng, const SigPtr &sig, unsigned maxx, unsigned maxd,
                                   int nterms, int range = 4) {
    std::size_t n = sig->n();
    OreOperator r(sig);
    std::uniform_int_distribution<unsigned> ex(0, maxx), ed(0, maxd);
    for (int k = 0; k < nterms; ++k) {
        Exponent t(2 * n);
        unsigned sx = 0, sd = 0;
        for (std::size_t i = 0; i < n; ++i) {
            t[i] = ex(rng);
            t[n + i] = ed(rng);
            sx += t[i];
            sd += t[n + i];
        }
        if (sx > maxx || sd > maxd) continue;
        r.add_term(t, random_scalar(rng, sig->domain(), range));
    }
    return r;
}

// True iff a = u*b for a unit u of the coefficient domain.
inline bool associated(const MultiPoly &a, const MultiPoly &b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return normalize_unit(a) == normalize_unit(b);
}

inline bool associated(const OreOperator &a, const OreOperator &b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    Scalar ua = a.terms().rbegin()->second.unit_part(), ub = b.terms().rbegin()->second.unit_part();
    return a * ua.inverse() == b * ub.inverse();
}

} // namespace testing
