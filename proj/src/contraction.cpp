#include "orecalc/contraction.hpp"

#include "orecalc/errors.hpp"

#include <algorithm>

namespace orecalc {

namespace {

void require_univariate(const OreOperator &L) {
    if (!L.signature() || L.n() != 1) throw PreconditionError("contraction needs a univariate Ore algebra");
    if (L.order() <= 0) throw PreconditionError("operator of positive order required");
}

void require_bound(const OreOperator &L, std::size_t k) {
    require_univariate(L);
    if (k < static_cast<std::size_t>(L.order()))
        throw PreconditionError("bound " + std::to_string(k) + " is below the order " + std::to_string(L.order()));
}

SigPtr poly_signature(Domain d) { return OreSignature::commutative(d, {"x"}); }

} // namespace

SubmoduleBasis submodule_basis(const OreOperator &L, std::size_t k) {
    require_univariate(L);
    auto r = static_cast<std::size_t>(L.order());
    // Nothing of order below r is a nonzero left multiple of L.
    if (k < r) return {L, k, {}};
    const SigPtr &sig = L.signature();
    RatOreOperator Lr = RatOreOperator::from(L);

    // Row i holds the coefficients of rrem(D^i, L).
    std::vector<std::vector<RatFunc>> rows;
    RatOreOperator cur = RatOreOperator::from(OreOperator::constant(sig, Scalar(sig->domain(), 1L)));
    for (std::size_t i = 0; i <= k; ++i) {
        if (i > 0) cur = rrem(cur.d_times(), Lr);
        std::vector<RatFunc> row;
        for (std::size_t j = 0; j < r; ++j) row.push_back(cur.coeff(j));
        rows.push_back(std::move(row));
    }

    PolyMatrix A(k + 1, std::vector<MultiPoly>(r));
    for (std::size_t j = 0; j < r; ++j) {
        MultiPoly den = MultiPoly::constant(Scalar(sig->domain(), 1L), 1);
        for (std::size_t i = 0; i <= k; ++i)
            if (!rows[i][j].is_zero()) den = poly_lcm(den, rows[i][j].den);
        MultiPoly g(sig->domain(), 1);
        for (std::size_t i = 0; i <= k; ++i) {
            A[i][j] = rows[i][j].is_zero() ? MultiPoly(sig->domain(), 1)
                                           : rows[i][j].num * exact_quotient(den, rows[i][j].den);
            g = poly_gcd(g, A[i][j]);
        }
        // Removing the common factor of a column leaves the kernel unchanged.
        if (!g.is_zero())
            for (auto &row : A) row[j] = exact_quotient(row[j], g);
    }

    SubmoduleBasis M{L, k, {}};
    for (const auto &v : kernel(A)) {
        OreOperator F = OreOperator::from_coeff_list(sig, v);
        if (!F.is_zero()) M.generators.push_back(std::move(F));
    }
    return M;
}

CoefficientIdealBasis coefficient_ideal(const SubmoduleBasis &M) {
    CoefficientIdealBasis I{M.k, {}};
    for (const auto &g : M.generators) {
        MultiPoly c = g.coeff(M.k);
        if (!c.is_zero()) I.generators.push_back(std::move(c));
    }
    return I;
}

MinimalElement minimal_degree_element(const std::vector<MultiPoly> &gens, std::vector<std::string> *notes) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (!gens[i].is_zero()) idx.push_back(i);
    if (idx.empty()) throw PreconditionError("minimal element of the zero ideal");
    Domain d = gens[idx[0]].domain();
    SigPtr sig = poly_signature(d);
    std::vector<OreOperator> P;
    for (auto i : idx) P.push_back(OreOperator::from_poly(sig, gens[i]));
    GBOptions opt;
    opt.certificates = true;
    GroebnerBasis gb = buchberger(P, TermOrder::ore_default(1), opt);

    std::size_t best = 0;
    int ties = 0;
    for (std::size_t i = 1; i < gb.elements.size(); ++i) {
        int di = gb.elements[i].x_degree(), db = gb.elements[best].x_degree();
        if (di < db) {
            best = i;
            ties = 0;
        } else if (di == db) {
            ++ties;
            Scalar ci = content(gb.elements[i].coeff(0)), cb = content(gb.elements[best].coeff(0));
            if (ci.compare(cb) < 0) best = i;
        }
    }
    if (ties > 0 && notes)
        notes->push_back(std::to_string(ties + 1) + " basis elements share the minimal degree; smallest content chosen");

    MinimalElement me{gb.elements[best].coeff(0), std::vector<MultiPoly>(gens.size(), MultiPoly(d, 1))};
    for (std::size_t j = 0; j < idx.size(); ++j) me.cofactors[idx[j]] = gb.certificates[best][j].coeff(0);
    return me;
}

namespace {

// The operator of M_k whose leading coefficient is the minimal element of I_k.
OreOperator minimal_operator(const SubmoduleBasis &M, std::vector<std::string> *notes) {
    std::vector<MultiPoly> lcs;
    for (const auto &g : M.generators) lcs.push_back(g.coeff(M.k));
    bool any = std::any_of(lcs.begin(), lcs.end(), [](const MultiPoly &p) { return !p.is_zero(); });
    if (!any) throw PreconditionError("M_" + std::to_string(M.k) + " has no operator of order " + std::to_string(M.k));
    MinimalElement me = minimal_degree_element(lcs, notes);
    const SigPtr &sig = M.L.signature();
    OreOperator T(sig);
    for (std::size_t i = 0; i < lcs.size(); ++i)
        if (!me.cofactors[i].is_zero()) T += OreOperator::from_poly(sig, me.cofactors[i]) * M.generators[i];
    // Small representative: the lower-order part modulo the ideal of M_k.
    TermOrder ord = TermOrder::ore_default(1);
    return reduce_tail(T, buchberger(M.generators, ord).elements, ord);
}

} // namespace

OreOperator desingularized_operator(const SubmoduleBasis &M) { return minimal_operator(M, nullptr); }

OreOperator desingularized_operator(const OreOperator &L, std::size_t k) {
    require_bound(L, k);
    return desingularized_operator(submodule_basis(L, k));
}

std::size_t order_bound_shift(const OreOperator &L) {
    require_univariate(L);
    if (!L.signature()->is_shift(0))
        throw PreconditionError("order bounds are only computed for shift operators; supply a bound");
    MultiPoly l0 = L.coeff(0);
    if (l0.is_zero()) throw PreconditionError("trailing coefficient is zero");
    MultiPoly shifted = L.lc().remap(2, {0}).substitute_shift_by_var(0, 1);
    MultiPoly res = resultant(shifted, l0.remap(2, {0}), 0);
    if (res.is_zero()) throw PreconditionError("leading and trailing coefficients share a factor at every shift");
    long disp = 0;
    for (long j : nonneg_integer_roots(res.remap(1, {0, 0}))) disp = std::max(disp, j);
    return static_cast<std::size_t>(L.order()) + static_cast<std::size_t>(disp);
}

ContractionResult contraction_basis(const OreOperator &L, std::size_t k) {
    require_bound(L, k);
    SubmoduleBasis M = submodule_basis(L, k);
    ContractionResult res;
    res.bound_used = k;
    res.desing = desingularized_operator(M);
    res.sat_constant = content(res.desing.lc());
    TermOrder ord = TermOrder::ore_default(1);
    if (res.sat_constant.is_unit())
        res.basis = buchberger(M.generators, ord).elements;
    else
        res.basis = saturate_const(M.generators, res.sat_constant, ord).elements;
    return res;
}

OreOperator completely_desingularized(const OreOperator &L, std::size_t k, std::vector<std::string> *notes) {
    ContractionResult C = contraction_basis(L, k);
    int ell = 0;
    for (const auto &b : C.basis) ell = std::max(ell, b.order());
    if (notes) notes->push_back("highest order in the contraction basis: " + std::to_string(ell));
    return minimal_operator(submodule_basis(L, static_cast<std::size_t>(ell)), notes);
}

namespace {

std::vector<MultiPoly> coefficient_vector(const OreOperator &F, std::size_t len) {
    std::vector<MultiPoly> v;
    for (std::size_t i = 0; i < len; ++i) v.push_back(F.coeff(i));
    return v;
}

} // namespace

bool in_span(const OreOperator &F, const std::vector<OreOperator> &gens) {
    int len = F.order();
    for (const auto &g : gens) len = std::max(len, g.order());
    if (len < 0) return true;
    auto n = static_cast<std::size_t>(len) + 1;
    PolyMatrix rows;
    for (const auto &g : gens) rows.push_back(coefficient_vector(g, n));
    return module_member(coefficient_vector(F, n), rows);
}

bool same_span(const std::vector<OreOperator> &A, const std::vector<OreOperator> &B) {
    for (const auto &a : A)
        if (!in_span(a, B)) return false;
    for (const auto &b : B)
        if (!in_span(b, A)) return false;
    return true;
}

bool is_R_primitive(const OreOperator &P) {
    if (P.is_zero()) throw PreconditionError("primitivity of the zero operator");
    Scalar g(P.domain());
    for (const auto &[t, c] : P.terms()) {
        g = gcd(g, c);
        if (g.is_unit()) return true;
    }
    return g.is_unit();
}

std::size_t multiplicity(const MultiPoly &f, const MultiPoly &p) {
    if (f.is_zero()) throw PreconditionError("multiplicity in the zero polynomial");
    if (p.is_zero() || (p.is_constant() && p.constant_term().is_unit()))
        throw PreconditionError("multiplicity of a unit or zero");
    std::size_t m = 0;
    MultiPoly g = f;
    while (auto q = divide_exact(g, p)) {
        g = std::move(*q);
        ++m;
    }
    return m;
}

std::size_t removable_multiplicity(const OreOperator &L, const MultiPoly &p, std::size_t k) {
    require_univariate(L);
    MultiPoly lc = L.lc();
    std::size_t total = multiplicity(lc, p);
    if (total == 0) throw PreconditionError("p does not divide the leading coefficient");
    auto r = static_cast<std::size_t>(L.order());
    CoefficientIdealBasis I = coefficient_ideal(submodule_basis(L, k + r));
    std::size_t least = total;
    for (const auto &g : I.generators) {
        MultiPoly s = L.signature()->apply_sigma(g, 0, -static_cast<long>(k));
        least = std::min(least, multiplicity(s, p));
    }
    return total - least;
}

std::vector<MultiPoly> factorial_product_order1(const MultiPoly &alpha, const std::vector<MultiPoly> &betas) {
    if (betas.empty()) throw PreconditionError("empty coefficient list");
    std::vector<MultiPoly> gammas;
    MultiPoly prod = MultiPoly::constant(Scalar(alpha.domain(), 1L), alpha.nvars());
    for (std::size_t i = 0; i < betas.size(); ++i) {
        Scalar shift(alpha.domain(), -static_cast<long>(i));
        prod = prod * alpha.substitute_affine(0, Scalar(alpha.domain(), 1L), shift);
        gammas.push_back(betas[i] * prod);
    }
    return gammas;
}

} // namespace orecalc
