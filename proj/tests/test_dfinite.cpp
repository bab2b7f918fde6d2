#include "doctest.h"
#include "helpers.hpp"

#include "orecalc/dfinite.hpp"
#include "orecalc/errors.hpp"

#include <set>

using namespace testing;

namespace {

SigPtr w2() { return weyl_signature({"x1", "x2"}); }
std::vector<std::string> X2{"x1", "x2"};

WeylGB sys(std::vector<std::string> ops) {
    std::vector<OreOperator> P;
    for (const auto &s : ops) P.push_back(op(s, w2()));
    return weyl_gb(P);
}

const std::vector<std::string> OP{"Dx2 - Dx1", "Dx1^2 + 1"};
const std::vector<std::string> NOP{"x1*Dx1^2 - (x1*x2 - 1)*Dx1 - x2", "x2*Dx2 - x1*Dx1"};
const std::vector<std::string> INDPOL{"x1*x2*Dx2 - x1*x2*Dx1 + (-x1 + x2)", "x1^2*Dx1^2 - 2*x1*Dx1 + (2 + x1^2)"};
const std::vector<std::string> CAND2{"x1*x2*Dx2 + (-x1^2 + 2*x1*x2)*Dx1 - 2*x2",
                                     "(x1^3 - x1^2*x2)*Dx1^2 + 2*x1*x2*Dx1 - 2*x2"};
const std::vector<std::string> APP1{"x2*Dx2 + Dx1 - x2 - 1", "Dx1^2 - Dx1"};
const std::vector<std::string> APP2{"x2^2*Dx2 - x1^2*Dx1 + x1 - x2", "Dx1^2"};
const std::vector<std::string> DET2{"(x1 - x2)*Dx1^2 - x1*x2*Dx2 + x1*x2*Dx1 + (x1 - x2)",
                                    "(x1 - x2)*Dx1*Dx2 + (-1 - x1*x2)*Dx2 + (1 + x1*x2)*Dx1 + (x1 - x2)",
                                    "(x1 - x2)*Dx2^2 - x1*x2*Dx2 + x1*x2*Dx1 + (x1 - x2)"};

Exponent E(unsigned a, unsigned b) { return {a, b}; }

std::set<Exponent> as_set(const std::vector<Exponent> &v) { return {v.begin(), v.end()}; }

bool same_up_to_sign(const MultiPoly &a, const MultiPoly &b) { return a == b || a == -b; }

// Every head coefficient equals one of the expected polynomials up to sign,
// and every expected polynomial occurs.
bool head_coefficients_are(const WeylGB &G, const std::vector<std::string> &expected) {
    std::vector<MultiPoly> want;
    for (const auto &s : expected) want.push_back(poly(s, X2));
    std::vector<bool> seen(want.size(), false);
    for (const auto &h : G.head_coefficients()) {
        bool ok = false;
        for (std::size_t i = 0; i < want.size(); ++i)
            if (same_up_to_sign(h, want[i])) ok = seen[i] = true;
        if (!ok) return false;
    }
    for (bool s : seen)
        if (!s) return false;
    return true;
}

// Coefficient of x^u in the Taylor series of cos or sin at x1 + x2.
mpq_class trig_coeff(bool is_sin, const Exponent &u) {
    unsigned k = u[0] + u[1];
    if ((k % 2 == 1) != is_sin) return 0;
    long sign = ((k / 2) % 2 == 0) ? 1 : -1;
    mpz_class f0 = 1, f1 = 1;
    for (unsigned i = 2; i <= u[0]; ++i) f0 *= i;
    for (unsigned i = 2; i <= u[1]; ++i) f1 *= i;
    return mpq_class(sign, 1) / mpq_class(f0 * f1);
}

bool residual_vanishes(const WeylGB &G, const TruncatedSeries &f) {
    for (const auto &g : G.elements)
        if (!apply(g, f).is_zero()) return false;
    return true;
}

} // namespace

TEST_CASE("weyl_gb examples") {
    auto G = sys(OP);
    REQUIRE(G.elements.size() == 2);
    CHECK(G.elements[0] == op("Dx2 - Dx1", w2()));
    CHECK(G.elements[1] == op("Dx1^2 + 1", w2()));

    auto T = sys({"Dx1", "x1*Dx1"});
    REQUIRE(T.elements.size() == 1);
    CHECK(T.elements[0] == op("Dx1", w2()));

    auto A = sys(APP1);
    REQUIRE(A.elements.size() == 2);
    CHECK(A.elements[0] == op("x2*Dx2 + Dx1 - x2 - 1", w2()));
    CHECK(A.elements[1] == op("Dx1^2 - Dx1", w2()));
}

TEST_CASE("weyl_gb accepts rational coefficients and keeps the ideal") {
    auto q = OreSignature::differential(Domain::QQ, {"x1", "x2"});
    auto G = weyl_gb({op("1/2*Dx2 - 1/2*Dx1", q), op("Dx1^2 + 1", q)});
    CHECK(same_weyl_ideal(G, sys(OP)));
    // A redundant system: D2 L1 and x1 L2 lie in the ideal.
    auto L1 = op("Dx2 - Dx1", w2()), L2 = op("Dx1^2 + 1", w2());
    auto H = weyl_gb({op("Dx2", w2()) * L1, op("x1", w2()) * L2, L1});
    CHECK(same_weyl_ideal(H, G));
}

TEST_CASE("rank examples") {
    auto G = sys(OP);
    CHECK(rank(G) == 2);
    CHECK(G.parametric_exponents() == std::vector<Exponent>{E(0, 0), E(1, 0)});
    CHECK(rank(sys(DET2)) == 3);
    CHECK(rank(sys({"Dx1", "Dx2"})) == 1);
    auto w3 = weyl_signature({"x1", "x2", "x3"});
    CHECK(rank(weyl_gb({op("Dx1", w3), op("Dx2", w3), op("Dx3", w3)})) == 1);
    CHECK_THROWS_AS(rank(sys({"Dx1"})), PreconditionError);
}

TEST_CASE("singular_locus examples") {
    auto N = sys(NOP);
    CHECK(N.head_terms() == std::vector<Exponent>{E(0, 1), E(2, 0)});
    CHECK(same_up_to_sign(singular_locus(N), poly("x1*x2", X2)));
    CHECK_FALSE(origin_is_ordinary(N));
    CHECK_FALSE(is_ordinary(N, {Z(0), Z(3)}));
    CHECK(is_ordinary(N, {Z(1), Z(3)}));

    auto O = sys(OP);
    CHECK(singular_locus(O) == poly("1", X2));
    CHECK(origin_is_ordinary(O));

    CHECK(same_up_to_sign(singular_locus(sys(APP1)), poly("x2", X2)));
}

TEST_CASE("euler_rewrite examples") {
    auto w1 = weyl_signature({"x"});
    std::vector<std::string> Y{"y"};
    auto E1 = euler_rewrite(op("x^2*Dx^2", w1));
    REQUIRE(E1.parts.size() == 1);
    CHECK(E1.parts.begin()->first == Exponent{2});
    CHECK(E1.parts.begin()->second == poly("y*(y-1)", Y));

    auto E2 = euler_rewrite(op("x*Dx", w1));
    REQUIRE(E2.parts.size() == 1);
    CHECK(E2.parts.begin()->first == Exponent{1});
    CHECK(E2.parts.begin()->second == poly("y", Y));

    auto G2 = op(INDPOL[1], w2());
    auto E3 = euler_rewrite(G2);
    CHECK(E3.m == 2);
    CHECK(E3.parts.at(E(2, 2)) == poly("(x1-1)*(x1-2)", X2));
    CHECK(euler_expand(E3, w2()) == op("x1^2*x2^2", w2()) * G2);
}

TEST_CASE("indicial_polynomial examples") {
    std::vector<std::string> Y{"y1", "y2"};
    CHECK(indicial_polynomial(op(INDPOL[0], w2())) == poly("y2 - 1", Y));
    CHECK(indicial_polynomial(op(INDPOL[1], w2())) == poly("(y1-1)*(y1-2)", Y));
    CHECK(indicial_polynomial(op("Dx1", w2())) == poly("y1", Y));
    CHECK(indicial_polynomial(op("Dx2", w2())) == poly("y2", Y));
    CHECK(indicial_polynomial(OreOperator(w2())).is_zero());
    CHECK(indicial_polynomial(op(CAND2[0], w2())) == poly("y2 - y1", Y));
    CHECK(indicial_polynomial(op(CAND2[1], w2())) == poly("(y1-1)*y1", Y));
    CHECK(indicial_polynomial(op(DET2[0], w2())) == poly("(y1-1)*y1", Y));
    CHECK(indicial_polynomial(op(DET2[1], w2())) == poly("y2*(y1-1)", Y));
    CHECK(indicial_polynomial(op(DET2[2], w2())) == poly("(y2-1)*y2", Y));
}

TEST_CASE("exponent_candidates examples") {
    CHECK(as_set(exponent_candidates(sys(INDPOL)).candidates) == std::set<Exponent>{E(2, 1), E(1, 1)});
    CHECK(as_set(exponent_candidates(sys(CAND2)).candidates) == std::set<Exponent>{E(0, 0), E(1, 1)});
    CHECK(as_set(exponent_candidates(sys(DET2)).candidates) == std::set<Exponent>{E(0, 0), E(1, 0), E(1, 1)});
    for (const auto &c : exponent_candidates(sys(DET2)).candidates)
        for (const auto &g : exponent_candidates(sys(DET2)).generators) {
            MultiPoly v = g.evaluate(0, Z(c[0])).evaluate(1, Z(c[1]));
            CHECK(v.is_zero());
        }
}

TEST_CASE("exponent_candidates rejects a positive-dimensional subideal") {
    // The only indicial polynomial is y1 - y2.
    CHECK_THROWS_AS(exponent_candidates(sys({"x1*Dx1 - x2*Dx2"})), PreconditionError);
}

TEST_CASE("intersect_left_ideals examples") {
    auto G = sys(APP1);
    CHECK(same_weyl_ideal(intersect_left_ideals(G, G), G));

    auto J = sys({"x1*Dx1 - 1", "Dx2"});
    auto M = intersect_left_ideals(G, J);
    CHECK(rank(M) == 3);
    for (const auto &m : M.elements) {
        CHECK(weyl_member(G, m));
        CHECK(weyl_member(J, m));
    }
}

TEST_CASE("rank formula on the apparent-singularity systems") {
    auto G = sys(APP1);
    auto J = sys({"x1*Dx1 - 1", "Dx2"});
    std::vector<OreOperator> sum = G.elements;
    sum.insert(sum.end(), J.elements.begin(), J.elements.end());
    auto S = weyl_gb(sum);
    auto I = intersect_left_ideals(G, J);
    CHECK(rank(S) == 0);
    CHECK(rank(I) + rank(S) == rank(G) + rank(J));
}

TEST_CASE("remove_apparent examples") {
    auto G1 = sys(APP1);
    auto M1 = remove_apparent(G1, {E(0, 0), E(0, 1)});
    CHECK(rank(M1) == 3);
    CHECK(head_coefficients_are(M1, {"1 - x1 - x1*x2"}));
    CHECK(origin_is_ordinary(M1));
    for (const auto &m : M1.elements) CHECK(weyl_member(G1, m));

    auto G2 = sys(APP2);
    auto M2 = remove_apparent(G2, {E(1, 0), E(1, 1)});
    CHECK(rank(M2) == 6);
    REQUIRE(M2.elements.size() == 4);
    CHECK(M2.elements[0] == op("Dx1^3", w2()));
    CHECK(M2.elements[1] == op("Dx1^2*Dx2", w2()));
    CHECK(M2.elements[2] == op("Dx1*Dx2^2", w2()));
    CHECK(M2.elements[3] == op("Dx2^3", w2()));
    for (const auto &m : M2.elements) CHECK(weyl_member(G2, m));

    // The Euler ideal of the missing exponent (0, 1) adds one solution.
    auto O = sys(OP);
    auto MO = remove_apparent(O, O.parametric_exponents());
    CHECK(rank(MO) == 3);
    for (const auto &m : MO.elements) CHECK(weyl_member(O, m));

    CHECK_THROWS_AS(remove_apparent(G1, {E(0, 0)}), PreconditionError);
}

TEST_CASE("detect_apparent examples") {
    auto v1 = detect_apparent(sys(CAND2));
    CHECK_FALSE(v1.apparent);
    CHECK(v1.tried);
    CHECK(head_coefficients_are(v1.M, {"x1^4 - 3*x1^3*x2 + 3*x1^2*x2^2 - x1*x2^3", "-x1^3 + 3*x1^2*x2 - 3*x1*x2^2 + x2^3"}));

    auto v2 = detect_apparent(sys(DET2));
    CHECK(v2.apparent);
    CHECK(as_set(v2.B) == std::set<Exponent>{E(0, 0), E(1, 0), E(1, 1)});
    CHECK(head_coefficients_are(v2.M, {"-2 - x1^2 - 2*x1*x2 - x2^2"}));

    auto v3 = detect_apparent(sys(APP1), {E(0, 0), E(0, 1)});
    CHECK(v3.apparent);
    CHECK(head_coefficients_are(v3.M, {"1 - x1 - x1*x2"}));
    CHECK_THROWS_AS(detect_apparent(sys(APP1)), PreconditionError);
}

TEST_CASE("detect_apparent serial and parallel agree") {
    for (const auto &s : {CAND2, DET2}) {
        auto a = detect_apparent(sys(s), true), b = detect_apparent(sys(s), false);
        CHECK(a.apparent == b.apparent);
        CHECK(a.B == b.B);
        CHECK(same_weyl_ideal(a.M, b.M));
    }
}

TEST_CASE("series_solutions examples") {
    auto T = series_solutions(sys({"Dx1", "Dx2"}), 5);
    REQUIRE(T.size() == 1);
    REQUIRE(T[0].coeffs.size() == 1);
    CHECK(T[0].coeffs.at(E(0, 0)) == 1);

    auto X = series_solutions(sys({"Dx1 - 1", "Dx2"}), 7);
    REQUIRE(X.size() == 1);
    mpz_class f = 1;
    for (unsigned k = 0; k <= 7; ++k) {
        if (k > 1) f *= k;
        CHECK(X[0].coeffs.at(E(k, 0)) == mpq_class(1, 1) / mpq_class(f));
    }
    CHECK(X[0].coeffs.size() == 8);

    auto G = sys(OP);
    auto S = series_solutions(G, 4);
    REQUIRE(S.size() == 2);
    // The basis element for the parametric term 1 is cos(x1+x2), the one for
    // D1 is sin(x1+x2).
    for (std::size_t k = 0; k < 2; ++k) {
        for (unsigned a = 0; a <= 4; ++a)
            for (unsigned b = 0; a + b <= 4; ++b) {
                CHECK(S[k].coeff(E(a, b)) == trig_coeff(k == 1, E(a, b)));
            }
        CHECK(residual_vanishes(G, S[k]));
    }
    CHECK_THROWS_AS(series_solutions(sys(APP1), 3), PreconditionError);
}

TEST_CASE("initial exponents of series solutions equal the parametric exponents") {
    auto G = sys(OP);
    std::set<Exponent> in;
    for (const auto &s : series_solutions(G, 6)) in.insert(s.initial_exponent());
    CHECK(in == as_set(G.parametric_exponents()));
}

TEST_CASE("initial exponents of known solutions zero every indicial polynomial") {
    // Known initial exponents of power series solutions of each system.
    std::vector<std::pair<std::vector<std::string>, std::vector<Exponent>>> cases{
        {INDPOL, {E(2, 1), E(1, 1)}}, {CAND2, {E(1, 1)}}, {APP1, {E(0, 0), E(0, 1)}},
        {APP2, {E(1, 0), E(1, 1)}},   {DET2, {E(0, 0), E(1, 0), E(1, 1)}}};
    for (const auto &[ops, exps] : cases) {
        auto G = sys(ops);
        for (const auto &g : G.elements) {
            MultiPoly p = indicial_polynomial(g);
            for (const auto &w : exps) CHECK(p.evaluate(0, Z(w[0])).evaluate(1, Z(w[1])).is_zero());
        }
    }
}

TEST_CASE("property: series residuals vanish for random first-order systems") {
    // D1 - a(x), D2 - b(x) with a, b polynomials and da/dx2 = db/dx1 is
    // integrable; choose a = dphi/dx1, b = dphi/dx2.
    std::mt19937_64 rng(47);
    auto s = w2();
    for (int trial = 0; trial < 20; ++trial) {
        MultiPoly phi = random_poly(rng, Domain::ZZ, 2, 3, 4, 3);
        auto P1 = op("Dx1", s) - OreOperator::from_poly(s, phi.derivative(0));
        auto P2 = op("Dx2", s) - OreOperator::from_poly(s, phi.derivative(1));
        auto G = weyl_gb({P1, P2});
        REQUIRE(rank(G) == 1);
        auto S = series_solutions(G, 6);
        REQUIRE(S.size() == 1);
        CHECK(S[0].initial_exponent() == E(0, 0));
        CHECK(residual_vanishes(G, S[0]));
    }
}

TEST_CASE("property: weyl_gb output is reduced and contains the inputs") {
    std::mt19937_64 rng(48);
    auto s = w2();
    int done = 0;
    while (done < 30) {
        auto L1 = op("Dx2", s) - OreOperator::from_poly(s, random_poly(rng, Domain::ZZ, 2, 2, 3, 3));
        auto L2 = op("Dx1^2", s) + random_operator(rng, s, 1, 1, 3, 3);
        auto G = weyl_gb({L1, L2});
        ++done;
        CHECK(weyl_member(G, L1));
        CHECK(weyl_member(G, L2));
        auto hts = G.head_terms();
        for (std::size_t i = 0; i < hts.size(); ++i)
            for (std::size_t j = 0; j < hts.size(); ++j)
                if (i != j) CHECK_FALSE((hts[i][0] <= hts[j][0] && hts[i][1] <= hts[j][1]));
    }
}

TEST_CASE("property: intersections of Euler ideals annihilate exactly their monomials") {
    std::mt19937_64 rng(49);
    auto s = w2();
    std::vector<Exponent> pool;
    for (unsigned a = 0; a <= 3; ++a)
        for (unsigned b = 0; a + b <= 3; ++b) pool.push_back(E(a, b));
    for (int round = 0; round < 12; ++round) {
        std::shuffle(pool.begin(), pool.end(), rng);
        std::size_t k = 2 + rng() % 4;
        std::vector<Exponent> U(pool.begin(), pool.begin() + static_cast<long>(k));
        WeylGB I = euler_ideal(s, U[0]);
        for (std::size_t i = 1; i < U.size(); ++i) I = intersect_left_ideals(I, euler_ideal(s, U[i]));
        CHECK(rank(I) == U.size());
        WeylGB R = euler_ideal(s, U.back());
        for (std::size_t i = U.size() - 1; i-- > 0;) R = intersect_left_ideals(euler_ideal(s, U[i]), R);
        CHECK(same_weyl_ideal(I, R));
        for (const auto &u : pool) {
            TruncatedSeries f;
            f.nvars = 2;
            f.cap = 12;
            f.coeffs.emplace(u, 1);
            bool killed = true;
            for (const auto &g : I.elements) killed = killed && apply(g, f).is_zero();
            CHECK(killed == (std::find(U.begin(), U.end(), u) != U.end()));
        }
    }
}
