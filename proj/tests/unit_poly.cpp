#include <doctest.h>

#include <map>
#include <numeric>
#include <random>
#include <set>

#include "recip/poly.hpp"
#include "recip/search.hpp"

using namespace recip;

TEST_CASE("reciprocal polynomials") {
    const Tower& t7 = tower_for(7);
    const Field& F = t7.base();
    Poly f = parse_poly(F, "x+2");
    CHECK(reciprocal(f).to_string() == "2*x+1");

    const Tower& t5 = tower_for(5);
    Poly sr = parse_poly(t5.base(), "x^2+1");
    CHECK(reciprocal(sr) == sr);

    const Tower& t19 = tower_for(19);
    Poly g = parse_poly(t19.base(), "x^4+2");
    CHECK(reciprocal(g).to_string() == "2*x^4+1");
    // roots pair up with inverses over F_{19^2}
    Poly ge = embed_poly(t19, g);
    Poly gse = embed_poly(t19, reciprocal(g));
    const Field& E = t19.ext();
    std::set<uint32_t> inv_roots, star_roots;
    for (uint64_t i = 1; i < E.order(); ++i) {
        FieldElem a = E.element_at(i);
        if (E.is_zero(ge.eval(a))) inv_roots.insert(E.inv(a).code);
        if (E.is_zero(gse.eval(a))) star_roots.insert(a.code);
    }
    CHECK(inv_roots == star_roots);
    CHECK(!inv_roots.empty());

    CHECK_THROWS(reciprocal(Poly::zero(F)));

    // involution on polynomials with nonzero constant term: all monic f of
    // degree <= 3 over F_5 with f(0) != 0
    const Field& B5 = t5.base();
    for (uint64_t c0 = 1; c0 < 5; ++c0)
        for (uint64_t c1 = 0; c1 < 5; ++c1)
            for (uint64_t c2 = 0; c2 < 5; ++c2) {
                Poly h(B5, {B5.element_at(c0), B5.element_at(c1), B5.element_at(c2), B5.one()});
                CHECK(reciprocal(reciprocal(h)) == h);
            }
}

TEST_CASE("root-inverse pairing exhaustively") {
    // f(a) = 0 <=> f*(1/a) = 0 for all nonzero a, fields up to 2401 elements
    for (uint64_t q : {5, 7, 9, 13}) {
        const Tower& tw = tower_for(q);
        const Field& B = tw.base();
        const Field& E = tw.ext();
        std::mt19937 rng(q);
        for (int trial = 0; trial < 6; ++trial) {
            std::vector<FieldElem> cs(3 + trial % 2, B.zero());
            cs[0] = B.element_at(1 + rng() % (q - 1));
            for (size_t i = 1; i + 1 < cs.size(); ++i) cs[i] = B.element_at(rng() % q);
            cs.back() = B.one();
            Poly f(B, cs);
            Poly fe = embed_poly(tw, f), fse = embed_poly(tw, reciprocal(f));
            for (uint64_t i = 1; i < E.order(); ++i) {
                FieldElem a = E.element_at(i);
                CHECK(E.is_zero(fe.eval(a)) == E.is_zero(fse.eval(E.inv(a))));
            }
        }
    }
}

TEST_CASE("gcd") {
    const Tower& t5 = tower_for(5);
    const Field& F = t5.base();
    Poly f = parse_poly(F, "x^2+2");
    CHECK(gcd_poly(f, Poly::one(F)).to_string() == "1");
    CHECK(gcd_poly(f, reciprocal(f)).degree() == 0); // b^2 != 1
    Poly g = parse_poly(F, "x^2+4");
    CHECK(reciprocal(g) == g.scaled(F.from_int(4))); // f* = 4f
    CHECK(gcd_poly(g, reciprocal(g)) == g);           // monic associate
}

TEST_CASE("separability") {
    const Tower& t7 = tower_for(7);
    CHECK(is_separable(parse_poly(t7.base(), "x^3+2")));
    const Tower& t5 = tower_for(5);
    CHECK(!is_separable(parse_poly(t5.base(), "x^5+1")));
    const Tower& t2 = tower_for(2);
    CHECK(is_separable(parse_poly(t2.base(), "x^3+x+1")));
    CHECK(!is_separable(parse_poly(tower_for(17).base(), "x^3+14x+2")));
}

TEST_CASE("count_roots over subsets") {
    const Tower& t5 = tower_for(5);
    const Field& B = t5.base();
    Poly f = parse_poly(B, "x+2");
    std::vector<FieldElem> base_star;
    for (uint64_t i = 1; i < 5; ++i) base_star.push_back(B.element_at(i));
    CHECK(count_roots(f, base_star) == 1); // root 3

    const Tower& t7 = tower_for(7);
    Poly g = embed_poly(t7, parse_poly(t7.base(), "x^2+1"));
    std::vector<FieldElem> all49;
    for (uint64_t i = 0; i < 49; ++i) all49.push_back(t7.ext().element_at(i));
    CHECK(count_roots(g, all49) == 2); // -1 is a square in F_49

    // (x+b, x^{q+1}-1) = 1 for b in F_q^*, b^2 != 1: no roots on the norm-one set
    const Tower& t25 = tower_for(25);
    Poly h = parse_poly(t25.base(), "x+2");
    Poly xq1 = poly_powmod(Poly::x(t25.base()), t25.q() + 1, h) - Poly::one(t25.base());
    CHECK(gcd_poly(h, xq1).degree() == 0);
    CHECK(count_roots(embed_poly(t25, h), t25.norm_one_set()) == 0);
}

TEST_CASE("branch decomposition") {
    const Tower& t5 = tower_for(5);
    const Field& F = t5.base();
    Poly n = parse_poly(F, "x^2+1");
    RationalFn h = make_rational(n * n, Poly::x_pow(F, 2));
    BranchData at0 = branch_decompose(h, ProjPoint::at(F.zero()));
    CHECK(at0.k == -2);
    CHECK(at0.unit == F.one());
    BranchData atinf = branch_decompose(h, ProjPoint::infinity());
    CHECK(atinf.k == -2);
    CHECK(atinf.unit == F.one());

    // multiplicity-2 branch point of (x^d+b)^2/x^d at a root of x^d+b
    const Tower& t25 = tower_for(25);
    const Field& E = t25.ext();
    Poly fb = embed_poly(t25, parse_poly(t25.base(), "x^3+1"));
    RationalFn h2 = make_rational(fb * fb, Poly::x_pow(E, 3));
    FieldElem root{};
    bool found = false;
    for (uint64_t i = 1; i < E.order() && !found; ++i)
        if (E.is_zero(fb.eval(E.element_at(i)))) { root = E.element_at(i); found = true; }
    REQUIRE(found);
    BranchData bd = branch_decompose(h2, ProjPoint::at(root));
    CHECK(bd.k == 2);
    CHECK(bd.unit.code != 0);
    // local re-expansion: h(root + t) = t^k g(root + t) for several t
    auto [q1, r1] = deflate(h2.num, root);
    auto [q2, r2] = deflate(q1, root);
    CHECK(E.is_zero(r1));
    CHECK(E.is_zero(r2));
    CHECK(q2.eval(root) == E.mul(bd.unit, h2.den.eval(root)));
    for (uint64_t t = 1; t <= 5; ++t) {
        FieldElem x = E.add(root, E.element_at(t));
        FieldElem lhs = E.div(h2.num.eval(x), h2.den.eval(x));
        FieldElem tt = E.sub(x, root);
        FieldElem rhs = E.mul(E.pow(tt, 2), E.div(q2.eval(x), h2.den.eval(x)));
        CHECK(lhs == rhs);
    }

    // a non-reduced pair is rejected
    RationalFn bad{parse_poly(F, "x+1"), parse_poly(F, "x+1")};
    CHECK_THROWS(branch_decompose(bad, ProjPoint::at(F.from_int(-1))));
}

TEST_CASE("factorization profile") {
    const Tower& t5 = tower_for(5);
    const Field& F = t5.base();
    Poly n = parse_poly(F, "x^2+1");
    auto prof = squarefree_multiplicity_profile(make_rational(n * n, Poly::x_pow(F, 2)));
    // x^2+1 = (x+2)(x+3) over F_5
    REQUIRE(prof.size() == 3);
    CHECK(prof[0].first.to_string() == "x");
    CHECK(prof[0].second == -2);
    CHECK(prof[1].first.to_string() == "x+2");
    CHECK(prof[1].second == 2);
    CHECK(prof[2].first.to_string() == "x+3");
    CHECK(prof[2].second == 2);

    // x^4+2 over F_19: distinct-degree oracle agreement, all multiplicities 1
    const Tower& t19 = tower_for(19);
    const Field& B = t19.base();
    Poly f = parse_poly(B, "x^4+2");
    auto prof2 = squarefree_multiplicity_profile(make_rational(f, Poly::one(B)));
    int64_t deg_sum = 0;
    std::map<int, int> by_degree;
    for (auto& [fac, mult] : prof2) {
        CHECK(mult == 1);
        deg_sum += fac.degree() * mult;
        by_degree[fac.degree()]++;
    }
    CHECK(deg_sum == 4);
    // DDF oracle: deg gcd(x^{q^k} - x, f) = sum over d | k of d * (#factors of degree d)
    std::map<int, int64_t> ddf;
    for (int k = 1; k <= 4; ++k) {
        uint64_t e = 1;
        for (int i = 0; i < k; ++i) e *= B.order();
        Poly xqk = poly_powmod(Poly::x(B), e, f) - (Poly::x(B) % f);
        ddf[k] = xqk.is_zero() ? f.degree() : gcd_poly(xqk, f).degree();
    }
    for (int k = 1; k <= 4; ++k) {
        int64_t expect = 0;
        for (auto& [d, cnt] : by_degree)
            if (k % d == 0) expect += int64_t(d) * cnt;
        CHECK(ddf[k] == expect);
    }

    // constants have an empty profile
    CHECK(squarefree_multiplicity_profile(make_rational(Poly::constant(F, F.from_int(3)), Poly::one(F))).empty());

    // profile degree sum = deg num - deg den
    auto check_sum = [](const RationalFn& h) {
        int64_t s = 0;
        for (auto& [fac, mult] : squarefree_multiplicity_profile(h)) s += fac.degree() * mult;
        CHECK(s == h.num.degree() - h.den.degree());
    };
    check_sum(make_rational(n * n, Poly::x_pow(F, 2)));
    check_sum(make_rational(parse_poly(F, "x^4+x^3+2"), Poly::x_pow(F, 5)));
}

TEST_CASE("squarefree parts reconstruct") {
    const Tower& t17 = tower_for(17);
    const Field& F = t17.base();
    Poly f = parse_poly(F, "x^3+14x+2"); // (x-1)^2 (x+2)
    auto parts = squarefree_parts(f);
    REQUIRE(parts.size() == 2);
    Poly prod = Poly::one(F);
    for (auto& [sq, mult] : parts) {
        CHECK(is_separable(sq));
        prod = prod * sq.pow(uint64_t(mult));
    }
    CHECK(prod == f.monic());

    // p-th power multiplicities
    const Tower& t5 = tower_for(5);
    const Field& B = t5.base();
    Poly g = parse_poly(B, "x^2+1").pow(5) * Poly::x_pow(B, 3);
    Poly expect = g.monic();
    Poly re = Poly::one(B);
    for (auto& [sq, mult] : squarefree_parts(g)) re = re * sq.pow(uint64_t(mult));
    CHECK(re == expect);

    std::mt19937 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<FieldElem> cs(2 + rng() % 5, B.zero());
        for (auto& c : cs) c = B.element_at(rng() % 5);
        cs.back() = B.one();
        Poly h(B, cs);
        auto parts = squarefree_parts(h);
        Poly back = Poly::one(B);
        for (auto& [sq, mult] : parts) back = back * sq.pow(uint64_t(mult));
        CHECK(back == h.monic());
        // parts are squarefree and pairwise coprime
        for (size_t i = 0; i < parts.size(); ++i) {
            if (parts[i].first.degree() >= 1) CHECK(is_separable(parts[i].first));
            for (size_t j = i + 1; j < parts.size(); ++j)
                CHECK(gcd_poly(parts[i].first, parts[j].first).degree() == 0);
        }
    }
}

TEST_CASE("parse and print") {
    const Tower& t9 = tower_for(9);
    const Field& F = t9.base();
    CHECK(parse_poly(F, "x^4+x^2+2").to_string() == "x^4+x^2+2");
    Poly p = parse_poly(F, "xi^3*x^2+2");
    CHECK(p.coeff(2) == F.xi_pow(3));
    CHECK(p.coeff(0) == F.from_int(2));
    CHECK(parse_poly(F, " x^2 - 1 ") == parse_poly(F, "x^2+2"));
    CHECK(parse_poly(F, "2x") == parse_poly(F, "2*x"));
    CHECK(parse_poly(F, p.to_string()) == p);
    CHECK_THROWS(parse_poly(F, ""));
    CHECK_THROWS(parse_poly(F, "x^2++1"));
    CHECK_THROWS(parse_poly(F, "y+1"));

    // xi rewrite hook: xi^k -> xi^{uk}
    Poly q1 = parse_poly(F, "x+xi^2", 3);
    CHECK(q1.coeff(0) == F.xi_pow(6));
}
