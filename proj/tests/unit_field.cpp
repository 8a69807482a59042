#include <doctest.h>

#include <map>
#include <numeric>
#include <set>

#include "recip/field.hpp"

using namespace recip;

TEST_CASE("tower construction and embedding") {
    Tower t32(3, 2);
    CHECK(t32.base().order() == 9);
    CHECK(t32.ext().order() == 81);
    FieldElem e = t32.embed(t32.base().xi());
    CHECK(t32.ext().element_order(e) == 8);

    Tower t5(5, 1);
    CHECK(t5.base().order() == 5);
    CHECK(t5.ext().order() == 25);

    Tower t7(7, 2);
    CHECK(t7.base().order() == 49);
    CHECK(t7.ext().order() == 2401);
    // every embedded element is fixed by x -> x^49
    for (uint64_t i = 0; i < 49; ++i) {
        FieldElem a = t7.embed(t7.base().element_at(i));
        CHECK(t7.ext().pow(a, 49) == a);
    }
}

TEST_CASE("tower guards") {
    CHECK_THROWS(Tower(6, 1));  // p not prime
    CHECK_THROWS(Tower(2, 11)); // 2^22 beyond the enumeration guard
    CHECK_THROWS(Tower(3, 0));
}

TEST_CASE("embedding is a ring homomorphism") {
    Tower t(7, 2);
    const Field& B = t.base();
    const Field& E = t.ext();
    CHECK(t.embed(B.one()) == E.one());
    for (uint64_t i = 0; i < 49; ++i)
        for (uint64_t j = 0; j < 49; ++j) {
            FieldElem a = B.element_at(i), b = B.element_at(j);
            CHECK(t.embed(B.mul(a, b)) == E.mul(t.embed(a), t.embed(b)));
            CHECK(t.embed(B.add(a, b)) == E.add(t.embed(a), t.embed(b)));
        }
    // xi_{q^2}^{q+1} generates the embedded multiplicative group
    FieldElem norm_gen = E.pow(E.xi(), int64_t(t.q()) + 1);
    CHECK(E.element_order(norm_gen) == t.q() - 1);
    CHECK(t.in_base(norm_gen));
}

TEST_CASE("is_nth_power matches brute force") {
    // any c with nn = 1
    Field f25(5, 2);
    for (uint64_t i = 1; i < 25; ++i) CHECK(f25.is_nth_power(f25.element_at(i), 1));
    // even/odd exponents for squares
    CHECK(f25.is_nth_power(f25.xi_pow(2), 2));
    CHECK(!f25.is_nth_power(f25.xi_pow(1), 2));
    CHECK_THROWS(f25.is_nth_power(f25.zero(), 2));

    Field f81(3, 4);
    int64_t fifth_powers = 0;
    for (uint64_t i = 1; i < 81; ++i)
        if (f81.is_nth_power(f81.element_at(i), 5)) ++fifth_powers;
    CHECK(fifth_powers == 80 / std::gcd<uint64_t>(5, 80)); // 16

    for (uint64_t p : {3, 5, 7}) {
        for (uint32_t n : {2, 4}) {
            if (p == 5 && n == 4) continue; // 625 covered by p=5 n=2? keep 3^4, 5^2-style variety
            uint64_t order = 1;
            for (uint32_t i = 0; i < n; ++i) order *= p;
            if (order > 2401) continue;
            Field F(p, n);
            uint64_t Q = F.order();
            for (uint64_t nn = 1; nn <= 50; ++nn) {
                std::set<uint32_t> powers;
                std::map<uint32_t, int> solutions;
                for (uint64_t i = 1; i < Q; ++i) {
                    FieldElem y = F.element_at(i);
                    FieldElem c = F.pow(y, int64_t(nn));
                    powers.insert(c.code);
                    solutions[c.code]++;
                }
                for (uint64_t i = 1; i < Q; ++i) {
                    FieldElem c = F.element_at(i);
                    bool brute = powers.count(c.code) > 0;
                    CHECK(F.is_nth_power(c, nn) == brute);
                    if (brute) CHECK(solutions[c.code] == int(std::gcd(nn, Q - 1)));
                }
            }
        }
    }
}

TEST_CASE("frobenius") {
    Tower t(7, 2);
    const Field& E = t.ext();
    // fixed points are exactly the embedded base field
    std::set<uint32_t> fixed, embedded;
    for (uint64_t i = 0; i < E.order(); ++i) {
        FieldElem a = E.element_at(i);
        if (t.frobenius(a) == a) fixed.insert(a.code);
    }
    for (uint64_t i = 0; i < t.base().order(); ++i) embedded.insert(t.embed(t.base().element_at(i)).code);
    CHECK(fixed == embedded);

    // norm-one elements invert under frobenius
    for (FieldElem a : t.norm_one_set())
        CHECK(t.frobenius(a) == E.inv(a));

    // a^7 against a repeated-multiplication oracle on a spread of elements
    for (uint64_t i = 1; i < 2401; i += 97) {
        FieldElem a = E.element_at(i);
        FieldElem direct = E.one();
        for (int k = 0; k < 7; ++k) direct = E.mul(direct, a);
        CHECK(E.pow(a, 7) == direct);
    }

    // automorphism, exhaustively on F_81
    Tower t3(3, 2);
    const Field& E3 = t3.ext();
    for (uint64_t i = 0; i < 81; ++i)
        for (uint64_t j = 0; j < 81; ++j) {
            FieldElem a = E3.element_at(i), b = E3.element_at(j);
            CHECK(t3.frobenius(E3.add(a, b)) == E3.add(t3.frobenius(a), t3.frobenius(b)));
            CHECK(t3.frobenius(E3.mul(a, b)) == E3.mul(t3.frobenius(a), t3.frobenius(b)));
        }
    // involution on F_{q^2}
    for (uint64_t i = 0; i < 81; ++i) {
        FieldElem a = E3.element_at(i);
        CHECK(t3.frobenius(t3.frobenius(a)) == a);
    }
}

TEST_CASE("enumeration order and element sums") {
    Field f5(5, 1);
    auto all5 = f5.elements();
    CHECK(all5.size() == 5);
    std::set<uint32_t> seen;
    for (FieldElem a : all5) seen.insert(a.code);
    CHECK(seen.size() == 5);
    CHECK(f5.is_zero(all5[0]));
    CHECK(all5[1] == f5.one());

    Field f9(3, 2);
    CHECK(f9.is_zero(f9.element_at(0)));
    std::set<uint32_t> nz;
    for (uint64_t k = 0; k < 8; ++k) nz.insert(f9.xi_pow(int64_t(k)).code);
    CHECK(nz.size() == 8);

    Field f2401(7, 4);
    FieldElem sum = f2401.zero();
    for (uint64_t i = 0; i < f2401.order(); ++i) sum = f2401.add(sum, f2401.element_at(i));
    CHECK(f2401.is_zero(sum));
}

TEST_CASE("field invariants: modulus, xi, log table") {
    Field F(3, 4);
    // xi has full order and log/exp are inverse
    CHECK(F.element_order(F.xi()) == F.order() - 1);
    for (uint64_t i = 1; i < F.order(); ++i) {
        FieldElem a = F.element_at(i);
        CHECK(F.xi_pow(int64_t(F.log(a))) == a);
    }
    // modulus is irreducible: no monic divisor of degree 1 or 2 over F_3
    Field f3(3, 1);
    auto eval_mod = [&](const std::vector<uint32_t>& poly, const std::vector<uint32_t>& div) {
        // long-division remainder check over the prime field, digit arithmetic
        std::vector<int64_t> r(poly.begin(), poly.end());
        int64_t dd = int64_t(div.size()) - 1;
        for (int64_t i = int64_t(r.size()) - 1; i >= dd; --i) {
            int64_t c = r[size_t(i)] % 3;
            if (c == 0) continue;
            for (int64_t j = 0; j <= dd; ++j)
                r[size_t(i - dd + j)] = ((r[size_t(i - dd + j)] - c * int64_t(div[size_t(j)])) % 3 + 3) % 3;
        }
        for (int64_t i = 0; i < dd; ++i)
            if (r[size_t(i)] % 3 != 0) return false;
        return true;
    };
    const auto& mod = F.modulus();
    for (uint32_t a = 0; a < 3; ++a) {
        CHECK(!eval_mod(mod, {a, 1}));
        for (uint32_t b = 0; b < 3; ++b) CHECK(!eval_mod(mod, {a, b, 1}));
    }
    // modulus override: same arithmetic facts, different presentation
    Field G(3, 2, {2, 2}); // x^2 + 2x + 2, irreducible over F_3
    CHECK(G.order() == 9);
    CHECK(G.element_order(G.xi()) == 8);
    CHECK_THROWS(Field(3, 2, {0, 0})); // x^2 is reducible
}
