#include <doctest.h>

#include <stdexcept>
#include <map>

#include "recip/search.hpp"

using namespace recip;

TEST_CASE("trace-cover genus") {
    const Tower& t7 = tower_for(7);
    ArtinSchreierCurve a = artin_schreier_curve(t7, 2, parse_poly(t7.base(), "x^2+1"));
    CHECK(a.pole_order_zero == 2);
    CHECK(a.pole_order_inf == 2);
    CHECK(genus_as(a) == 12);

    const Tower& t11 = tower_for(11);
    CHECK(genus_as(artin_schreier_curve(t11, 2, parse_poly(t11.base(), "x^2+1"))) == 20);
    const Tower& t13 = tower_for(13);
    CHECK(genus_as(artin_schreier_curve(t13, 2, parse_poly(t13.base(), "x^2+1"))) == 24);

    // wild poles are rejected
    const Tower& t5 = tower_for(5);
    CHECK_THROWS_WITH_AS(genus_as(artin_schreier_curve(t5, 5, parse_poly(t5.base(), "x^2+2"))),
                         doctest::Contains("wild pole"), std::domain_error);
}

TEST_CASE("trace-cover counts") {
    const Tower& t7 = tower_for(7);
    CountReport a = count_as(artin_schreier_curve(t7, 2, parse_poly(t7.base(), "x^2+1")));
    CHECK(a.genus == 12);
    CHECK(a.points == 170);
    CHECK(!a.suspect);

    const Tower& t11 = tower_for(11);
    CountReport b = count_as(artin_schreier_curve(t11, 2, parse_poly(t11.base(), "x^2+1")), 4);
    CHECK(b.genus == 20);
    CHECK(b.points == 442);

    const Tower& t13 = tower_for(13);
    CountReport c = count_as(artin_schreier_curve(t13, 2, parse_poly(t13.base(), "x^2+1")));
    CHECK(c.genus == 24);
    CHECK(c.points == 626);

    // Hasse-Weil sanity holds on every counted row
    for (const CountReport* r : {&a, &b, &c}) {
        int64_t q = r == &a ? 7 : (r == &b ? 11 : 13);
        CHECK(r->points <= q * q + 1 + 2 * r->genus * q);
        CHECK(r->points >= q * q + 1 - 2 * r->genus * q);
    }
}

TEST_CASE("y -> y^q + y is the trace onto F_q") {
    for (int64_t q : {3, 5, 7, 9, 11, 13}) {
        const Tower& tw = tower_for(uint64_t(q));
        const Field& E = tw.ext();
        std::map<uint32_t, int64_t> fibers;
        for (uint64_t i = 0; i < E.order(); ++i) {
            FieldElem y = E.element_at(i);
            FieldElem img = E.add(E.pow(y, q), y);
            CHECK(tw.in_base(img)); // image lies in the embedded F_q
            fibers[img.code]++;
        }
        CHECK(int64_t(fibers.size()) == q); // image is all of F_q
        for (auto& [code, cnt] : fibers) CHECK(cnt == q);
    }
}

TEST_CASE("pole bookkeeping across s") {
    const Tower& t7 = tower_for(7);
    const Field& B = t7.base();
    Poly f = parse_poly(B, "x^2+1");
    // s = 0: single pole at infinity of order 2d
    ArtinSchreierCurve c0 = artin_schreier_curve(t7, 0, f);
    CHECK(c0.pole_order_zero == 0);
    CHECK(c0.pole_order_inf == 4);
    // s = 2d: single pole at zero
    ArtinSchreierCurve c4 = artin_schreier_curve(t7, 4, f);
    CHECK(c4.pole_order_zero == 4);
    CHECK(c4.pole_order_inf == 0);
    // infinity is then an ordinary point whose value is the lc ratio
    CountReport r = count_as(c4);
    CHECK(r.points >= 1);
    CHECK(!r.suspect);
}
