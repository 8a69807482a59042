#include <doctest.h>

#include <stdexcept>
#include <fstream>

#include "recip/records.hpp"

using namespace recip;

#ifndef RECIP_DATA_DIR
#define RECIP_DATA_DIR "data"
#endif

TEST_CASE("serre upper bound") {
    CHECK(serre_upper(7, 0) == 8);
    CHECK(serre_upper(25, 2) == 46);
    CHECK(serre_upper(81, 4) == 154); // matches the maximal (q=9, m=5) curve
    CHECK(serre_upper(2401, 13) == 3676);
    CHECK(serre_upper(8, 3) == 8 + 1 + 3 * 5); // floor(2 sqrt 8) = 5
}

TEST_CASE("many-points threshold") {
    CHECK(many_points_threshold(25, 0, 26) == 26); // U = q+1 -> L = q+1
    CHECK(many_points_threshold(2401, 47, 7008) == 5658);
    CHECK(many_points_threshold(361, 33, 1616) == 1248);
    CHECK(many_points_threshold(625, 18, 1526) == 1262);
    CHECK(many_points_threshold(625, 36, 2426) == 1898);
    CHECK(many_points_threshold(2401, 46, 6910) == 5589);
    CHECK_THROWS(many_points_threshold(25, 1, 20)); // U below q+1
    // floor is exact: 2 r^2 <= x^2 < 2 (r+1)^2 for r = L - q - 1
    for (int64_t q : {25, 49, 169})
        for (int64_t U = q + 1; U < q + 400; U += 7) {
            int64_t r = many_points_threshold(q, 1, U) - q - 1;
            int64_t x = U - q - 1;
            CHECK(2 * r * r <= x * x);
            CHECK(2 * (r + 1) * (r + 1) > x * x);
            CHECK(many_points_threshold(q, 1, U) <= U); // L never exceeds U
        }
}

TEST_CASE("classification taxonomy") {
    RecordTable t;
    t.set(2401, 13, 3258, 3676);
    t.set(625, 18, std::nullopt, 1526);
    t.set(169, 11, 400, 456);

    Verdict nr = classify(3576, 2401, 13, &t);
    CHECK(nr.kind == VerdictKind::NEW_RECORD);
    Verdict meets = classify(3258, 2401, 13, &t);
    CHECK(meets.kind == VerdictKind::MEETS_RECORD);
    Verdict ne = classify(1526, 625, 18, &t);
    CHECK(ne.kind == VerdictKind::NEW_ENTRY);
    CHECK(ne.L == 1262);
    Verdict below = classify(100, 625, 18, &t);
    CHECK(below.kind == VerdictKind::NONE);

    // no row: Serre fallback, many-points only
    Verdict fb = classify(3576, 2401, 14, &t);
    CHECK(fb.no_table_fallback);
    CHECK(fb.U == serre_upper(2401, 14));
    CHECK((fb.kind == VerdictKind::MANY_POINTS || fb.kind == VerdictKind::NONE));
    Verdict fb0 = classify(0, 2401, 14, &t);
    CHECK(fb0.kind == VerdictKind::NONE);
    Verdict fbn = classify(0, 2401, 14, nullptr);
    CHECK(fbn.no_table_fallback);

    // monotone in points across every table shape
    for (int shape = 0; shape < 3; ++shape) {
        RecordTable tt;
        if (shape == 0) tt.set(49, 3, 80, 90);
        if (shape == 1) tt.set(49, 3, std::nullopt, 90);
        int prev = -1;
        for (int64_t pts = 0; pts <= 95; ++pts) {
            Verdict v = classify(pts, 49, 3, &tt);
            int rank = verdict_rank(v.kind);
            CHECK(rank >= prev);
            prev = rank;
        }
    }
}

TEST_CASE("record table loading and validation") {
    RecordTable t = RecordTable::from_csv_text("q,g,lower,upper\n25,4,66,66\n49,12,,214\n");
    CHECK(t.size() == 2);
    CHECK(t.find(25, 4)->lower == 66);
    CHECK(!t.find(49, 12)->lower.has_value());
    CHECK(t.find(7, 7) == nullptr);

    CHECK_THROWS_WITH_AS(RecordTable::from_csv_text("25,4,66,60\n"), doctest::Contains("lower"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(RecordTable::from_csv_text("25,4,66,9999\n"), doctest::Contains("Serre"),
                         std::invalid_argument);
    CHECK_THROWS(RecordTable::from_csv_text("25,4\n"));

    RecordTable shipped = RecordTable::load_csv(std::string(RECIP_DATA_DIR) + "/records.csv");
    CHECK(shipped.size() >= 13);
    CHECK(shipped.find(2401, 13)->lower == 3258);
    CHECK(shipped.find(625, 36)->upper == 2426);
}
