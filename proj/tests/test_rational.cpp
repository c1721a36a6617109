#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <limits>

#include "ghostgap/rational.hpp"
#include "ghostgap/rng.hpp"

using ghostgap::ArithmeticOverflow;
using ghostgap::ParseError;
using ghostgap::Rat;
using ghostgap::RngStream;

TEST_CASE("rationals reduce to canonical form") {
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(-2, 4) == Rat(-1, 2));
    CHECK(Rat(2, -4) == Rat(-1, 2));
    CHECK(Rat(0, 7) == Rat(0));
    CHECK(Rat(0, -7).den() == 1);
    CHECK(Rat(6, 3).to_string() == "2");
    CHECK(Rat(3, 6).to_string() == "1/2");
}

TEST_CASE("parsing accepts p and p/q, rejects junk") {
    CHECK(Rat::from_string("1/4") == Rat(1, 4));
    CHECK(Rat::from_string("-3/6") == Rat(-1, 2));
    CHECK(Rat::from_string("7") == Rat(7));
    CHECK(Rat::from_string("-7") == Rat(-7));
    CHECK(Rat::from_string("2/4") == Rat(1, 2));
    CHECK_THROWS_AS(Rat::from_string("1/0"), ParseError);
    CHECK_THROWS_AS(Rat::from_string("1.5"), ParseError);
    CHECK_THROWS_AS(Rat::from_string(""), ParseError);
    CHECK_THROWS_AS(Rat::from_string("a/b"), ParseError);
    CHECK_THROWS_AS(Rat::from_string("1/-2"), ParseError);
    CHECK_THROWS_AS(Rat::from_string("1/"), ParseError);
}

TEST_CASE("exact arithmetic") {
    CHECK(Rat(1, 2) + Rat(1, 3) == Rat(5, 6));
    CHECK(Rat(1, 2) - Rat(1, 2) == Rat(0));
    CHECK(Rat(2, 3) * Rat(3, 4) == Rat(1, 2));
    CHECK(Rat(1, 2) / Rat(1, 4) == Rat(2));
    CHECK(-Rat(1, 3) == Rat(-1, 3));
    CHECK_THROWS_AS(Rat(1) / Rat(0), ArithmeticOverflow);

    // Accumulating thirds lands exactly back on integers.
    Rat acc;
    for (int i = 0; i < 9; ++i) acc += Rat(1, 3);
    CHECK(acc == Rat(3));
}

TEST_CASE("ordering is exact") {
    CHECK(Rat(1, 3) < Rat(1, 2));
    CHECK(Rat(-1, 2) < Rat(-1, 3));
    CHECK(Rat(1, 2) >= Rat(1, 2));
    CHECK(Rat(2, 4) >= Rat(1, 2));
    CHECK(Rat(499999999, 1000000000) < Rat(1, 2));
}

TEST_CASE("field identities on random small rationals") {
    RngStream stream(99, 0);
    for (int i = 0; i < 500; ++i) {
        auto draw = [&] {
            long long n = static_cast<long long>(stream.next_below(41)) - 20;
            long long d = static_cast<long long>(stream.next_below(20)) + 1;
            return Rat(n, d);
        };
        Rat a = draw(), b = draw(), c = draw();
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b - b == a);
        if (!b.is_zero()) CHECK((a / b) * b == a);
    }
}

TEST_CASE("overflow is detected, not wrapped") {
    long long big = std::numeric_limits<long long>::max();
    CHECK_THROWS_AS(Rat(big) + Rat(1), ArithmeticOverflow);
    CHECK_THROWS_AS(Rat(big, 2) * Rat(3), ArithmeticOverflow);
    // Huge intermediates that cancel are fine.
    CHECK(Rat(big) - Rat(big) == Rat(0));
}

TEST_CASE("double conversion brackets the exact value") {
    Rat third(1, 3);
    CHECK(third.to_double() == Catch::Approx(1.0 / 3.0));
    CHECK(third.to_double_upper() > 1.0 / 3.0);
    // Upper conversion never undershoots across a sweep of fractions.
    for (long long d = 1; d <= 97; ++d) {
        for (long long n = 0; n <= d; ++n) {
            Rat r(n, d);
            double up = r.to_double_upper();
            CHECK(static_cast<double>(n) / static_cast<double>(d) <= up);
        }
    }
}
