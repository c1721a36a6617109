#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include "ghostgap/domain.hpp"
#include "ghostgap/enumeration.hpp"

using namespace ghostgap;

TEST_CASE("domain validation") {
    CHECK_THROWS_AS(FiniteDomain(std::vector<DomainPoint>{}), ValidationError);
    CHECK_THROWS_AS(FiniteDomain({{0, std::nullopt}, {0, std::nullopt}}), ValidationError);
    CHECK_THROWS_AS(FiniteDomain({{0, Rat(1)}, {1, Rat(0)}}), ValidationError);   // decreasing
    CHECK_THROWS_AS(FiniteDomain({{0, Rat(0)}, {1, std::nullopt}}), ValidationError);  // mixed
    FiniteDomain ok({{3, Rat(0)}, {7, Rat(1, 2)}});
    CHECK(ok.size() == 2);
    CHECK(ok.index_of_id(7) == 1);
    CHECK_THROWS_AS(ok.index_of_id(4), ValidationError);
}

TEST_CASE("grid coordinates are exact rationals") {
    auto dom = FiniteDomain::grid(Rat(0), Rat(1), 5);
    REQUIRE(dom->size() == 5);
    CHECK(*dom->point(0).coord == Rat(0));
    CHECK(*dom->point(1).coord == Rat(1, 4));
    CHECK(*dom->point(2).coord == Rat(1, 2));
    CHECK(*dom->point(3).coord == Rat(3, 4));
    CHECK(*dom->point(4).coord == Rat(1));
    auto shifted = FiniteDomain::grid(Rat(-1, 2), Rat(1, 2), 3);
    CHECK(*shifted->point(1).coord == Rat(0));
}

TEST_CASE("measure validation") {
    auto dom = FiniteDomain::indexed(3);
    CHECK_THROWS_AS(FiniteMeasure(dom, {Rat(1, 2), Rat(1, 2)}), ValidationError);
    CHECK_THROWS_AS(FiniteMeasure(dom, {Rat(1, 2), Rat(1, 2), Rat(1, 2)}), ValidationError);
    CHECK_THROWS_AS(FiniteMeasure(dom, {Rat(3, 2), Rat(-1, 2), Rat(0)}), ValidationError);
    FiniteMeasure mu(dom, {Rat(1, 2), Rat(1, 4), Rat(1, 4)});
    CHECK(mu.common_denominator() == 4);
    FiniteMeasure uniform = FiniteMeasure::uniform(dom);
    CHECK(uniform.weight(0) == Rat(1, 3));
}

TEST_CASE("iid sampling: degenerate and empty cases") {
    auto dom = FiniteDomain::indexed(2);
    FiniteMeasure point_mass(dom, {Rat(1), Rat(0)});
    RngStream stream(1, 0);
    Sample s = sample_iid(point_mass, 3, stream);
    REQUIRE(s.size() == 3);
    for (const auto& p : s.points) CHECK(p.id == 0);

    RngStream stream2(1, 1);
    CHECK(sample_iid(point_mass, 0, stream2).size() == 0);
}

TEST_CASE("iid sampling never draws zero-weight points") {
    auto dom = FiniteDomain::indexed(3);
    FiniteMeasure mu(dom, {Rat(1, 2), Rat(0), Rat(1, 2)});
    RngStream stream(5, 0);
    Sample s = sample_iid(mu, 10000, stream);
    for (const auto& p : s.points) CHECK(p.id != 1);
}

TEST_CASE("iid sampling is a pure function of (seed, stream)") {
    auto dom = FiniteDomain::indexed(4);
    FiniteMeasure mu = FiniteMeasure::uniform(dom);
    RngStream a(42, 7);
    RngStream b(42, 7);
    Sample sa = sample_iid(mu, 50, a);
    Sample sb = sample_iid(mu, 50, b);
    for (std::size_t i = 0; i < 50; ++i) CHECK(sa[i].id == sb[i].id);
    // A different stream index gives a different draw sequence.
    RngStream c(42, 8);
    Sample sc = sample_iid(mu, 50, c);
    bool all_same = true;
    for (std::size_t i = 0; i < 50; ++i) all_same = all_same && sa[i].id == sc[i].id;
    CHECK_FALSE(all_same);
}

TEST_CASE("law of large numbers sanity on a fixed seed") {
    auto dom = FiniteDomain::indexed(2);
    FiniteMeasure mu = FiniteMeasure::uniform(dom);
    const std::size_t n = 100000;
    RngStream stream(2024, 0);
    Sample s = sample_iid(mu, n, stream);
    std::size_t count_a = 0;
    for (const auto& p : s.points) count_a += p.id == 0;
    double freq = static_cast<double>(count_a) / static_cast<double>(n);
    CHECK(std::abs(freq - 0.5) < 0.01);
}

TEST_CASE("per-point frequencies stay within the Hoeffding envelope") {
    auto dom = FiniteDomain::indexed(3);
    FiniteMeasure mu(dom, {Rat(1, 2), Rat(1, 3), Rat(1, 6)});
    const std::size_t n = 100000;
    double tol = 5.0 * std::sqrt(std::log(2.0 / 0.001) / (2.0 * n));
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        RngStream stream(seed, 0);
        Sample s = sample_iid(mu, n, stream);
        std::map<int, std::size_t> counts;
        for (const auto& p : s.points) counts[p.id]++;
        for (std::size_t i = 0; i < dom->size(); ++i) {
            double freq = static_cast<double>(counts[dom->point(i).id]) / n;
            CHECK(std::abs(freq - mu.weight(i).to_double()) <= tol);
        }
    }
}

TEST_CASE("pair enumeration: uniform two-point domain at m = 1") {
    auto dom = FiniteDomain::indexed(2);
    FiniteMeasure mu = FiniteMeasure::uniform(dom);
    PairEnumerator en(mu, 1);
    CHECK(en.total() == 4);
    SamplePair p;
    Rat w;
    int count = 0;
    Rat sum;
    while (en.next(p, w)) {
        CHECK(w == Rat(1, 4));
        CHECK(p.length() == 1);
        sum += w;
        ++count;
    }
    CHECK(count == 4);
    CHECK(sum == Rat(1));
}

TEST_CASE("pair enumeration weights sum to exactly 1") {
    auto dom = FiniteDomain::indexed(3);
    FiniteMeasure mu(dom, {Rat(1, 2), Rat(1, 4), Rat(1, 4)});
    int count = 0;
    Rat sum;
    for_each_pair(mu, 2, kDefaultEnumerationCap, [&](const SamplePair&, const Rat& w) {
        sum += w;
        ++count;
    });
    CHECK(count == 81);
    CHECK(sum == Rat(1));
}

TEST_CASE("pair enumeration at m = 0 yields the single empty pair") {
    auto dom = FiniteDomain::indexed(5);
    FiniteMeasure mu = FiniteMeasure::uniform(dom);
    PairEnumerator en(mu, 0);
    CHECK(en.total() == 1);
    SamplePair p;
    Rat w;
    REQUIRE(en.next(p, w));
    CHECK(p.length() == 0);
    CHECK(w == Rat(1));
    CHECK_FALSE(en.next(p, w));
}

TEST_CASE("pair enumeration respects the cap") {
    auto dom = FiniteDomain::indexed(10);
    FiniteMeasure mu = FiniteMeasure::uniform(dom);
    CHECK_THROWS_AS(PairEnumerator(mu, 4, 1000), CapExceeded);  // 10^8 > 1000
    CHECK_NOTHROW(PairEnumerator(mu, 1, 100));
}

TEST_CASE("coordinate swap") {
    auto dom = FiniteDomain::indexed(4);
    SamplePair p{Sample{{dom->point(0), dom->point(1)}}, Sample{{dom->point(2), dom->point(3)}}};
    SamplePair swapped = swap_coordinates(p, {true, false});
    CHECK(swapped.train[0].id == 2);
    CHECK(swapped.ghost[0].id == 0);
    CHECK(swapped.train[1].id == 1);
    CHECK(swapped.ghost[1].id == 3);
    CHECK_THROWS_AS(swap_coordinates(p, {true}), ValidationError);
    // Identity mask is a no-op; double swap restores.
    SamplePair twice = swap_coordinates(swapped, {true, false});
    CHECK(twice.train[0].id == p.train[0].id);
    CHECK(twice.ghost[1].id == p.ghost[1].id);
}
