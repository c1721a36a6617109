#include <catch2/catch_amalgamated.hpp>

#include "ghostgap/concept_class.hpp"
#include "ghostgap/constructors.hpp"
#include "ghostgap/families.hpp"

#include "test_support.hpp"

using namespace ghostgap;
using testsupport::all_pairs;
using testsupport::random_table_class;
using testsupport::random_table_target;

namespace {

Sample make_sample(const DomainPtr& dom, std::initializer_list<int> ids) {
    Sample s;
    for (int id : ids) s.points.push_back(dom->point(dom->index_of_id(id)));
    return s;
}

}  // namespace

TEST_CASE("empirical error: identity, one mismatch in four, empty sample") {
    auto dom = FiniteDomain::indexed(4);
    ParamClass cls = table_class(dom, {{0, 1, 0, 1}, {1, 1, 1, 1}});
    Target realizable = Target::realizable(cls, 0);

    Sample s = make_sample(dom, {0, 1, 2, 3});
    CHECK(empirical_error(cls, 0, realizable, s) == Rat(0));

    // Hypothesis 1 disagrees with target 0 exactly on ids 0 and 2; pick a
    // 4-point sample hitting one disagreement.
    Sample one_mismatch = make_sample(dom, {0, 1, 3, 3});
    CHECK(empirical_error(cls, 1, realizable, one_mismatch) == Rat(1, 4));

    Sample empty;
    CHECK(empirical_error(cls, 1, realizable, empty) == Rat(0));
    CHECK_THROWS_AS(empirical_error(cls, 5, realizable, s), ValidationError);
}

TEST_CASE("ghost gap: S = T gives zero; witness indicator gives one") {
    auto dom = FiniteDomain::indexed(3);
    ParamClass witness = singleton_witness_class(dom, {2});
    Target zero = Target::constant(0);

    SamplePair same{make_sample(dom, {0, 2}), make_sample(dom, {0, 2})};
    CHECK(ghost_gap(witness, 1, zero, same) == Rat(0));

    // Hypothesis 1_{2}, train x = 0 (no error), ghost y = 2 (error 1).
    SamplePair p{make_sample(dom, {0}), make_sample(dom, {2})};
    CHECK(ghost_gap(witness, 1, zero, p) == Rat(1));
}

TEST_CASE("ghost gap: direct arithmetic oracle at m = 2") {
    // Ghost errors {1,1}, train errors {1,0}: gap = 1 - 1/2 = 1/2.
    auto dom = FiniteDomain::indexed(4);
    ParamClass cls = table_class(dom, {{1, 1, 1, 0}});
    Target zero = Target::constant(0);
    SamplePair p{make_sample(dom, {0, 3}), make_sample(dom, {1, 2})};
    Rat expected = empirical_error(cls, 0, zero, p.ghost) - empirical_error(cls, 0, zero, p.train);
    CHECK(expected == Rat(1, 2));
    CHECK(ghost_gap(cls, 0, zero, p) == expected);
}

TEST_CASE("witness membership uses the closed inequality gap >= eps/2") {
    auto dom = FiniteDomain::indexed(3);
    Target zero = Target::constant(0);

    ParamClass witness = singleton_witness_class(dom, {2});
    SamplePair gap_one{make_sample(dom, {0}), make_sample(dom, {2})};
    CHECK(witness_contains(witness, 1, zero, 1, Rat(1), gap_one));

    // Gap exactly eps/2: hypothesis errs on one of two ghost points only.
    ParamClass half = table_class(dom, {{1, 0, 0}});
    SamplePair boundary{make_sample(dom, {1, 2}), make_sample(dom, {0, 1})};
    CHECK(ghost_gap(half, 0, zero, boundary) == Rat(1, 2));
    CHECK(witness_contains(half, 0, zero, 2, Rat(1), boundary));

    // Gap 1/4 < 1/2 stays out.
    ParamClass quarter = table_class(dom, {{1, 0, 0}});
    SamplePair below{make_sample(dom, {1, 1, 2, 2}), make_sample(dom, {0, 1, 2, 2})};
    CHECK(ghost_gap(quarter, 0, zero, below) == Rat(1, 4));
    CHECK_FALSE(witness_contains(quarter, 0, zero, 4, Rat(1), below));

    CHECK_THROWS_AS(witness_contains(half, 0, zero, 2, Rat(0), boundary), ValidationError);
    CHECK_THROWS_AS(witness_contains(half, 0, zero, 3, Rat(1), boundary), ValidationError);
}

TEST_CASE("bad event: class containing only the target is never bad") {
    auto dom = FiniteDomain::indexed(3);
    ParamClass cls = table_class(dom, {{0, 1, 1}});
    Target c = Target::realizable(cls, 0);
    for (const auto& p : all_pairs(dom, 1)) {
        CHECK_FALSE(bad_event_contains(cls, c, 1, Rat(1, 2), p));
        CHECK_FALSE(bad_event_contains(cls, c, 1, Rat(2), p));
    }
}

TEST_CASE("bad event of the witness class at m=1, eps=1: y in A and x != y") {
    auto dom = FiniteDomain::indexed(5);
    std::vector<int> support{1, 3};
    ParamClass cls = singleton_witness_class(dom, support);
    Target zero = Target::constant(0);
    for (const auto& x : dom->points()) {
        for (const auto& y : dom->points()) {
            SamplePair p{Sample{{x}}, Sample{{y}}};
            bool expected = (y.id == 1 || y.id == 3) && x.id != y.id;
            CHECK(bad_event_contains(cls, zero, 1, Rat(1), p) == expected);
        }
    }
}

TEST_CASE("eps > 2 empties the bad event: gaps live in [-1, 1]") {
    auto dom = FiniteDomain::indexed(3);
    RngStream stream(314, 0);
    ParamClass cls = random_table_class(dom, 6, stream);
    Target c = random_table_target(dom, stream);
    for (const auto& p : all_pairs(dom, 2)) {
        for (std::size_t theta = 0; theta < cls.size(); ++theta) {
            Rat g = ghost_gap(cls, theta, c, p);
            CHECK(g <= Rat(1));
            CHECK(g >= Rat(-1));
        }
        CHECK_FALSE(bad_event_contains(cls, c, 2, Rat(9, 4), p));
    }
}

TEST_CASE("sup gap: singleton class and direct evaluation") {
    auto dom = FiniteDomain::indexed(3);
    Target zero = Target::constant(0);
    ParamClass single = table_class(dom, {{1, 0, 1}});
    for (const auto& p : all_pairs(dom, 1)) {
        CHECK(sup_gap(single, zero, 1, p) == ghost_gap(single, 0, zero, p));
    }
    // Class {0, 1_{a}} on the pair ((a),(a)): both gaps vanish.
    ParamClass witness = singleton_witness_class(dom, {1});
    SamplePair p{make_sample(dom, {1}), make_sample(dom, {1})};
    CHECK(sup_gap(witness, zero, 1, p) == Rat(0));
}

TEST_CASE("superlevel identity: bad event iff sup gap >= eps/2") {
    auto dom = FiniteDomain::indexed(3);
    RngStream stream(2718, 0);
    for (int inst = 0; inst < 5; ++inst) {
        ParamClass cls = random_table_class(dom, 4 + stream.next_below(4), stream);
        Target c = random_table_target(dom, stream);
        for (std::size_t m : {std::size_t{1}, std::size_t{2}}) {
            for (const auto& p : all_pairs(dom, m)) {
                for (const Rat& eps : {Rat(1, 4), Rat(1, 2), Rat(1), Rat(3, 2), Rat(2)}) {
                    CHECK(bad_event_contains(cls, c, m, eps, p) ==
                          (sup_gap(cls, c, m, p) >= eps / Rat(2)));
                }
            }
        }
    }
}

TEST_CASE("projection identity: existential scan equals witness-set projection") {
    auto dom = FiniteDomain::indexed(4);
    RngStream stream(1618, 0);
    ParamClass cls = random_table_class(dom, 7, stream);
    Target c = random_table_target(dom, stream);
    Rat eps(1, 2);
    for (const auto& p : all_pairs(dom, 1)) {
        bool projected = false;
        for (std::size_t theta = 0; theta < cls.size(); ++theta)
            projected = projected || witness_contains(cls, theta, c, 1, eps, p);
        CHECK(bad_event_contains(cls, c, 1, eps, p) == projected);
    }
}

TEST_CASE("gap grid property: every gap is k/m with |k| <= m") {
    auto dom = FiniteDomain::indexed(4);
    RngStream stream(555, 0);
    ParamClass cls = random_table_class(dom, 5, stream);
    Target c = random_table_target(dom, stream);
    for (std::size_t m : {std::size_t{1}, std::size_t{2}}) {
        for (const auto& p : all_pairs(dom, m)) {
            for (std::size_t theta = 0; theta < cls.size(); ++theta) {
                Rat g = ghost_gap(cls, theta, c, p);
                Rat scaled = g * Rat(static_cast<long long>(m));
                CHECK(scaled.is_integer());
                CHECK(abs(scaled) <= Rat(static_cast<long long>(m)));
            }
        }
    }
    // m = 0: the gap is identically 0.
    SamplePair empty;
    CHECK(ghost_gap(cls, 0, c, empty) == Rat(0));
}

TEST_CASE("swap antisymmetry: gap(S,T) = -gap(T,S)") {
    auto dom = FiniteDomain::indexed(3);
    RngStream stream(777, 0);
    ParamClass cls = random_table_class(dom, 4, stream);
    Target c = random_table_target(dom, stream);
    for (const auto& p : all_pairs(dom, 2)) {
        SamplePair reversed{p.ghost, p.train};
        for (std::size_t theta = 0; theta < cls.size(); ++theta) {
            CHECK(ghost_gap(cls, theta, c, p) == -ghost_gap(cls, theta, c, reversed));
        }
    }
}

TEST_CASE("eps-monotonicity of bad-event membership") {
    auto dom = FiniteDomain::indexed(3);
    RngStream stream(888, 0);
    ParamClass cls = random_table_class(dom, 5, stream);
    Target c = random_table_target(dom, stream);
    std::vector<Rat> grid{Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1), Rat(3, 2), Rat(2)};
    for (const auto& p : all_pairs(dom, 1)) {
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            // Membership at larger eps implies membership at smaller eps.
            if (bad_event_contains(cls, c, 1, grid[i + 1], p))
                CHECK(bad_event_contains(cls, c, 1, grid[i], p));
        }
    }
}

TEST_CASE("realizable target: its own hypothesis never witnesses") {
    auto dom = FiniteDomain::indexed(4);
    RngStream stream(999, 0);
    ParamClass cls = random_table_class(dom, 6, stream);
    std::size_t star = 2;
    Target c = Target::realizable(cls, star);
    REQUIRE(c.realizable_ref == star);
    for (const auto& p : all_pairs(dom, 2)) {
        CHECK(ghost_gap(cls, star, c, p) == Rat(0));
        CHECK_FALSE(witness_contains(cls, star, c, 2, Rat(1, 4), p));
    }
}
