#include <random>

#include "doctest.h"
#include "supercolor/errors.hpp"
#include "supercolor/set_family.hpp"

using namespace supercolor;
using namespace supercolor::family;

namespace {

std::vector<ElementSet> all_intervals(int n) {
    std::vector<ElementSet> out;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            ElementSet x = 0;
            for (int e = i; e <= j; ++e) x |= singleton(e);
            out.push_back(x);
        }
    return out;
}

std::vector<int> size_minus(const std::vector<ElementSet>& sets, int t) {
    std::vector<int> g;
    for (ElementSet x : sets) g.push_back(std::max(0, cardinality(x) - t));
    return g;
}

// Direct restatement of D_F for cross-checking.
int d_reference(const std::vector<ElementSet>& f, ElementSet x) {
    int best = 0;
    for (ElementSet y : f)
        if ((x & ~y) && (y & ~x)) best = std::max(best, cardinality(x & y));
    return best;
}

} // namespace

TEST_CASE("intersecting families") {
    const std::vector<ElementSet> disjoint{make_set({0}), make_set({1, 2}), make_set({3})};
    CHECK(is_intersecting_family(disjoint));
    CHECK(is_intersecting_supermodular(disjoint, std::vector<int>{5, 5, 5}));

    const auto iv = all_intervals(4);
    CHECK(is_intersecting_family(iv));
    CHECK(is_intersecting_supermodular(iv, size_minus(iv, 1)));

    CHECK_FALSE(is_intersecting_family(std::vector<ElementSet>{make_set({1, 2}), make_set({2, 3})}));
}

TEST_CASE("strongly triple-intersecting families") {
    const std::vector<ElementSet> stars{make_set({0, 1}), make_set({1, 2}), make_set({0, 2})};
    CHECK(is_strongly_triple_intersecting_family(stars));

    const auto iv = all_intervals(4);
    CHECK(is_strongly_triple_intersecting_family(iv));
    CHECK(is_strongly_triple_intersecting_supermodular(iv, size_minus(iv, 2)));

    const std::vector<ElementSet> fan{make_set({1, 2}), make_set({1, 3}), make_set({1, 4})};
    CHECK_FALSE(is_strongly_triple_intersecting_family(fan));
}

TEST_CASE("supermodular variants reject a concave demand") {
    const auto iv = all_intervals(4);
    std::vector<int> g;
    for (ElementSet x : iv) g.push_back(std::min(cardinality(x), 2));
    // g({0,1}) + g({1,2}) = 4 > g({0,1,2}) + g({1}) = 3.
    CHECK(is_intersecting_family(iv));
    CHECK_FALSE(is_intersecting_supermodular(iv, g));
    CHECK_FALSE(is_strongly_triple_intersecting_supermodular(iv, g));
}

TEST_CASE("d_value") {
    const std::vector<ElementSet> single{make_set({0, 1})};
    CHECK(d_value(single, make_set({0, 1})) == 0);
    const std::vector<ElementSet> f{make_set({1, 2}), make_set({2, 3}), make_set({1, 2, 3})};
    CHECK(d_value(f, make_set({1, 2})) == 1);
    CHECK_THROWS_AS(d_value(f, make_set({1})), InvalidInput);

    // Shannon triangle stars over edge ids 0..5: δ(0) = {0,1,4,5}, δ(1) = {0,1,2,3}, δ(2) = {2,3,4,5}.
    const std::vector<ElementSet> shannon{make_set({0, 1, 4, 5}), make_set({0, 1, 2, 3}), make_set({2, 3, 4, 5})};
    for (ElementSet x : shannon) CHECK(d_value(shannon, x) == 2);
}

TEST_CASE("d_value agrees with the definition on random families") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<ElementSet> f;
        for (int i = 0; i < 6; ++i) {
            const ElementSet x = rng() & 0xFF;
            if (x && std::find(f.begin(), f.end(), x) == f.end()) f.push_back(x);
        }
        for (ElementSet x : f) {
            CHECK(d_value(f, x) == d_reference(f, x));
            CHECK(d_value(f, x) <= cardinality(x));
        }
    }
}

TEST_CASE("laminar check") {
    const auto iv = all_intervals(4);
    const LaminarCheck empty_l = laminar_check(iv, std::vector<int>(iv.size(), 0), 10);
    CHECK(empty_l.ok);
    CHECK(empty_l.members.empty());

    const LaminarCheck all_l = laminar_check(iv, size_minus(iv, 0), 2);
    CHECK(all_l.ok);
    CHECK_FALSE(all_l.members.empty());

    // Two crossing members of L without their union in the family.
    const std::vector<ElementSet> crossing{make_set({0, 1}), make_set({1, 2})};
    const LaminarCheck bad = laminar_check(crossing, std::vector<int>{2, 2}, 2);
    CHECK_FALSE(bad.ok);
    REQUIRE(bad.witness.has_value());
    CHECK(bad.witness->first == 0);
    CHECK(bad.witness->second == 1);
}

TEST_CASE("intersecting implies strongly triple-intersecting on random closed families") {
    std::mt19937_64 rng(11);
    int intersecting = 0;
    for (int trial = 0; trial < 400; ++trial) {
        std::vector<ElementSet> f;
        for (int i = 0; i < 4; ++i) {
            const ElementSet x = rng() & 0x1F;
            if (x && std::find(f.begin(), f.end(), x) == f.end()) f.push_back(x);
        }
        if (!is_intersecting_family(f)) continue;
        ++intersecting;
        CHECK(is_strongly_triple_intersecting_family(f));
    }
    CHECK(intersecting > 10);
}

TEST_CASE("star reduction") {
    SUBCASE("triangle") {
        const FamilyInstance f = from_graph_stars({named::triangle(), 3, {2, 2, 2}});
        CHECK(f.size() == 3);
        for (ElementSet x : f.sets) CHECK(cardinality(x) == 2);
        CHECK(f.g == std::vector<int>{2, 2, 2});
        CHECK(check_hypotheses(f).ok());
    }
    SUBCASE("twins merge with the larger demand") {
        const FamilyInstance f = from_graph_stars({Multigraph(2, {{0, 1}, {0, 1}}), 3, {1, 2}});
        REQUIRE(f.size() == 1);
        CHECK(f.g[0] == 2);
    }
    SUBCASE("edgeless") { CHECK(from_graph_stars({Multigraph(3, {}), 1, {0, 0, 0}}).size() == 0); }
    SUBCASE("invalid demand") {
        CHECK_THROWS_AS(from_graph_stars({named::triangle(), 2, {2, 2, 2}}), HypothesisViolation);
    }
}

TEST_CASE("make_instance validation") {
    CHECK_THROWS_AS(make_instance(3, 2, {make_set({0}), make_set({0})}, {1, 1}), InvalidInput);
    CHECK_THROWS_AS(make_instance(3, 2, {make_set({4})}, {1}), InvalidInput);
    CHECK_THROWS_AS(make_instance(3, 2, {make_set({0})}, {}), InvalidInput);
    CHECK_THROWS_AS(make_instance(3, 0, {}, {}), InvalidInput);
}

TEST_CASE("check_hypotheses names the bound violation") {
    const HypothesisReport r = check_hypotheses(make_instance(3, 2, {make_set({0, 1, 2})}, {3}));
    CHECK_FALSE(r.bounded);
    CHECK_FALSE(r.ok());
    CHECK_FALSE(r.messages.empty());
}

TEST_CASE("lexicographic order on element lists") {
    CHECK(lex_less(make_set({0, 3}), make_set({1})));
    CHECK(lex_less(make_set({0}), make_set({0, 1})));
    CHECK_FALSE(lex_less(make_set({2}), make_set({1, 5})));
}
