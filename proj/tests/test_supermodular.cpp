#include <algorithm>
#include <string>

#include "doctest.h"
#include "supercolor/errors.hpp"
#include "supercolor/oracle.hpp"
#include "supercolor/supermodular_coloring.hpp"

using namespace supercolor;
using namespace supercolor::supermodular;
using family::make_instance;
using family::make_set;

namespace {

PartialAssignment assignment(std::initializer_list<Color> colors) {
    PartialAssignment pa;
    pa.color = colors;
    return pa;
}

} // namespace

TEST_CASE("f_value") {
    CHECK(f_value(make_set({0, 1, 2}), PartialAssignment(3)) == 3);
    CHECK(f_value(make_set({0, 1, 2}), assignment({1, 1, 0})) == 2);
    CHECK(f_value(make_set({2}), assignment({1, 1, 0})) == 1);
    CHECK(distinct_colors(make_set({0, 1, 2}), assignment({1, 2, 2})) == 2);
}

TEST_CASE("satisfying and tight") {
    CHECK(is_satisfying(make_set({0}), 0, assignment({1})));
    CHECK(is_satisfying(make_set({0}), -3, assignment({1})));
    CHECK(is_tight(make_set({0, 1}), 2, assignment({1, 0})));
    CHECK(is_tight(make_set({0, 1}), 2, assignment({1, 2})));
    CHECK_FALSE(is_satisfying(make_set({0, 1}), 2, assignment({1, 1})));
}

TEST_CASE("maximal tight sets containing an element") {
    const auto inst = make_instance(3, 3, {make_set({0, 1}), make_set({1, 2}), make_set({1})}, {2, 2, 1});
    // With nothing assigned, f(X) = |X|, so {0, 1} is already tight at g = 2.
    CHECK(maximal_tight_containing(inst, assignment({0, 0, 0}), 0) == std::vector<int>{0});
    CHECK(maximal_tight_containing(inst, assignment({1, 0, 0}), 0) == std::vector<int>{0});
    const auto loose = make_instance(3, 3, {make_set({0, 1})}, {1});
    CHECK(maximal_tight_containing(loose, assignment({0, 0, 0}), 0).empty());
    CHECK(maximal_tight_containing(inst, assignment({1, 0, 1}), 1) == std::vector<int>{0, 1});
}

TEST_CASE("oracle verdicts on the fixtures") {
    const auto interval = make_instance(3, 3, {make_set({0, 1}), make_set({1, 2}), make_set({0, 1, 2})}, {2, 2, 3});
    CHECK(oracle::brute_force_family(interval).feasible);
    auto tight = interval;
    tight.k = 2;
    CHECK_FALSE(oracle::brute_force_family(tight).feasible);
    CHECK(oracle::brute_force_family(make_instance(4, 2, {}, {})).feasible);
}

TEST_CASE("solve fixtures") {
    SUBCASE("empty family") {
        CHECK(solve(make_instance(4, 2, {}, {})) == std::vector<Color>{1, 1, 1, 1});
    }
    SUBCASE("triangle stars") {
        const auto inst = family::from_graph_stars({named::triangle(), 3, {2, 2, 2}});
        CHECK(verify(inst, solve(inst)).empty());
    }
    SUBCASE("interval instance is colored bijectively") {
        const auto inst =
            make_instance(3, 3, {make_set({0, 1}), make_set({1, 2}), make_set({0, 1, 2})}, {2, 2, 3});
        auto colors = solve(inst);
        CHECK(verify(inst, colors).empty());
        std::sort(colors.begin(), colors.end());
        CHECK(colors == std::vector<Color>{1, 2, 3});
    }
    SUBCASE("hypothesis violation names the failing bound") {
        const auto inst =
            make_instance(3, 2, {make_set({0, 1}), make_set({1, 2}), make_set({0, 1, 2})}, {2, 2, 3});
        try {
            solve(inst);
            FAIL("expected HypothesisViolation");
        } catch (const HypothesisViolation& e) {
            CHECK(std::string(e.what()).find("exceeds min") != std::string::npos);
        }
    }
    SUBCASE("non-triple-intersecting family") {
        const auto inst = make_instance(5, 3, {make_set({1, 2}), make_set({1, 3}), make_set({1, 4})}, {1, 1, 1});
        CHECK_THROWS_AS(solve(inst), HypothesisViolation);
    }
}

TEST_CASE("verify") {
    const auto inst = make_instance(3, 3, {make_set({0, 1}), make_set({1, 2}), make_set({0, 1, 2})}, {2, 2, 3});
    CHECK(verify(inst, {1, 1, 1}) == std::vector<int>{0, 1, 2});
    CHECK(verify(make_instance(2, 2, {make_set({0, 1})}, {0}), {1, 1}).empty());
    CHECK_THROWS_AS(verify(inst, {1, 2}), InvalidInput);
    CHECK_THROWS_AS(verify(inst, {1, 2, 0}), InvalidInput);
}

TEST_CASE("augment paths") {
    SUBCASE("no tight set: color 1") {
        const auto inst = make_instance(2, 2, {make_set({0, 1})}, {1});
        PartialAssignment pa(2);
        SolveStats stats;
        augment(inst, pa, 0, stats);
        CHECK(pa.color[0] == 1);
        CHECK(stats.empty_tight_family == 1);
    }
    SUBCASE("unique maximal tight set: a color it lacks") {
        const auto inst = make_instance(2, 2, {make_set({0, 1})}, {2});
        PartialAssignment pa(2);
        pa.color[1] = 1;
        SolveStats stats;
        augment(inst, pa, 0, stats);
        CHECK(pa.color[0] == 2);
        CHECK(stats.unique_maximal == 1);
    }
    SUBCASE("already assigned element is rejected") {
        const auto inst = make_instance(1, 1, {}, {});
        PartialAssignment pa(1);
        pa.color[0] = 1;
        SolveStats stats;
        CHECK_THROWS_AS(augment(inst, pa, 0, stats), InternalAssertion);
    }
}

TEST_CASE("bicolor chain") {
    SUBCASE("swap breaks nothing") {
        const auto inst = make_instance(2, 2, {}, {});
        SolveStats stats;
        const BicolorChain c = bicolor_chain(inst, assignment({2, 1}), make_set({1}), 0, 1, 2, stats);
        CHECK(c.elements == std::vector<int>{0});
        CHECK(c.witnesses.empty());
        CHECK_FALSE(c.exit.has_value());
    }
    SUBCASE("chain runs into the anchor") {
        const auto inst = make_instance(2, 2, {make_set({0, 1})}, {2});
        SolveStats stats;
        const BicolorChain c = bicolor_chain(inst, assignment({2, 1}), make_set({1}), 0, 1, 2, stats);
        CHECK(c.elements == std::vector<int>{0});
        CHECK(c.witnesses == std::vector<int>{0});
        REQUIRE(c.exit.has_value());
        CHECK(*c.exit == 1);
    }
    SUBCASE("x0 must carry beta") {
        const auto inst = make_instance(2, 2, {}, {});
        SolveStats stats;
        CHECK_THROWS_AS(bicolor_chain(inst, assignment({1, 1}), make_set({1}), 0, 1, 2, stats), InternalAssertion);
    }
}

TEST_CASE("generated instances of every shape solve and agree with the oracle") {
    SolveStats stats;
    int runs = 0;
    for (auto shape : {oracle::FamilyShape::stars, oracle::FamilyShape::intervals, oracle::FamilyShape::laminar,
                       oracle::FamilyShape::random_filtered}) {
        for (std::uint64_t seed = 1; seed <= 40; ++seed) {
            const int ground = 2 + static_cast<int>(seed % 8);
            const int k = 1 + static_cast<int>(seed % 4);
            const auto inst = oracle::gen_family(ground, k, shape, seed);
            const auto colors = solve(inst, {}, &stats);
            CHECK(verify(inst, colors).empty());
            CHECK(oracle::brute_force_family(inst).feasible);
            ++runs;
        }
    }
    CHECK(runs == 160);
    CHECK(stats.max_restarts_in_one_augmentation <= 1);
    CHECK(stats.color_bound_checks + stats.unique_maximal + stats.empty_tight_family > 0);
}

TEST_CASE("trace and step budget") {
    const auto inst = oracle::gen_family(8, 3, oracle::FamilyShape::intervals, 3);
    std::vector<std::string> lines;
    SolveOptions options;
    options.trace = [&](std::string_view s) { lines.emplace_back(s); };
    solve(inst, options);
    CHECK(lines.size() >= 8);

    SolveOptions starved;
    starved.step_budget = 1;
    CHECK_THROWS_AS(solve(inst, starved), BudgetExceeded);
}

TEST_CASE("solve is deterministic") {
    const auto inst = oracle::gen_family(9, 4, oracle::FamilyShape::random_filtered, 17);
    CHECK(solve(inst) == solve(inst));
}

TEST_CASE("crowded star families reach restarts and both chain finishes") {
    SolveStats stats;
    int solved = 0;
    for (std::uint64_t seed = 1; seed <= 1500; ++seed) {
        const int n = 4 + static_cast<int>(seed % 5);
        const int mult = 1 + static_cast<int>(seed % 3);
        const int m = std::min(n * (n - 1) / 2 * mult, 8 + static_cast<int>(seed % 20));
        const Multigraph g = oracle::gen_multigraph(n, m, mult, seed);
        for (int k = std::max(1, max_degree(g) - 1); k <= max_degree(g) + graph_multiplicity(g); ++k) {
            demand::DemandInstance d{g, k, {}};
            for (VertexId v = 0; v < n; ++v) d.demand.push_back(std::min(g.degree(v), k));
            if (!demand::validate(d).ok()) continue;
            const auto inst = family::from_graph_stars(d);
            CHECK(verify(inst, solve(inst, {}, &stats)).empty());
            ++solved;
        }
    }
    CHECK(solved > 1000);
    CHECK(stats.restarts > 0);
    CHECK(stats.max_restarts_in_one_augmentation == 1);
    CHECK(stats.spare_color_finishes > 0);
    CHECK(stats.chain_clean_finishes > 0);
    CHECK(stats.chain_exit_finishes > 0);
    CHECK(stats.longest_chain >= 3);
}
