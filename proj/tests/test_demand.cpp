#include <string>
#include <vector>

#include "doctest.h"
#include "supercolor/demand_coloring.hpp"
#include "supercolor/errors.hpp"
#include "supercolor/oracle.hpp"

using namespace supercolor;
using demand::DemandInstance;

namespace {

DemandInstance uniform(const Multigraph& g, int k, int c) {
    return DemandInstance{g, k, std::vector<int>(static_cast<std::size_t>(g.vertex_count()), c)};
}

DemandInstance degree_demand(const Multigraph& g, int k) {
    DemandInstance inst{g, k, {}};
    for (VertexId v = 0; v < g.vertex_count(); ++v) inst.demand.push_back(g.degree(v));
    return inst;
}

} // namespace

TEST_CASE("validate") {
    CHECK(demand::validate(uniform(named::triangle(), 3, 2)).ok());

    const demand::Report bad = demand::validate(uniform(named::triangle(), 2, 2));
    CHECK_FALSE(bad.ok());
    CHECK(bad.edges.size() == 3);

    const demand::Report edge = demand::validate(uniform(named::path(1), 1, 1));
    CHECK_FALSE(edge.ok());
    CHECK(edge.edges == std::vector<EdgeId>{0});

    CHECK_FALSE(demand::validate(uniform(named::triangle(), 3, 3)).ok()); // c > deg
    CHECK_FALSE(demand::validate(uniform(named::triangle(), 1, 2)).ok()); // c > k
    CHECK_FALSE(demand::validate(DemandInstance{named::triangle(), 3, {1, 1}}).ok());
}

TEST_CASE("high-demand set") {
    const VertexSet s = demand::high_demand_set(DemandInstance{named::star(3), 2, {2, 1, 1, 1}});
    CHECK(s.members() == std::vector<VertexId>{0});
}

TEST_CASE("verify") {
    const Multigraph t = named::triangle();
    CHECK(demand::verify(uniform(t, 3, 0), EdgeColoring{{1, 1, 1}}).ok());
    const demand::Report r = demand::verify(uniform(t, 3, 2), EdgeColoring{{1, 1, 1}});
    CHECK(r.vertices == std::vector<VertexId>{0, 1, 2});
    CHECK(demand::verify(uniform(named::shannon_triangle(), 6, 4), EdgeColoring{{1, 2, 3, 4, 5, 6}}).ok());
    CHECK_THROWS_AS(demand::verify(uniform(t, 3, 2), EdgeColoring{{1, 2}}), InvalidInput);
    CHECK_THROWS_AS(demand::verify(uniform(t, 3, 2), EdgeColoring{{1, 2, 4}}), InvalidInput);
    CHECK_THROWS_AS(demand::verify(uniform(t, 3, 2), EdgeColoring{{1, 0, 2}}), InvalidInput);
}

TEST_CASE("oracle agrees on the hand fixtures before the solver is trusted") {
    CHECK(oracle::brute_force_edge(uniform(named::triangle(), 3, 2)).feasible);
    CHECK_FALSE(oracle::brute_force_edge(degree_demand(named::shannon_triangle(), 5)).feasible);
    CHECK(oracle::brute_force_edge(degree_demand(named::shannon_triangle(), 6)).feasible);
}

TEST_CASE("solve fixtures") {
    SUBCASE("edgeless") {
        const EdgeColoring c = demand::solve(uniform(Multigraph(4, {}), 2, 0));
        CHECK(c.colors.empty());
    }
    SUBCASE("shannon triangle, k = 6") {
        const auto inst = degree_demand(named::shannon_triangle(), 6);
        const EdgeColoring c = demand::solve(inst);
        CHECK(demand::verify(inst, c).ok());
        CHECK(is_proper(inst.graph, c));
    }
    SUBCASE("triangle, k = 3, c = 2") {
        const auto inst = uniform(named::triangle(), 3, 2);
        const EdgeColoring c = demand::solve(inst);
        for (VertexId v = 0; v < 3; ++v) CHECK(distinct_colors_at(inst.graph, c, v) >= 2);
    }
    SUBCASE("hypothesis violation") {
        CHECK_THROWS_AS(demand::solve(uniform(named::triangle(), 2, 2)), HypothesisViolation);
    }
}

TEST_CASE("augment: direct extension when y0 has slack") {
    const auto inst = uniform(named::path(2), 2, 1);
    demand::PartialEdgeColoring pc(inst.graph, inst.k);
    demand::SolveStats stats;
    demand::augment(inst, pc, 0, stats);
    CHECK(pc.colored_count() == 1);
    CHECK(stats.direct_extensions == 1);
}

TEST_CASE("augment from a hand-built partial coloring") {
    // Vertex 0 sees colors 1 and 2 on edges to 1 and 2; edge 2 = {0,3} is new.
    const Multigraph g(4, {{0, 1}, {0, 2}, {0, 3}, {3, 1}});
    const DemandInstance ok_inst{g, 3, {2, 1, 1, 2}};
    REQUIRE(demand::validate(ok_inst).ok());
    demand::PartialEdgeColoring pc(g, 3);
    pc.set(0, 1);
    pc.set(1, 2);
    pc.set(3, 1);
    demand::SolveStats stats;
    demand::augment(ok_inst, pc, 2, stats);
    CHECK(pc.colored_count() == 4);
    CHECK(demand::verify(ok_inst, pc.to_total()).ok());
}

TEST_CASE("vizing coloring") {
    CHECK(demand::vizing_color(named::path(1)).colors_used() == 1);
    const Multigraph p = named::petersen();
    const EdgeColoring c = demand::vizing_color(p);
    CHECK(is_proper(p, c));
    CHECK(c.colors_used() <= 4);
    const EdgeColoring s = demand::vizing_color(named::shannon_triangle());
    CHECK(is_proper(named::shannon_triangle(), s));
    CHECK(s.colors_used() <= 6);
}

TEST_CASE("gupta on stable high-degree sets") {
    const EdgeColoring t = demand::gupta_stable_color(named::triangle(), 3);
    for (VertexId v = 0; v < 3; ++v) CHECK(distinct_colors_at(named::triangle(), t, v) >= 2);

    const Multigraph star = named::star(3);
    const EdgeColoring s = demand::gupta_stable_color(star, 2);
    CHECK(distinct_colors_at(star, s, 0) >= 2);

    CHECK_THROWS_AS(demand::gupta_stable_color(named::path(1), 1), HypothesisViolation);
}

TEST_CASE("random valid instances solve, verify and keep the restart bound") {
    demand::SolveStats stats;
    int solved = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const int n = 2 + static_cast<int>(seed % 6);
        const int m = static_cast<int>(seed % 13);
        const int mult = 1 + static_cast<int>(seed % 3);
        if (m > n * (n - 1) / 2 * mult) continue;
        const Multigraph g = oracle::gen_multigraph(n, m, mult, seed);
        const int k = std::max(1, graph_multiplicity(g)) + static_cast<int>(seed % 4);
        const DemandInstance inst = oracle::gen_demand(g, k, seed * 7);
        REQUIRE(demand::validate(inst).ok());
        const EdgeColoring c = demand::solve(inst, {}, &stats);
        CHECK(demand::verify(inst, c).ok());
        ++solved;
    }
    CHECK(solved > 150);
    CHECK(stats.max_restarts_in_one_augmentation <= 1);
    CHECK(stats.invariant_checks > 0);
}

TEST_CASE("trace emits one JSON object per line") {
    std::vector<std::string> lines;
    demand::SolveOptions options;
    options.trace = [&](std::string_view s) { lines.emplace_back(s); };
    demand::solve(degree_demand(named::shannon_triangle(), 6), options);
    REQUIRE_FALSE(lines.empty());
    for (const auto& l : lines) CHECK(l.front() == '{');
}

TEST_CASE("solve is deterministic") {
    const Multigraph g = oracle::gen_multigraph(7, 16, 3, 99);
    const auto inst = degree_demand(g, max_degree(g) + graph_multiplicity(g));
    CHECK(demand::solve(inst).colors == demand::solve(inst).colors);
}

TEST_CASE("augment: saturated pivot with an empty fan takes alpha_1") {
    const Multigraph g(4, {{0, 1}, {0, 2}, {0, 3}});
    const DemandInstance inst{g, 2, {2, 0, 0, 1}};
    REQUIRE(demand::validate(inst).ok());
    demand::PartialEdgeColoring pc(g, 2);
    pc.set(0, 1);
    pc.set(1, 2);
    demand::SolveStats stats;
    demand::augment(inst, pc, 2, stats);
    CHECK(stats.saturated_pivot == 1);
    CHECK(pc.color(2) == 1);
}
