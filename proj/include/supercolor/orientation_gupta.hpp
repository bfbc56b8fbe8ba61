#pragma once

#include <vector>

#include "supercolor/demand_coloring.hpp"
#include "supercolor/graph.hpp"

namespace supercolor::orientation {

/// Orientation produced for the general Gupta reduction.
struct OrientationState {
    Multigraph graph;
    int k = 1;
    /// Per edge: -1 when undirected, otherwise the tail / head vertex.
    std::vector<VertexId> tail;
    std::vector<VertexId> head;
    /// High-degree vertices at the start (deg > k) and those still active at the end.
    VertexSet initial_active;
    VertexSet active;
    /// Round in which a vertex left the active set, -1 if it never did.
    std::vector<int> removal_round;
    /// Edge sequences oriented in each round, in orientation direction.
    std::vector<std::vector<EdgeId>> rounds;

    bool is_oriented(EdgeId e) const { return tail[static_cast<std::size_t>(e)] >= 0; }
    int out_degree(VertexId v) const;
    int in_degree(VertexId v) const;
    std::vector<bool> oriented_mask() const;
};

/// Repeatedly orients a cycle, or a maximal path, of undirected edges among
/// the active vertices, dropping each vertex v once its out-degree reaches
/// min{deg(v) - k, μ(v)}.
OrientationState orient_edges(const Multigraph& g, int k);

struct Reduction {
    /// Undirected remainder H; local edge i is edge h.parent_edge[i] of G.
    EdgeSubgraph h;
    demand::DemandInstance instance;
    int negative_demand_vertices = 0;
};

/// Demand instance on H:
///   c(v) = min{deg(v), k - μ(v)}              if deg(v) <= k,
///   c(v) = min{deg(v) - μ(v), k} - indeg(v)   if deg(v) >= k + 1,
/// with degrees and μ taken in G. Negative values are left as they are.
Reduction build_demands(const OrientationState& state);

struct GuptaStats {
    int oriented_edges = 0;
    int rounds = 0;
    int negative_demand_vertices = 0;
    long precondition_checks = 0;
    demand::SolveStats demand;
};

/// Coloring with, for every v,
///   deg(v) <= k  =>  |π(δ(v))| >= min{deg(v), k - μ(v)},
///   deg(v) >= k  =>  |π(δ(v))| >= min{deg(v) - μ(v), k}.
EdgeColoring gupta_general_color(const Multigraph& g, int k, GuptaStats* stats = nullptr,
                                 const demand::SolveOptions& options = {});

/// Checks both conditions above. Throws InvalidInput on a partial or
/// ill-ranged coloring.
demand::Report verify_gupta(const Multigraph& g, int k, const EdgeColoring& coloring);

} // namespace supercolor::orientation
