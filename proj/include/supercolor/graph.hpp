#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace supercolor {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;

/// Colors are 1-based; 0 marks an uncolored edge or unassigned element.
using Color = std::int32_t;
inline constexpr Color kUncolored = 0;

struct Edge {
    VertexId a;
    VertexId b;
};

/// Membership bitmask over dense vertex ids.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(int universe);
    VertexSet(int universe, std::initializer_list<VertexId> members);

    int universe() const noexcept { return universe_; }
    bool contains(VertexId v) const;
    void insert(VertexId v);
    void erase(VertexId v);
    int size() const noexcept;
    bool empty() const noexcept { return size() == 0; }
    std::vector<VertexId> members() const;

    static VertexSet all(int universe);

    friend bool operator==(const VertexSet&, const VertexSet&) = default;

private:
    int universe_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Loopless multigraph with stable edge ids 0..m-1. Parallel edges are
/// distinct objects. Immutable after construction.
class Multigraph {
public:
    Multigraph() = default;
    Multigraph(int vertex_count, std::vector<Edge> edges);

    int vertex_count() const noexcept { return vertex_count_; }
    int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const Edge& edge(EdgeId e) const;

    /// Edges incident to v in ascending id order.
    std::span<const EdgeId> incident(VertexId v) const;

    /// Endpoint of e other than v.
    VertexId other_end(EdgeId e, VertexId v) const;

    bool valid_vertex(VertexId v) const noexcept { return v >= 0 && v < vertex_count_; }

    int degree(VertexId v) const;
    int multiplicity_at(VertexId v) const;
    /// Number of edges joining u and v.
    int edges_between(VertexId u, VertexId v) const;

private:
    int vertex_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeId>> incidence_;
    std::vector<int> multiplicity_;
};

int degree(const Multigraph& g, VertexId v);
int multiplicity_at(const Multigraph& g, VertexId v);
int graph_multiplicity(const Multigraph& g);
int max_degree(const Multigraph& g);
bool is_stable(const Multigraph& g, const VertexSet& s);

/// Edge-induced piece of a parent graph. Vertex ids are shared with the
/// parent; local edge i is parent edge parent_edge[i].
struct EdgeSubgraph {
    Multigraph graph;
    std::vector<EdgeId> parent_edge;
};

/// Non-oriented edges of g with both endpoints in w. `oriented` is indexed by
/// parent edge id (empty means nothing is oriented).
EdgeSubgraph induced_undirected_subgraph(const Multigraph& g, const std::vector<bool>& oriented,
                                         const VertexSet& w);

// Named graphs used by tests, the acceptance suite and the CLI generator.
namespace named {
Multigraph triangle();
/// Three vertices, two parallel edges per pair: chromatic index 6 = Δ + μ.
Multigraph shannon_triangle();
Multigraph petersen();
Multigraph path(int edges);
Multigraph star(int leaves);
} // namespace named

} // namespace supercolor
