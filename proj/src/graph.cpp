#include "supercolor/graph.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <string>

#include "supercolor/errors.hpp"

namespace supercolor {

VertexSet::VertexSet(int universe)
    : universe_(universe), words_((static_cast<std::size_t>(universe) + 63) / 64, 0) {
    if (universe < 0) throw InvalidInput("negative vertex set universe");
}

VertexSet::VertexSet(int universe, std::initializer_list<VertexId> members) : VertexSet(universe) {
    for (VertexId v : members) insert(v);
}

VertexSet VertexSet::all(int universe) {
    VertexSet s(universe);
    for (VertexId v = 0; v < universe; ++v) s.insert(v);
    return s;
}

bool VertexSet::contains(VertexId v) const {
    if (v < 0 || v >= universe_) return false;
    return (words_[static_cast<std::size_t>(v) / 64] >> (v % 64)) & 1U;
}

void VertexSet::insert(VertexId v) {
    if (v < 0 || v >= universe_) throw InvalidInput("vertex " + std::to_string(v) + " outside set universe");
    words_[static_cast<std::size_t>(v) / 64] |= std::uint64_t{1} << (v % 64);
}

void VertexSet::erase(VertexId v) {
    if (v < 0 || v >= universe_) return;
    words_[static_cast<std::size_t>(v) / 64] &= ~(std::uint64_t{1} << (v % 64));
}

int VertexSet::size() const noexcept {
    int n = 0;
    for (auto w : words_) n += std::popcount(w);
    return n;
}

std::vector<VertexId> VertexSet::members() const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < universe_; ++v)
        if (contains(v)) out.push_back(v);
    return out;
}

Multigraph::Multigraph(int vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
    if (vertex_count < 0) throw InvalidInput("negative vertex count");
    incidence_.resize(static_cast<std::size_t>(vertex_count));
    for (EdgeId e = 0; e < edge_count(); ++e) {
        const auto [a, b] = edges_[static_cast<std::size_t>(e)];
        if (!valid_vertex(a) || !valid_vertex(b))
            throw InvalidInput("edge " + std::to_string(e) + " has an endpoint outside 0.." +
                               std::to_string(vertex_count - 1));
        if (a == b) throw InvalidInput("edge " + std::to_string(e) + " is a self-loop at vertex " + std::to_string(a));
        incidence_[static_cast<std::size_t>(a)].push_back(e);
        incidence_[static_cast<std::size_t>(b)].push_back(e);
    }
    multiplicity_.assign(static_cast<std::size_t>(vertex_count), 0);
    for (VertexId v = 0; v < vertex_count; ++v) {
        std::map<VertexId, int> per_neighbor;
        for (EdgeId e : incidence_[static_cast<std::size_t>(v)]) ++per_neighbor[other_end(e, v)];
        for (const auto& [u, count] : per_neighbor)
            multiplicity_[static_cast<std::size_t>(v)] = std::max(multiplicity_[static_cast<std::size_t>(v)], count);
    }
}

const Edge& Multigraph::edge(EdgeId e) const {
    if (e < 0 || e >= edge_count()) throw InvalidInput("edge id " + std::to_string(e) + " out of range");
    return edges_[static_cast<std::size_t>(e)];
}

std::span<const EdgeId> Multigraph::incident(VertexId v) const {
    if (!valid_vertex(v)) throw InvalidInput("vertex id " + std::to_string(v) + " out of range");
    return incidence_[static_cast<std::size_t>(v)];
}

VertexId Multigraph::other_end(EdgeId e, VertexId v) const {
    const Edge& ed = edge(e);
    return ed.a == v ? ed.b : ed.a;
}

int Multigraph::degree(VertexId v) const { return static_cast<int>(incident(v).size()); }

int Multigraph::multiplicity_at(VertexId v) const {
    if (!valid_vertex(v)) throw InvalidInput("vertex id " + std::to_string(v) + " out of range");
    return multiplicity_[static_cast<std::size_t>(v)];
}

int Multigraph::edges_between(VertexId u, VertexId v) const {
    int n = 0;
    for (EdgeId e : incident(u))
        if (other_end(e, u) == v) ++n;
    return n;
}

int degree(const Multigraph& g, VertexId v) { return g.degree(v); }

int multiplicity_at(const Multigraph& g, VertexId v) { return g.multiplicity_at(v); }

int graph_multiplicity(const Multigraph& g) {
    int mu = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) mu = std::max(mu, g.multiplicity_at(v));
    return mu;
}

int max_degree(const Multigraph& g) {
    int delta = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) delta = std::max(delta, g.degree(v));
    return delta;
}

bool is_stable(const Multigraph& g, const VertexSet& s) {
    return std::none_of(g.edges().begin(), g.edges().end(),
                        [&](const Edge& e) { return s.contains(e.a) && s.contains(e.b); });
}

EdgeSubgraph induced_undirected_subgraph(const Multigraph& g, const std::vector<bool>& oriented, const VertexSet& w) {
    if (!oriented.empty() && static_cast<int>(oriented.size()) != g.edge_count())
        throw InvalidInput("orientation mask size does not match edge count");
    EdgeSubgraph out;
    std::vector<Edge> kept;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (!oriented.empty() && oriented[static_cast<std::size_t>(e)]) continue;
        const Edge& ed = g.edge(e);
        if (!w.contains(ed.a) || !w.contains(ed.b)) continue;
        kept.push_back(ed);
        out.parent_edge.push_back(e);
    }
    out.graph = Multigraph(g.vertex_count(), std::move(kept));
    return out;
}

namespace named {

Multigraph triangle() { return Multigraph(3, {{0, 1}, {1, 2}, {0, 2}}); }

Multigraph shannon_triangle() {
    return Multigraph(3, {{0, 1}, {0, 1}, {1, 2}, {1, 2}, {0, 2}, {0, 2}});
}

Multigraph petersen() {
    std::vector<Edge> edges;
    for (VertexId i = 0; i < 5; ++i) {
        edges.push_back({i, (i + 1) % 5});         // outer cycle
        edges.push_back({i, i + 5});               // spokes
        edges.push_back({i + 5, (i + 2) % 5 + 5}); // inner pentagram
    }
    return Multigraph(10, std::move(edges));
}

Multigraph path(int edges) {
    std::vector<Edge> es;
    for (VertexId i = 0; i < edges; ++i) es.push_back({i, i + 1});
    return Multigraph(edges + 1, std::move(es));
}

Multigraph star(int leaves) {
    std::vector<Edge> es;
    for (VertexId i = 1; i <= leaves; ++i) es.push_back({0, i});
    return Multigraph(leaves + 1, std::move(es));
}

} // namespace named

} // namespace supercolor
