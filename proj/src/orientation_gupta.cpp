#include "supercolor/orientation_gupta.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <string>

#include "supercolor/errors.hpp"

namespace supercolor::orientation {

int OrientationState::out_degree(VertexId v) const {
    int n = 0;
    for (EdgeId e : graph.incident(v))
        if (tail[static_cast<std::size_t>(e)] == v) ++n;
    return n;
}

int OrientationState::in_degree(VertexId v) const {
    int n = 0;
    for (EdgeId e : graph.incident(v))
        if (head[static_cast<std::size_t>(e)] == v) ++n;
    return n;
}

std::vector<bool> OrientationState::oriented_mask() const {
    std::vector<bool> mask(tail.size());
    for (std::size_t e = 0; e < tail.size(); ++e) mask[e] = tail[e] >= 0;
    return mask;
}

namespace {

int out_degree_target(const Multigraph& g, int k, VertexId v) {
    return std::min(g.degree(v) - k, g.multiplicity_at(v));
}

/// A closed or open walk of undirected active edges, listed in the direction
/// it will be oriented: edge i goes from vertices[i] to vertices[i + 1].
struct Walk {
    std::vector<VertexId> vertices;
    std::vector<EdgeId> edges;
};

class Orienter {
public:
    Orienter(const Multigraph& g, OrientationState& st) : g_(g), st_(st) {}

    bool usable(EdgeId e) const {
        if (st_.is_oriented(e)) return false;
        const Edge& ed = g_.edge(e);
        return st_.active.contains(ed.a) && st_.active.contains(ed.b);
    }

    bool any_usable() const {
        for (EdgeId e = 0; e < g_.edge_count(); ++e)
            if (usable(e)) return true;
        return false;
    }

    // Depth-first search over usable edges; the first non-tree edge closes a
    // simple cycle along the current DFS stack.
    std::optional<Walk> find_cycle() const {
        const auto n = static_cast<std::size_t>(g_.vertex_count());
        std::vector<int> state(n, 0); // 0 new, 1 on stack, 2 done
        std::vector<VertexId> stack;
        std::vector<EdgeId> stack_edges;
        std::optional<Walk> found;

        std::function<void(VertexId, EdgeId)> dfs = [&](VertexId u, EdgeId via) {
            state[static_cast<std::size_t>(u)] = 1;
            stack.push_back(u);
            for (EdgeId e : g_.incident(u)) {
                if (found) return;
                if (e == via || !usable(e)) continue;
                const VertexId w = g_.other_end(e, u);
                if (state[static_cast<std::size_t>(w)] == 1) {
                    Walk cyc;
                    auto it = std::find(stack.begin(), stack.end(), w);
                    const auto start = static_cast<std::size_t>(it - stack.begin());
                    cyc.vertices.assign(it, stack.end());
                    cyc.edges.assign(stack_edges.begin() + static_cast<std::ptrdiff_t>(start), stack_edges.end());
                    cyc.edges.push_back(e);
                    cyc.vertices.push_back(w);
                    found = std::move(cyc);
                    return;
                }
                if (state[static_cast<std::size_t>(w)] == 0) {
                    stack_edges.push_back(e);
                    dfs(w, e);
                    if (found) return;
                    stack_edges.pop_back();
                }
            }
            stack.pop_back();
            state[static_cast<std::size_t>(u)] = 2;
        };

        for (VertexId v = 0; v < g_.vertex_count() && !found; ++v) {
            if (!st_.active.contains(v) || state[static_cast<std::size_t>(v)] != 0) continue;
            stack.clear();
            stack_edges.clear();
            dfs(v, -1);
        }
        return found;
    }

    // Usable edges form a forest here: grow a path from the lowest usable edge
    // in both directions until each end has no further usable edge.
    Walk find_path() const {
        EdgeId seed = 0;
        while (!usable(seed)) ++seed;
        std::vector<bool> on_path(static_cast<std::size_t>(g_.vertex_count()), false);
        std::vector<bool> used(static_cast<std::size_t>(g_.edge_count()), false);
        const Edge& s = g_.edge(seed);
        on_path[static_cast<std::size_t>(s.a)] = on_path[static_cast<std::size_t>(s.b)] = true;
        used[static_cast<std::size_t>(seed)] = true;

        auto grow = [&](VertexId end, std::vector<VertexId>& verts, std::vector<EdgeId>& edges) {
            for (;;) {
                EdgeId next = -1;
                for (EdgeId e : g_.incident(end))
                    if (!used[static_cast<std::size_t>(e)] && usable(e) &&
                        !on_path[static_cast<std::size_t>(g_.other_end(e, end))]) {
                        next = e;
                        break;
                    }
                if (next < 0) return;
                used[static_cast<std::size_t>(next)] = true;
                end = g_.other_end(next, end);
                on_path[static_cast<std::size_t>(end)] = true;
                verts.push_back(end);
                edges.push_back(next);
            }
        };
        std::vector<VertexId> back_v, front_v;
        std::vector<EdgeId> back_e, front_e;
        grow(s.a, back_v, back_e);
        grow(s.b, front_v, front_e);

        Walk path;
        path.vertices.assign(back_v.rbegin(), back_v.rend());
        path.vertices.push_back(s.a);
        path.vertices.push_back(s.b);
        path.vertices.insert(path.vertices.end(), front_v.begin(), front_v.end());
        path.edges.assign(back_e.rbegin(), back_e.rend());
        path.edges.push_back(seed);
        path.edges.insert(path.edges.end(), front_e.begin(), front_e.end());

        for (VertexId end : {path.vertices.front(), path.vertices.back()})
            for (EdgeId e : g_.incident(end))
                SUPERCOLOR_CLAIM(!usable(e) || used[static_cast<std::size_t>(e)], "path-endpoint",
                                 "endpoint " + std::to_string(end) + " still has undirected active edge " +
                                     std::to_string(e));
        return path;
    }

    void orient(const Walk& w) {
        for (std::size_t i = 0; i < w.edges.size(); ++i) {
            const auto e = static_cast<std::size_t>(w.edges[i]);
            st_.tail[e] = w.vertices[i];
            st_.head[e] = w.vertices[i + 1];
        }
        st_.rounds.push_back(w.edges);
    }

private:
    const Multigraph& g_;
    OrientationState& st_;
};

} // namespace

OrientationState orient_edges(const Multigraph& g, int k) {
    if (k < 1) throw InvalidInput("k must be positive");
    OrientationState st;
    st.graph = g;
    st.k = k;
    st.tail.assign(static_cast<std::size_t>(g.edge_count()), -1);
    st.head.assign(static_cast<std::size_t>(g.edge_count()), -1);
    st.active = VertexSet(g.vertex_count());
    st.removal_round.assign(static_cast<std::size_t>(g.vertex_count()), -1);
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) >= k + 1) st.active.insert(v);
    st.initial_active = st.active;

    Orienter orienter(st.graph, st);
    for (int round = 0; orienter.any_usable(); ++round) {
        if (auto cycle = orienter.find_cycle())
            orienter.orient(*cycle);
        else
            orienter.orient(orienter.find_path());

        for (VertexId v : st.active.members()) {
            const int out = st.out_degree(v);
            const int target = out_degree_target(g, k, v);
            SUPERCOLOR_CLAIM(out <= target, "out-degree-bound",
                             "vertex " + std::to_string(v) + " has out-degree " + std::to_string(out) + " > " +
                                 std::to_string(target));
            if (out == target) {
                st.active.erase(v);
                st.removal_round[static_cast<std::size_t>(v)] = round;
            }
        }
    }
    return st;
}

Reduction build_demands(const OrientationState& state) {
    const Multigraph& g = state.graph;
    const int k = state.k;
    Reduction red;
    red.h = induced_undirected_subgraph(g, state.oriented_mask(), VertexSet::all(g.vertex_count()));
    red.instance.graph = red.h.graph;
    red.instance.k = k;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const int deg = g.degree(v);
        const int mu = g.multiplicity_at(v);
        const int c = deg <= k ? std::min(deg, k - mu) : std::min(deg - mu, k) - state.in_degree(v);
        // Kept negative: clamping to 0 can put v into S next to another S vertex.
        if (c < 0) ++red.negative_demand_vertices;
        red.instance.demand.push_back(c);
    }
    return red;
}

EdgeColoring gupta_general_color(const Multigraph& g, int k, GuptaStats* stats,
                                 const demand::SolveOptions& options) {
    GuptaStats local;
    GuptaStats& st = stats ? *stats : local;

    const OrientationState orient = orient_edges(g, k);
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (orient.removal_round[static_cast<std::size_t>(v)] >= 0)
            SUPERCOLOR_CLAIM(orient.out_degree(v) == out_degree_target(g, k, v), "removed-out-degree",
                             "vertex " + std::to_string(v) + " left the active set with the wrong out-degree");
    st.rounds += static_cast<int>(orient.rounds.size());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (!orient.is_oriented(e)) continue;
        ++st.oriented_edges;
        const Edge& ed = g.edge(e);
        SUPERCOLOR_CLAIM(orient.initial_active.contains(ed.a) && orient.initial_active.contains(ed.b),
                         "orientation-scope", "edge " + std::to_string(e) + " oriented outside the high-degree set");
    }

    const Reduction red = build_demands(orient);
    st.negative_demand_vertices += red.negative_demand_vertices;
    ++st.precondition_checks;
    if (const demand::Report r = demand::validate(red.instance); !r.ok())
        throw InternalAssertion("reduction-hypotheses", r.messages.front());

    const EdgeColoring h_colors = demand::solve(red.instance, options, &st.demand);

    demand::PartialEdgeColoring pc(g, k);
    for (std::size_t i = 0; i < red.h.parent_edge.size(); ++i)
        pc.set(red.h.parent_edge[i], h_colors.colors[i]);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (!orient.is_oriented(e)) continue;
        const VertexId head = orient.head[static_cast<std::size_t>(e)];
        const int before = pc.distinct(head);
        Color c = pc.lowest_missing(head);
        if (c == kUncolored) c = 1;
        pc.set(e, c);
        SUPERCOLOR_CLAIM(pc.distinct(head) >= before, "sweep-monotone", "directed sweep lost a color");
    }
    EdgeColoring out = pc.to_total();
    if (const demand::Report r = verify_gupta(g, k, out); !r.ok())
        throw InternalAssertion("output", r.messages.front());
    return out;
}

demand::Report verify_gupta(const Multigraph& g, int k, const EdgeColoring& coloring) {
    if (static_cast<int>(coloring.colors.size()) != g.edge_count())
        throw InvalidInput("coloring has " + std::to_string(coloring.colors.size()) + " entries for " +
                           std::to_string(g.edge_count()) + " edges");
    for (std::size_t e = 0; e < coloring.colors.size(); ++e)
        if (coloring.colors[e] < 1 || coloring.colors[e] > k)
            throw InvalidInput("edge " + std::to_string(e) + " has color " + std::to_string(coloring.colors[e]) +
                               " outside 1.." + std::to_string(k));
    demand::Report r;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const int deg = g.degree(v);
        const int mu = g.multiplicity_at(v);
        const int have = distinct_colors_at(g, coloring, v);
        int need = 0;
        if (deg <= k) need = std::max(need, std::min(deg, k - mu));
        if (deg >= k) need = std::max(need, std::min(deg - mu, k));
        if (have < need) {
            r.messages.push_back("vertex " + std::to_string(v) + " sees " + std::to_string(have) +
                                 " colors, needs " + std::to_string(need));
            r.vertices.push_back(v);
        }
    }
    return r;
}

} // namespace supercolor::orientation
