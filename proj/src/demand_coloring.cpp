#include "supercolor/demand_coloring.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"
#include "supercolor/errors.hpp"

namespace supercolor {

int EdgeColoring::colors_used() const {
    std::set<Color> used(colors.begin(), colors.end());
    return static_cast<int>(used.size());
}

int distinct_colors_at(const Multigraph& g, const EdgeColoring& coloring, VertexId v) {
    std::set<Color> seen;
    for (EdgeId e : g.incident(v)) seen.insert(coloring.colors.at(static_cast<std::size_t>(e)));
    return static_cast<int>(seen.size());
}

bool is_proper(const Multigraph& g, const EdgeColoring& coloring) {
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (distinct_colors_at(g, coloring, v) != g.degree(v)) return false;
    return true;
}

namespace demand {

VertexSet high_demand_set(const DemandInstance& inst) {
    const Multigraph& g = inst.graph;
    VertexSet s(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (inst.demand[static_cast<std::size_t>(v)] + g.multiplicity_at(v) > inst.k) s.insert(v);
    return s;
}

Report validate(const DemandInstance& inst) {
    Report r;
    const Multigraph& g = inst.graph;
    if (inst.k < 1) {
        r.messages.push_back("k must be positive, got " + std::to_string(inst.k));
        return r;
    }
    if (static_cast<int>(inst.demand.size()) != g.vertex_count()) {
        r.messages.push_back("demand has " + std::to_string(inst.demand.size()) + " entries for " +
                             std::to_string(g.vertex_count()) + " vertices");
        return r;
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const int c = inst.demand[static_cast<std::size_t>(v)];
        if (c > std::min(g.degree(v), inst.k)) {
            r.messages.push_back("vertex " + std::to_string(v) + ": demand " + std::to_string(c) +
                                 " exceeds min{deg, k} = " + std::to_string(std::min(g.degree(v), inst.k)));
            r.vertices.push_back(v);
        }
    }
    if (!r.ok()) return r;
    const VertexSet s = high_demand_set(inst);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (s.contains(ed.a) && s.contains(ed.b)) {
            r.messages.push_back("edge " + std::to_string(e) + " joins vertices " + std::to_string(ed.a) + " and " +
                                 std::to_string(ed.b) + ", both with c(v) + mu(v) > k: S is not stable");
            r.edges.push_back(e);
        }
    }
    return r;
}

namespace {

void check_total(const Multigraph& g, int k, const EdgeColoring& coloring) {
    if (static_cast<int>(coloring.colors.size()) != g.edge_count())
        throw InvalidInput("coloring has " + std::to_string(coloring.colors.size()) + " entries for " +
                           std::to_string(g.edge_count()) + " edges");
    for (std::size_t e = 0; e < coloring.colors.size(); ++e) {
        const Color c = coloring.colors[e];
        if (c < 1 || c > k)
            throw InvalidInput("edge " + std::to_string(e) + " has color " + std::to_string(c) + " outside 1.." +
                               std::to_string(k));
    }
}

} // namespace

Report verify(const DemandInstance& inst, const EdgeColoring& coloring) {
    check_total(inst.graph, inst.k, coloring);
    Report r;
    for (VertexId v = 0; v < inst.graph.vertex_count(); ++v) {
        const int have = distinct_colors_at(inst.graph, coloring, v);
        const int need = inst.demand.at(static_cast<std::size_t>(v));
        if (have < need) {
            r.messages.push_back("vertex " + std::to_string(v) + " sees " + std::to_string(have) +
                                 " colors, demand " + std::to_string(need));
            r.vertices.push_back(v);
        }
    }
    return r;
}

PartialEdgeColoring::PartialEdgeColoring(const Multigraph& g, int k)
    : graph_(&g),
      k_(k),
      color_(static_cast<std::size_t>(g.edge_count()), kUncolored),
      counts_(static_cast<std::size_t>(g.vertex_count()) * static_cast<std::size_t>(k + 1), 0),
      distinct_(static_cast<std::size_t>(g.vertex_count()), 0),
      uncolored_(static_cast<std::size_t>(g.vertex_count()), 0) {
    if (k < 1) throw InvalidInput("k must be positive");
    for (VertexId v = 0; v < g.vertex_count(); ++v) uncolored_[static_cast<std::size_t>(v)] = g.degree(v);
}

void PartialEdgeColoring::set(EdgeId e, Color c) {
    if (c < 1 || c > k_) throw InvalidInput("color " + std::to_string(c) + " outside 1.." + std::to_string(k_));
    clear(e);
    const Edge& ed = graph_->edge(e);
    for (VertexId v : {ed.a, ed.b}) {
        if (count(v, c)++ == 0) ++distinct_[static_cast<std::size_t>(v)];
        --uncolored_[static_cast<std::size_t>(v)];
    }
    color_[static_cast<std::size_t>(e)] = c;
    ++colored_count_;
}

void PartialEdgeColoring::clear(EdgeId e) {
    const Color c = color(e);
    if (c == kUncolored) return;
    const Edge& ed = graph_->edge(e);
    for (VertexId v : {ed.a, ed.b}) {
        if (--count(v, c) == 0) --distinct_[static_cast<std::size_t>(v)];
        ++uncolored_[static_cast<std::size_t>(v)];
    }
    color_[static_cast<std::size_t>(e)] = kUncolored;
    --colored_count_;
}

bool PartialEdgeColoring::present(VertexId v, Color c) const {
    if (c < 1 || c > k_) return false;
    return count(v, c) > 0;
}

Color PartialEdgeColoring::lowest_missing(VertexId v) const {
    for (Color c = 1; c <= k_; ++c)
        if (!present(v, c)) return c;
    return kUncolored;
}

EdgeColoring PartialEdgeColoring::to_total() const {
    if (colored_count_ != graph_->edge_count()) throw InvalidInput("coloring is partial");
    return EdgeColoring{color_};
}

namespace {

using nlohmann::json;

struct Restart {
    EdgeId e0;
    VertexId x;
    VertexId y0;
};

// One augmentation. Each attempt() either finishes (returns nullopt) or
// performs the pivot swap into S and asks to be rerun from the new pivot.
class Augmenter {
public:
    Augmenter(const DemandInstance& inst, PartialEdgeColoring& pc, const VertexSet& s, SolveStats& stats,
              const SolveOptions& options)
        : inst_(inst), g_(inst.graph), pc_(pc), s_(s), stats_(stats), options_(options) {}

    void run(EdgeId e0) {
        SUPERCOLOR_CLAIM(!pc_.colored(e0), "augment-precondition", "edge " + std::to_string(e0) + " already colored");
        const int before = pc_.colored_count();
        const Edge& ed = g_.edge(e0);
        VertexId x = std::min(ed.a, ed.b);
        VertexId y0 = std::max(ed.a, ed.b);
        if (s_.contains(y0)) std::swap(x, y0);

        int restarts = 0;
        std::optional<Restart> next = attempt(e0, x, y0);
        while (next) {
            ++restarts;
            ++stats_.restarts;
            SUPERCOLOR_CLAIM(restarts <= 1, "restart-bound",
                             "pivot swap into S happened twice while coloring edge " + std::to_string(e0));
            check_surrogate("after pivot swap");
            next = attempt(next->e0, next->x, next->y0);
        }
        stats_.max_restarts_in_one_augmentation = std::max(stats_.max_restarts_in_one_augmentation, restarts);
        SUPERCOLOR_CLAIM(pc_.colored_count() == before + 1, "progress",
                         "colored set grew by " + std::to_string(pc_.colored_count() - before));
        check_surrogate("after augmentation");
        ++stats_.augmentations;
    }

private:
    int demand(VertexId v) const { return inst_.demand[static_cast<std::size_t>(v)]; }
    bool tight(VertexId v) const { return pc_.surrogate(v) == demand(v); }

    void check_surrogate(const char* where) {
        ++stats_.invariant_checks;
        for (VertexId v = 0; v < g_.vertex_count(); ++v)
            SUPERCOLOR_CLAIM(pc_.surrogate(v) >= demand(v), "surrogate-inequality",
                             std::string(where) + ": vertex " + std::to_string(v) + " has " +
                                 std::to_string(pc_.surrogate(v)) + " < c = " + std::to_string(demand(v)));
    }

    void trace(json event) const {
        if (options_.trace) options_.trace(event.dump());
    }

    std::optional<Restart> attempt(EdgeId e0, VertexId x, VertexId y0) {
        SUPERCOLOR_CLAIM(!s_.contains(y0), "pivot-choice", "far endpoint " + std::to_string(y0) + " lies in S");

        if (pc_.surrogate(y0) > demand(y0)) {
            Color alpha = pc_.lowest_missing(x);
            if (alpha == kUncolored) alpha = 1; // x already sees all k colors
            pc_.set(e0, alpha);
            ++stats_.direct_extensions;
            trace({{"step", "direct"}, {"edge", e0}, {"pivot", x}, {"color", alpha}});
            return std::nullopt;
        }

        // Fan e_0..e_l at x. fan_colors[i] is α_i = π(e_i) for i >= 1.
        std::vector<EdgeId> fan{e0};
        std::vector<VertexId> far{y0};
        std::vector<Color> alpha{kUncolored};
        std::vector<bool> in_fan(static_cast<std::size_t>(g_.edge_count()), false);
        in_fan[static_cast<std::size_t>(e0)] = true;

        auto color_forbidden_at_tip = [&](Color c) {
            const std::size_t l = fan.size() - 1;
            if (pc_.present(far[l], c)) return true;
            for (std::size_t i = 0; i < l; ++i)
                if (far[i] == far[l] && alpha[i + 1] == c) return true;
            return false;
        };

        for (bool extended = true; extended;) {
            extended = false;
            for (EdgeId e : g_.incident(x)) {
                if (in_fan[static_cast<std::size_t>(e)] || !pc_.colored(e)) continue;
                const VertexId y = g_.other_end(e, x);
                if (s_.contains(y) || !tight(y) || color_forbidden_at_tip(pc_.color(e))) continue;
                fan.push_back(e);
                far.push_back(y);
                alpha.push_back(pc_.color(e));
                in_fan[static_cast<std::size_t>(e)] = true;
                extended = true;
                break;
            }
        }
        const std::size_t l = fan.size() - 1;
        const VertexId tip = far[l];
        stats_.max_fan_length = std::max<long>(stats_.max_fan_length, static_cast<long>(l));
        check_fan(x, fan, far, alpha);

        SUPERCOLOR_CLAIM(inst_.k - pc_.distinct(tip) >= g_.multiplicity_at(tip), "color-availability",
                         "fan tip " + std::to_string(tip) + " has only " + std::to_string(inst_.k - pc_.distinct(tip)) +
                             " free colors, mu = " + std::to_string(g_.multiplicity_at(tip)));
        Color next_alpha = kUncolored;
        for (Color c = 1; c <= inst_.k && next_alpha == kUncolored; ++c)
            if (!color_forbidden_at_tip(c)) next_alpha = c;
        SUPERCOLOR_CLAIM(next_alpha != kUncolored, "color-availability", "no admissible color at fan tip");
        alpha.push_back(next_alpha); // α_{l+1}

        trace({{"step", "fan"}, {"pivot", x}, {"edges", fan}, {"far", far}, {"next_color", next_alpha}});

        auto shift = [&](std::size_t upto) {
            for (std::size_t i = 0; i < upto; ++i) pc_.set(fan[i], alpha[i + 1]);
        };

        if (pc_.distinct(x) == inst_.k) {
            pc_.set(e0, alpha[1]);
            ++stats_.saturated_pivot;
            trace({{"step", "saturated-pivot"}, {"edge", e0}, {"color", alpha[1]}});
            return std::nullopt;
        }
        const Color beta = pc_.lowest_missing(x);

        if (!pc_.present(tip, beta)) {
            shift(l);
            pc_.set(fan[l], beta);
            ++stats_.fan_shifts;
            trace({{"step", "fan-shift"}, {"length", l}, {"beta", beta}});
            return std::nullopt;
        }

        // Maximal alternating trail from the tip in colors {β, α_{l+1}}.
        std::vector<EdgeId> trail;
        std::vector<bool> on_trail(static_cast<std::size_t>(g_.edge_count()), false);
        VertexId end = tip;
        for (Color need = beta;;) {
            EdgeId step = -1;
            for (EdgeId e : g_.incident(end))
                if (!on_trail[static_cast<std::size_t>(e)] && pc_.color(e) == need) {
                    step = e;
                    break;
                }
            if (step < 0) break;
            trail.push_back(step);
            on_trail[static_cast<std::size_t>(step)] = true;
            end = g_.other_end(step, end);
            need = need == beta ? next_alpha : beta;
        }
        check_trail(trail, on_trail, end, next_alpha, beta);

        auto swap_trail = [&] {
            std::vector<Color> swapped;
            for (EdgeId f : trail) swapped.push_back(pc_.color(f) == beta ? next_alpha : beta);
            for (std::size_t i = 0; i < trail.size(); ++i) pc_.set(trail[i], swapped[i]);
        };
        auto check_disjoint = [&] {
            for (EdgeId e : fan)
                SUPERCOLOR_CLAIM(!on_trail[static_cast<std::size_t>(e)], "trail-avoids-pivot",
                                 "trail uses fan edge " + std::to_string(e));
        };

        trace({{"step", "trail"}, {"edges", trail}, {"end", end}});

        if (end != x) {
            std::optional<std::size_t> repeat;
            for (std::size_t i = 0; i < l && !repeat; ++i)
                if (far[i] == end) repeat = i;
            check_disjoint();
            if (!repeat || pc_.present(end, next_alpha)) {
                // Case I, or case II where the endpoint already sees α_{l+1}.
                swap_trail();
                shift(l);
                pc_.set(fan[l], beta);
                if (repeat) {
                    ++stats_.case_two;
                    trace({{"step", "case-II"}, {"variant", "full-shift"}, {"at", *repeat}});
                } else {
                    ++stats_.case_one;
                    trace({{"step", "case-I"}});
                }
                return std::nullopt;
            }
            const std::size_t i = *repeat;
            SUPERCOLOR_CLAIM(pc_.color(trail.back()) == beta, "case-II",
                             "trail ending at fan vertex without α_{l+1} must end in β");
            swap_trail();
            shift(i);
            pc_.set(fan[i], beta);
            ++stats_.case_two;
            trace({{"step", "case-II"}, {"variant", "partial-shift"}, {"at", i}});
            return std::nullopt;
        }

        // Case III: the trail returns to the pivot through an α_{l+1} edge.
        ++stats_.case_three;
        const EdgeId last = trail.back();
        const VertexId y = g_.other_end(last, x);
        SUPERCOLOR_CLAIM(pc_.color(last) == next_alpha, "case-III", "trail enters pivot with a non-α_{l+1} edge");
        const bool y_in_fan = std::find(far.begin(), far.begin() + static_cast<std::ptrdiff_t>(l), y) !=
                              far.begin() + static_cast<std::ptrdiff_t>(l);
        if (!y_in_fan) {
            SUPERCOLOR_CLAIM(y != tip, "case-III", "trail closes at the fan tip");
            SUPERCOLOR_CLAIM(s_.contains(y) || pc_.surrogate(y) > demand(y), "fan-maximality",
                             "edge " + std::to_string(last) + " would extend the fan");
            shift(l + 1);
            if (s_.contains(y)) {
                pc_.clear(last);
                trace({{"step", "case-III"}, {"variant", "pivot-swap"}, {"new_pivot", y}, {"edge", last}});
                return Restart{last, y, x};
            }
            pc_.set(last, beta);
            trace({{"step", "case-III"}, {"variant", "outside-fan"}});
            return std::nullopt;
        }
        std::size_t j = 0;
        while (j <= l && fan[j] != last) ++j;
        SUPERCOLOR_CLAIM(j >= 1 && j + 1 <= l, "fan-maximality",
                         "trail's last edge " + std::to_string(last) + " is not an inner fan edge");
        swap_trail();
        shift(j);
        trace({{"step", "case-III"}, {"variant", "inside-fan"}, {"at", j}});
        return std::nullopt;
    }

    void check_fan(VertexId x, const std::vector<EdgeId>& fan, const std::vector<VertexId>& far,
                   const std::vector<Color>& alpha) const {
        const std::size_t l = fan.size() - 1;
        for (std::size_t i = 0; i <= l; ++i) {
            const Edge& ed = g_.edge(fan[i]);
            SUPERCOLOR_CLAIM(ed.a == x || ed.b == x, "fan-condition", "fan edge not at pivot");
            SUPERCOLOR_CLAIM(!s_.contains(far[i]), "fan-condition-4", "fan vertex in S");
            SUPERCOLOR_CLAIM(tight(far[i]), "fan-condition-5", "fan vertex not tight");
            if (i >= 1) {
                SUPERCOLOR_CLAIM(pc_.colored(fan[i]), "fan-condition-1", "uncolored fan edge");
                SUPERCOLOR_CLAIM(!pc_.present(far[i - 1], alpha[i]), "fan-condition-2",
                                 "α_" + std::to_string(i) + " present at previous fan vertex");
            }
            for (std::size_t j = 0; j < i; ++j)
                if (i < l && far[i] == far[j])
                    SUPERCOLOR_CLAIM(alpha[i + 1] != alpha[j + 1], "fan-condition-3", "repeated fan color");
        }
    }

    void check_trail(const std::vector<EdgeId>& trail, const std::vector<bool>& on_trail, VertexId end,
                     Color a, Color b) const {
        SUPERCOLOR_CLAIM(!trail.empty(), "trail", "β present at the tip but trail is empty");
        const bool missing_one = !pc_.present(end, a) || !pc_.present(end, b);
        bool has_a = false;
        bool has_b = false;
        for (EdgeId e : g_.incident(end)) {
            if (!on_trail[static_cast<std::size_t>(e)]) continue;
            has_a = has_a || pc_.color(e) == a;
            has_b = has_b || pc_.color(e) == b;
        }
        SUPERCOLOR_CLAIM(missing_one || (has_a && has_b), "trail-end",
                         "trail endpoint " + std::to_string(end) + " satisfies neither end condition");
    }

    const DemandInstance& inst_;
    const Multigraph& g_;
    PartialEdgeColoring& pc_;
    const VertexSet& s_;
    SolveStats& stats_;
    const SolveOptions& options_;
};

} // namespace

void augment(const DemandInstance& inst, PartialEdgeColoring& state, EdgeId e0, SolveStats& stats,
             const SolveOptions& options) {
    const VertexSet s = high_demand_set(inst);
    Augmenter(inst, state, s, stats, options).run(e0);
}

EdgeColoring solve(const DemandInstance& inst, const SolveOptions& options, SolveStats* stats) {
    if (const Report r = validate(inst); !r.ok()) {
        std::ostringstream os;
        os << "demand instance violates hypotheses:";
        for (const auto& m : r.messages) os << "\n  " << m;
        throw HypothesisViolation(os.str());
    }
    SolveStats local;
    SolveStats& st = stats ? *stats : local;
    const VertexSet s = high_demand_set(inst);
    PartialEdgeColoring pc(inst.graph, inst.k);
    Augmenter aug(inst, pc, s, st, options);
    const long start = st.augmentations;
    for (EdgeId e = 0; e < inst.graph.edge_count(); ++e)
        if (!pc.colored(e)) aug.run(e);
    SUPERCOLOR_CLAIM(st.augmentations - start == inst.graph.edge_count(), "progress",
                     "expected one augmentation per edge");
    EdgeColoring out = pc.to_total();
    SUPERCOLOR_CLAIM(verify(inst, out).ok(), "output", "solver output fails its own verifier");
    return out;
}

EdgeColoring vizing_color(const Multigraph& g) {
    if (g.edge_count() == 0) return {};
    DemandInstance inst{g, max_degree(g) + graph_multiplicity(g), {}};
    for (VertexId v = 0; v < g.vertex_count(); ++v) inst.demand.push_back(g.degree(v));
    return solve(inst);
}

EdgeColoring gupta_stable_color(const Multigraph& g, int k) {
    DemandInstance inst{g, k, {}};
    for (VertexId v = 0; v < g.vertex_count(); ++v) inst.demand.push_back(std::min(g.degree(v), k));
    return solve(inst);
}

} // namespace demand
} // namespace supercolor
