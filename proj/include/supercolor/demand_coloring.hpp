#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "supercolor/graph.hpp"

namespace supercolor {

/// Receives one serialized JSON object per solver step when tracing is enabled.
using TraceSink = std::function<void(std::string_view)>;

/// Total map edge id -> color in 1..k.
struct EdgeColoring {
    std::vector<Color> colors;

    int colors_used() const;
};

/// Number of distinct colors on the edges incident to v.
int distinct_colors_at(const Multigraph& g, const EdgeColoring& coloring, VertexId v);

/// True when adjacent edges always differ.
bool is_proper(const Multigraph& g, const EdgeColoring& coloring);

namespace demand {

struct DemandInstance {
    Multigraph graph;
    int k = 1;
    std::vector<int> demand;
};

/// Outcome of a hypothesis or demand check. `ok()` iff nothing was reported.
struct Report {
    std::vector<std::string> messages;
    std::vector<VertexId> vertices;
    std::vector<EdgeId> edges;

    bool ok() const noexcept { return messages.empty(); }
};

/// S = {v : c(v) + μ(v) > k}.
VertexSet high_demand_set(const DemandInstance& inst);

/// Checks c(v) <= min{deg(v), k} and that S is stable; also rejects
/// structurally broken instances (k < 1, wrong demand length). A negative demand is
/// accepted and imposes nothing.
Report validate(const DemandInstance& inst);

/// Every vertex with |π(δ(v))| < c(v). Throws InvalidInput for a partial or
/// ill-ranged coloring.
Report verify(const DemandInstance& inst, const EdgeColoring& coloring);

/// Edge coloring under construction: the colored set F and π on it, with
/// per-vertex color multiplicities so the surrogate quantity
/// |δ(v) \ F| + |π(δ(v) ∩ F)| is O(1) to read.
class PartialEdgeColoring {
public:
    PartialEdgeColoring(const Multigraph& g, int k);

    int k() const noexcept { return k_; }
    const Multigraph& graph() const noexcept { return *graph_; }

    Color color(EdgeId e) const { return color_[static_cast<std::size_t>(e)]; }
    bool colored(EdgeId e) const { return color(e) != kUncolored; }
    int colored_count() const noexcept { return colored_count_; }
    const std::vector<Color>& colors() const noexcept { return color_; }

    void set(EdgeId e, Color c);
    void clear(EdgeId e);

    bool present(VertexId v, Color c) const;
    int distinct(VertexId v) const { return distinct_[static_cast<std::size_t>(v)]; }
    int uncolored_degree(VertexId v) const { return uncolored_[static_cast<std::size_t>(v)]; }
    int surrogate(VertexId v) const { return uncolored_degree(v) + distinct(v); }
    /// Smallest color absent at v, or kUncolored when all k are present.
    Color lowest_missing(VertexId v) const;

    EdgeColoring to_total() const;

private:
    int& count(VertexId v, Color c) {
        return counts_[static_cast<std::size_t>(v) * static_cast<std::size_t>(k_ + 1) + static_cast<std::size_t>(c)];
    }
    int count(VertexId v, Color c) const {
        return counts_[static_cast<std::size_t>(v) * static_cast<std::size_t>(k_ + 1) + static_cast<std::size_t>(c)];
    }

    const Multigraph* graph_;
    int k_;
    int colored_count_ = 0;
    std::vector<Color> color_;
    std::vector<int> counts_;
    std::vector<int> distinct_;
    std::vector<int> uncolored_;
};

/// Counters for the runtime checks; the acceptance suite reads them.
struct SolveStats {
    long augmentations = 0;
    long direct_extensions = 0;
    long saturated_pivot = 0;
    long fan_shifts = 0;
    long case_one = 0;
    long case_two = 0;
    long case_three = 0;
    long restarts = 0;
    int max_restarts_in_one_augmentation = 0;
    long invariant_checks = 0;
    long max_fan_length = 0;
};

struct SolveOptions {
    TraceSink trace;
};

/// Colors one more edge, starting from uncolored e0, while keeping the
/// surrogate inequality at every vertex. Requires a validated instance.
void augment(const DemandInstance& inst, PartialEdgeColoring& state, EdgeId e0, SolveStats& stats,
             const SolveOptions& options = {});

/// Total coloring with |π(δ(v))| >= c(v) everywhere. Throws
/// HypothesisViolation if validate() fails.
EdgeColoring solve(const DemandInstance& inst, const SolveOptions& options = {}, SolveStats* stats = nullptr);

/// Proper coloring with at most Δ + μ colors.
EdgeColoring vizing_color(const Multigraph& g);

/// Demand min{deg(v), k}; requires {v : deg(v) + μ(v) > k} to be stable.
EdgeColoring gupta_stable_color(const Multigraph& g, int k);

} // namespace demand
} // namespace supercolor
