#pragma once

#include <optional>
#include <vector>

#include "supercolor/demand_coloring.hpp"
#include "supercolor/set_family.hpp"

namespace supercolor::supermodular {

using family::ElementSet;
using family::FamilyInstance;

/// Partial map element -> color; kUncolored marks elements outside the domain T.
struct PartialAssignment {
    std::vector<Color> color;

    PartialAssignment() = default;
    explicit PartialAssignment(int ground) : color(static_cast<std::size_t>(ground), kUncolored) {}

    bool assigned(int u) const { return color[static_cast<std::size_t>(u)] != kUncolored; }
    ElementSet domain() const;
};

/// f(X) = |X \ T| + |π(X ∩ T)|.
int f_value(ElementSet x, const PartialAssignment& pi);
/// Number of distinct colors π takes on X ∩ T.
int distinct_colors(ElementSet x, const PartialAssignment& pi);
bool is_satisfying(ElementSet x, int g, const PartialAssignment& pi);
bool is_tight(ElementSet x, int g, const PartialAssignment& pi);

/// Family indices of the inclusion-maximal tight members containing u,
/// ordered by element-list order.
std::vector<int> maximal_tight_containing(const FamilyInstance& inst, const PartialAssignment& pi, int u);

struct SolveStats {
    long augmentations = 0;
    long empty_tight_family = 0;
    long unique_maximal = 0;
    long sequence_finishes = 0;
    long sequence_extensions = 0;
    long restarts = 0;
    int max_restarts_in_one_augmentation = 0;
    long spare_color_finishes = 0;
    long chain_clean_finishes = 0; // no unsatisfied set after swapping the chain
    long chain_exit_finishes = 0;  // chain ran into the anchor set
    long longest_chain = 0;
    long longest_sequence = 0;
    // Runtime checks performed, keyed by the property they enforce.
    long submodularity_checks = 0;
    long at_most_two_maximal_checks = 0;
    long all_satisfying_checks = 0;
    long only_two_maximal_checks = 0;
    long equal_sets_checks = 0;
    long color_bound_checks = 0;
    long chain_checks = 0;
    long steps = 0;
};

struct SolveOptions {
    TraceSink trace;
    /// Primitive steps (set evaluations) allowed per augmentation.
    long step_budget = 1'000'000;
};

/// Assigns one more element, starting from unassigned u0, keeping every
/// member π-satisfying. Requires an instance that passed check_hypotheses.
void augment(const FamilyInstance& inst, PartialAssignment& state, int u0, SolveStats& stats,
             const SolveOptions& options = {});

/// Alternating chain x_0..x_p in colors {β, α} built against `base`, with the
/// unique unsatisfied witness X_i after each prefix swap. `exit` is the
/// element of `anchor` the chain ran into, if any.
struct BicolorChain {
    std::vector<int> elements;
    std::vector<int> witnesses;
    std::optional<int> exit;
};

/// Builds the maximal chain starting at x0 (base color β, x0 outside anchor).
BicolorChain bicolor_chain(const FamilyInstance& inst, const PartialAssignment& base, ElementSet anchor, int x0,
                           Color alpha, Color beta, SolveStats& stats);

/// Total assignment U -> [k] with |π(X)| >= g(X) for every member. Throws
/// HypothesisViolation naming the failing hypothesis.
std::vector<Color> solve(const FamilyInstance& inst, const SolveOptions& options = {}, SolveStats* stats = nullptr);

/// Indices of members with |π(X)| < g(X). Throws InvalidInput on a partial or
/// ill-ranged assignment.
std::vector<int> verify(const FamilyInstance& inst, const std::vector<Color>& assignment);

} // namespace supercolor::supermodular
