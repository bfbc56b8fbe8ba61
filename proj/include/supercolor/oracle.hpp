#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "supercolor/demand_coloring.hpp"
#include "supercolor/set_family.hpp"

namespace supercolor::oracle {

struct SearchBudget {
    /// Enumeration is refused when k^|E| (or k^|U|) exceeds this.
    long long max_assignments = 5'000'000;
    std::uint64_t seed = 0;
};

struct SearchResult {
    bool feasible = false;
    /// Lexicographically first satisfying assignment with element 0 colored 1.
    std::optional<std::vector<Color>> witness;
    /// Search nodes visited; depends on the partitioning, the verdict does not.
    long long nodes = 0;
};

/// Exhaustive search for a coloring with |π(δ(v))| >= c(v). Throws
/// BudgetExceeded when k^|E| exceeds the budget.
SearchResult brute_force_edge(const demand::DemandInstance& inst, const SearchBudget& budget = {});
SearchResult brute_force_edge_serial(const demand::DemandInstance& inst, const SearchBudget& budget = {});

/// Exhaustive search for an assignment with |π(X)| >= g(X).
SearchResult brute_force_family(const family::FamilyInstance& inst, const SearchBudget& budget = {});
SearchResult brute_force_family_serial(const family::FamilyInstance& inst, const SearchBudget& budget = {});

/// Exact chromatic index by increasing k from Δ.
int chromatic_index(const Multigraph& g, const SearchBudget& budget = {});

/// m edges over n vertices drawn uniformly from the pair slots, each pair
/// used at most max_mult times.
Multigraph gen_multigraph(int n, int m, int max_mult, std::uint64_t seed);

/// c(v) uniform in 0..min{deg(v), k}, redrawn until S is stable. After the
/// retries run out the remaining conflicts are repaired by lowering c(v) to
/// k - μ(v). Throws GenerationFailure if k < μ(G) makes that impossible.
demand::DemandInstance gen_demand(const Multigraph& g, int k, std::uint64_t seed);

enum class FamilyShape { stars, intervals, laminar, random_filtered };

FamilyShape parse_shape(std::string_view name);
std::string_view shape_name(FamilyShape shape);

/// A family instance on `ground` elements that passes check_hypotheses.
/// Throws GenerationFailure after bounded retries.
family::FamilyInstance gen_family(int ground, int k, FamilyShape shape, std::uint64_t seed);

} // namespace supercolor::oracle
