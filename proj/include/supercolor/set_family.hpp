#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "supercolor/demand_coloring.hpp"

namespace supercolor::family {

/// Subset of a ground set {0, ..., 63} as a bitmask.
using ElementSet = std::uint64_t;
inline constexpr int kMaxGround = 64;

inline bool contains(ElementSet s, int element) { return (s >> element) & 1U; }
inline ElementSet singleton(int element) { return ElementSet{1} << element; }
int cardinality(ElementSet s);
std::vector<int> elements(ElementSet s);
ElementSet make_set(std::initializer_list<int> elements);
/// Element-list order: compares the ascending element sequences.
bool lex_less(ElementSet a, ElementSet b);

/// Ground set, an explicit family of distinct subsets, a demand g per member
/// and the color count k.
struct FamilyInstance {
    int ground = 0;
    int k = 1;
    std::vector<ElementSet> sets;
    std::vector<int> g;

    std::optional<int> index_of(ElementSet s) const;
    int size() const noexcept { return static_cast<int>(sets.size()); }
};

/// Throws InvalidInput on duplicate sets, elements outside the ground set,
/// a g of the wrong length, k < 1 or ground outside 0..64.
FamilyInstance make_instance(int ground, int k, std::vector<ElementSet> sets, std::vector<int> g);

bool is_intersecting_family(std::span<const ElementSet> family);
bool is_intersecting_supermodular(std::span<const ElementSet> family, std::span<const int> g);
bool is_strongly_triple_intersecting_family(std::span<const ElementSet> family);
bool is_strongly_triple_intersecting_supermodular(std::span<const ElementSet> family, std::span<const int> g);

/// max |X ∩ Y| over members Y incomparable with X; 0 if there is none.
/// Throws InvalidInput when X is not a member.
int d_value(std::span<const ElementSet> family, ElementSet x);
std::vector<int> d_values(std::span<const ElementSet> family);

struct LaminarCheck {
    bool ok = true;
    /// Indices of L = {X : g(X) + D(X) > k}.
    std::vector<int> members;
    /// A violating pair of indices when !ok.
    std::optional<std::pair<int, int>> witness;
};

LaminarCheck laminar_check(std::span<const ElementSet> family, std::span<const int> g, int k);

/// All hypotheses the set-family solver needs, evaluated separately.
struct HypothesisReport {
    bool strongly_triple_intersecting_family = true;
    bool strongly_triple_intersecting_supermodular = true;
    bool laminar = true;
    bool bounded = true; // min{|X|, k} >= g(X)
    std::vector<std::string> messages;

    bool ok() const noexcept {
        return strongly_triple_intersecting_family && strongly_triple_intersecting_supermodular && laminar && bounded;
    }
};

HypothesisReport check_hypotheses(const FamilyInstance& inst);

/// Star family {δ(v)} over edge ids with g(δ(v)) = c(v); vertices sharing the
/// same star are merged with the larger demand. Vertices of degree 0 add
/// nothing. Throws HypothesisViolation for an invalid demand instance and
/// InvalidInput for graphs with more than 64 edges.
FamilyInstance from_graph_stars(const demand::DemandInstance& inst);

} // namespace supercolor::family
