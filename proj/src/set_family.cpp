#include "supercolor/set_family.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <unordered_set>

#include "supercolor/errors.hpp"

namespace supercolor::family {

int cardinality(ElementSet s) { return std::popcount(s); }

std::vector<int> elements(ElementSet s) {
    std::vector<int> out;
    for (; s; s &= s - 1) out.push_back(std::countr_zero(s));
    return out;
}

ElementSet make_set(std::initializer_list<int> elems) {
    ElementSet s = 0;
    for (int e : elems) s |= singleton(e);
    return s;
}

bool lex_less(ElementSet a, ElementSet b) {
    const auto ea = elements(a);
    const auto eb = elements(b);
    return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
}

std::optional<int> FamilyInstance::index_of(ElementSet s) const {
    for (std::size_t i = 0; i < sets.size(); ++i)
        if (sets[i] == s) return static_cast<int>(i);
    return std::nullopt;
}

FamilyInstance make_instance(int ground, int k, std::vector<ElementSet> sets, std::vector<int> g) {
    if (ground < 0 || ground > kMaxGround)
        throw InvalidInput("ground size " + std::to_string(ground) + " outside 0..64");
    if (k < 1) throw InvalidInput("k must be positive, got " + std::to_string(k));
    if (g.size() != sets.size())
        throw InvalidInput("g has " + std::to_string(g.size()) + " values for " + std::to_string(sets.size()) + " sets");
    const ElementSet universe = ground == kMaxGround ? ~ElementSet{0} : (ElementSet{1} << ground) - 1;
    std::unordered_set<ElementSet> seen;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (sets[i] & ~universe) throw InvalidInput("set " + std::to_string(i) + " has elements outside the ground set");
        if (!seen.insert(sets[i]).second) throw InvalidInput("set " + std::to_string(i) + " duplicates an earlier set");
    }
    return FamilyInstance{ground, k, std::move(sets), std::move(g)};
}

namespace {

class Lookup {
public:
    explicit Lookup(std::span<const ElementSet> family) {
        for (std::size_t i = 0; i < family.size(); ++i) index_.emplace(family[i], static_cast<int>(i));
    }
    std::optional<int> find(ElementSet s) const {
        auto it = index_.find(s);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

private:
    std::map<ElementSet, int> index_;
};

bool pair_closed(const Lookup& lk, ElementSet a, ElementSet b) {
    return lk.find(a | b).has_value() && lk.find(a & b).has_value();
}

bool pair_supermodular(const Lookup& lk, std::span<const ElementSet> family, std::span<const int> g, int i, int j) {
    const auto u = lk.find(family[static_cast<std::size_t>(i)] | family[static_cast<std::size_t>(j)]);
    const auto n = lk.find(family[static_cast<std::size_t>(i)] & family[static_cast<std::size_t>(j)]);
    if (!u || !n) return false;
    return g[static_cast<std::size_t>(i)] + g[static_cast<std::size_t>(j)] <=
           g[static_cast<std::size_t>(*u)] + g[static_cast<std::size_t>(*n)];
}

void require_same_size(std::span<const ElementSet> family, std::span<const int> g) {
    if (family.size() != g.size()) throw InvalidInput("family and g differ in length");
}

// Counts, for every triple with a common element, how many of its three
// pairs pass `good`, and requires at least two.
template <typename PairPredicate>
bool every_triple_has_two(std::span<const ElementSet> family, PairPredicate good) {
    const int n = static_cast<int>(family.size());
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            const ElementSet ab = family[static_cast<std::size_t>(a)] & family[static_cast<std::size_t>(b)];
            if (!ab) continue;
            for (int c = b + 1; c < n; ++c) {
                if (!(ab & family[static_cast<std::size_t>(c)])) continue;
                const int count = int(good(a, b)) + int(good(b, c)) + int(good(c, a));
                if (count < 2) return false;
            }
        }
    return true;
}

} // namespace

bool is_intersecting_family(std::span<const ElementSet> family) {
    const Lookup lk(family);
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i + 1; j < family.size(); ++j)
            if ((family[i] & family[j]) && !pair_closed(lk, family[i], family[j])) return false;
    return true;
}

bool is_intersecting_supermodular(std::span<const ElementSet> family, std::span<const int> g) {
    require_same_size(family, g);
    if (!is_intersecting_family(family)) return false;
    const Lookup lk(family);
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i + 1; j < family.size(); ++j)
            if ((family[i] & family[j]) &&
                !pair_supermodular(lk, family, g, static_cast<int>(i), static_cast<int>(j)))
                return false;
    return true;
}

bool is_strongly_triple_intersecting_family(std::span<const ElementSet> family) {
    const Lookup lk(family);
    return every_triple_has_two(family, [&](int i, int j) {
        return pair_closed(lk, family[static_cast<std::size_t>(i)], family[static_cast<std::size_t>(j)]);
    });
}

bool is_strongly_triple_intersecting_supermodular(std::span<const ElementSet> family, std::span<const int> g) {
    require_same_size(family, g);
    if (!is_strongly_triple_intersecting_family(family)) return false;
    const Lookup lk(family);
    return every_triple_has_two(family, [&](int i, int j) { return pair_supermodular(lk, family, g, i, j); });
}

int d_value(std::span<const ElementSet> family, ElementSet x) {
    if (std::find(family.begin(), family.end(), x) == family.end())
        throw InvalidInput("set is not a member of the family");
    int best = 0;
    for (ElementSet y : family) {
        const bool comparable = (x & ~y) == 0 || (y & ~x) == 0;
        if (!comparable) best = std::max(best, cardinality(x & y));
    }
    return best;
}

std::vector<int> d_values(std::span<const ElementSet> family) {
    std::vector<int> out;
    out.reserve(family.size());
    for (ElementSet x : family) out.push_back(d_value(family, x));
    return out;
}

LaminarCheck laminar_check(std::span<const ElementSet> family, std::span<const int> g, int k) {
    require_same_size(family, g);
    LaminarCheck out;
    const std::vector<int> d = d_values(family);
    for (std::size_t i = 0; i < family.size(); ++i)
        if (g[i] + d[i] > k) out.members.push_back(static_cast<int>(i));
    const Lookup lk(family);
    for (std::size_t a = 0; a < out.members.size(); ++a)
        for (std::size_t b = a + 1; b < out.members.size(); ++b) {
            const int i = out.members[a];
            const int j = out.members[b];
            const ElementSet x = family[static_cast<std::size_t>(i)];
            const ElementSet y = family[static_cast<std::size_t>(j)];
            const bool nested_or_disjoint = (x & ~y) == 0 || (y & ~x) == 0 || (x & y) == 0;
            if (nested_or_disjoint || pair_supermodular(lk, family, g, i, j)) continue;
            out.ok = false;
            out.witness = std::make_pair(i, j);
            return out;
        }
    return out;
}

HypothesisReport check_hypotheses(const FamilyInstance& inst) {
    HypothesisReport r;
    r.strongly_triple_intersecting_family = is_strongly_triple_intersecting_family(inst.sets);
    if (!r.strongly_triple_intersecting_family) r.messages.push_back("family is not strongly triple-intersecting");
    r.strongly_triple_intersecting_supermodular = is_strongly_triple_intersecting_supermodular(inst.sets, inst.g);
    if (!r.strongly_triple_intersecting_supermodular)
        r.messages.push_back("g is not strongly triple-intersecting supermodular");
    const LaminarCheck lam = laminar_check(inst.sets, inst.g, inst.k);
    r.laminar = lam.ok;
    if (!lam.ok)
        r.messages.push_back("L is not g-laminar: sets " + std::to_string(lam.witness->first) + " and " +
                             std::to_string(lam.witness->second) + " cross without closure/supermodularity");
    for (std::size_t i = 0; i < inst.sets.size(); ++i) {
        const int cap = std::min(cardinality(inst.sets[i]), inst.k);
        if (inst.g[i] > cap) {
            r.bounded = false;
            r.messages.push_back("set " + std::to_string(i) + ": g = " + std::to_string(inst.g[i]) +
                                 " exceeds min{|X|, k} = " + std::to_string(cap));
        }
    }
    return r;
}

FamilyInstance from_graph_stars(const demand::DemandInstance& inst) {
    const Multigraph& g = inst.graph;
    if (g.edge_count() > kMaxGround)
        throw InvalidInput("star reduction supports at most 64 edges, got " + std::to_string(g.edge_count()));
    if (const demand::Report r = demand::validate(inst); !r.ok())
        throw HypothesisViolation("demand instance violates hypotheses: " + r.messages.front());

    std::vector<ElementSet> sets;
    std::vector<int> values;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        ElementSet star = 0;
        for (EdgeId e : g.incident(v)) star |= singleton(e);
        if (!star) continue;
        const int c = inst.demand[static_cast<std::size_t>(v)];
        auto it = std::find(sets.begin(), sets.end(), star);
        if (it != sets.end()) {
            auto& merged = values[static_cast<std::size_t>(it - sets.begin())];
            merged = std::max(merged, c);
        } else {
            sets.push_back(star);
            values.push_back(c);
        }
    }
    return make_instance(g.edge_count(), inst.k, std::move(sets), std::move(values));
}

} // namespace supercolor::family
