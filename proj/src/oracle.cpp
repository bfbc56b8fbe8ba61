#include "supercolor/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <random>
#include <string>

#include "supercolor/errors.hpp"

namespace supercolor::oracle {

namespace {

// Elements 0..n-1 to be colored from 1..k; each constraint asks for `need`
// distinct colors among its members.
struct Problem {
    int n = 0;
    int k = 1;
    std::vector<std::vector<int>> members;
    std::vector<int> need;
    std::vector<std::vector<int>> of; // constraints containing each element
};

void index_constraints(Problem& p) {
    p.of.assign(static_cast<std::size_t>(p.n), {});
    for (std::size_t c = 0; c < p.members.size(); ++c)
        for (int e : p.members[c]) p.of[static_cast<std::size_t>(e)].push_back(static_cast<int>(c));
}

void require_budget(int k, int n, const SearchBudget& budget) {
    long long total = 1;
    for (int i = 0; i < n; ++i) {
        total *= k;
        if (total > budget.max_assignments)
            throw BudgetExceeded(std::to_string(k) + "^" + std::to_string(n) + " assignments exceed the budget of " +
                                 std::to_string(budget.max_assignments));
    }
}

// Depth-first search in lexicographic color order. f(X) = unassigned + distinct
// never grows along a branch, so min{k, f(X)} < need(X) prunes soundly.
class Searcher {
public:
    explicit Searcher(const Problem& p)
        : p_(p),
          color_(static_cast<std::size_t>(p.n), kUncolored),
          counts_(p.members.size() * static_cast<std::size_t>(p.k + 1), 0),
          distinct_(p.members.size(), 0),
          unassigned_(p.members.size()) {
        for (std::size_t c = 0; c < p.members.size(); ++c) unassigned_[c] = static_cast<int>(p.members[c].size());
    }

    bool initially_viable() const {
        for (std::size_t c = 0; c < p_.members.size(); ++c)
            if (!viable(c)) return false;
        return true;
    }

    // Fixes the colors of elements 0..prefix.size()-1, then searches the rest.
    // `stop` reports that a lower-numbered partition already has a witness.
    template <typename Stop>
    std::optional<std::vector<Color>> run(const std::vector<Color>& prefix, Stop stop) {
        // Constraints with no members are never revisited by the search.
        if (!initially_viable()) return std::nullopt;
        for (std::size_t i = 0; i < prefix.size(); ++i)
            if (!assign(static_cast<int>(i), prefix[i])) return std::nullopt;
        if (dfs(static_cast<int>(prefix.size()), stop)) return color_;
        return std::nullopt;
    }

    long long nodes() const noexcept { return nodes_; }

private:
    bool viable(std::size_t c) const {
        return std::min(p_.k, distinct_[c] + unassigned_[c]) >= p_.need[c];
    }

    int& count(std::size_t c, Color col) { return counts_[c * static_cast<std::size_t>(p_.k + 1) + static_cast<std::size_t>(col)]; }

    // Applies the color fully even when a constraint dies, so unassign can undo it.
    bool assign(int e, Color col) {
        ++nodes_;
        color_[static_cast<std::size_t>(e)] = col;
        bool ok = true;
        for (int ci : p_.of[static_cast<std::size_t>(e)]) {
            const auto c = static_cast<std::size_t>(ci);
            --unassigned_[c];
            if (count(c, col)++ == 0) ++distinct_[c];
            ok = ok && viable(c);
        }
        return ok;
    }

    void unassign(int e) {
        const Color col = color_[static_cast<std::size_t>(e)];
        for (int ci : p_.of[static_cast<std::size_t>(e)]) {
            const auto c = static_cast<std::size_t>(ci);
            ++unassigned_[c];
            if (--count(c, col) == 0) --distinct_[c];
        }
        color_[static_cast<std::size_t>(e)] = kUncolored;
    }

    template <typename Stop>
    bool dfs(int e, Stop& stop) {
        if (e == p_.n) return true;
        if (stop()) return false;
        for (Color col = 1; col <= p_.k; ++col) {
            const bool ok = assign(e, col);
            if (ok && dfs(e + 1, stop)) return true;
            unassign(e);
        }
        return false;
    }

    const Problem& p_;
    std::vector<Color> color_;
    std::vector<int> counts_;
    std::vector<int> distinct_;
    std::vector<int> unassigned_;
    long long nodes_ = 0;
};

// Element 0 is pinned to color 1 (relabeling colors preserves every count);
// the next `depth` elements enumerate the partitions in lexicographic order.
struct Partitioning {
    int depth = 0;
    long long count = 1;

    explicit Partitioning(const Problem& p) {
        depth = std::max(0, std::min(p.n - 1, 2));
        for (int i = 0; i < depth; ++i) count *= p.k;
    }

    std::vector<Color> prefix(const Problem& p, long long index) const {
        std::vector<Color> out(static_cast<std::size_t>(depth + 1), 1);
        for (int i = depth; i >= 1; --i) {
            out[static_cast<std::size_t>(i)] = static_cast<Color>(index % p.k) + 1;
            index /= p.k;
        }
        return out;
    }
};

SearchResult search_serial(const Problem& p) {
    SearchResult r;
    if (p.n == 0) {
        Searcher s(p);
        r.feasible = s.initially_viable();
        if (r.feasible) r.witness = std::vector<Color>{};
        return r;
    }
    const Partitioning parts(p);
    auto never = [] { return false; };
    for (long long i = 0; i < parts.count; ++i) {
        Searcher s(p);
        auto w = s.run(parts.prefix(p, i), never);
        r.nodes += s.nodes();
        if (w) {
            r.feasible = true;
            r.witness = std::move(w);
            break;
        }
    }
    return r;
}

SearchResult search_parallel(const Problem& p) {
    if (p.n == 0) return search_serial(p);
    const Partitioning parts(p);
    std::vector<std::optional<std::vector<Color>>> found(static_cast<std::size_t>(parts.count));
    std::vector<long long> nodes(static_cast<std::size_t>(parts.count), 0);
    std::atomic<long long> best{parts.count};

#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < parts.count; ++i) {
        if (i > best.load(std::memory_order_relaxed)) continue;
        Searcher s(p);
        auto stop = [&] { return best.load(std::memory_order_relaxed) < i; };
        auto w = s.run(parts.prefix(p, i), stop);
        nodes[static_cast<std::size_t>(i)] = s.nodes();
        if (w) {
            found[static_cast<std::size_t>(i)] = std::move(w);
            long long cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
        }
    }

    SearchResult r;
    r.nodes = std::accumulate(nodes.begin(), nodes.end(), 0LL);
    for (auto& w : found)
        if (w) {
            r.feasible = true;
            r.witness = std::move(w);
            break;
        }
    return r;
}

Problem edge_problem(const demand::DemandInstance& inst, const SearchBudget& budget) {
    const Multigraph& g = inst.graph;
    if (inst.k < 1) throw InvalidInput("k must be positive");
    if (static_cast<int>(inst.demand.size()) != g.vertex_count())
        throw InvalidInput("demand has " + std::to_string(inst.demand.size()) + " entries for " +
                           std::to_string(g.vertex_count()) + " vertices");
    require_budget(inst.k, g.edge_count(), budget);
    Problem p;
    p.n = g.edge_count();
    p.k = inst.k;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        auto inc = g.incident(v);
        p.members.emplace_back(inc.begin(), inc.end());
        p.need.push_back(inst.demand[static_cast<std::size_t>(v)]);
    }
    index_constraints(p);
    return p;
}

Problem family_problem(const family::FamilyInstance& inst, const SearchBudget& budget) {
    if (inst.k < 1) throw InvalidInput("k must be positive");
    require_budget(inst.k, inst.ground, budget);
    Problem p;
    p.n = inst.ground;
    p.k = inst.k;
    for (int i = 0; i < inst.size(); ++i) {
        p.members.push_back(family::elements(inst.sets[static_cast<std::size_t>(i)]));
        p.need.push_back(inst.g[static_cast<std::size_t>(i)]);
    }
    index_constraints(p);
    return p;
}

} // namespace

SearchResult brute_force_edge(const demand::DemandInstance& inst, const SearchBudget& budget) {
    return search_parallel(edge_problem(inst, budget));
}

SearchResult brute_force_edge_serial(const demand::DemandInstance& inst, const SearchBudget& budget) {
    return search_serial(edge_problem(inst, budget));
}

SearchResult brute_force_family(const family::FamilyInstance& inst, const SearchBudget& budget) {
    return search_parallel(family_problem(inst, budget));
}

SearchResult brute_force_family_serial(const family::FamilyInstance& inst, const SearchBudget& budget) {
    return search_serial(family_problem(inst, budget));
}

int chromatic_index(const Multigraph& g, const SearchBudget& budget) {
    if (g.edge_count() == 0) return 0;
    demand::DemandInstance inst{g, 1, {}};
    for (VertexId v = 0; v < g.vertex_count(); ++v) inst.demand.push_back(g.degree(v));
    for (int k = max_degree(g);; ++k) {
        inst.k = k;
        if (brute_force_edge(inst, budget).feasible) return k;
    }
}

Multigraph gen_multigraph(int n, int m, int max_mult, std::uint64_t seed) {
    if (n < 0 || m < 0 || max_mult < 1) throw InvalidInput("gen_multigraph needs n, m >= 0 and max_mult >= 1");
    const long long slots = static_cast<long long>(n) * (n - 1) / 2 * max_mult;
    if (m > slots)
        throw InvalidInput(std::to_string(m) + " edges do not fit on " + std::to_string(n) +
                           " vertices with multiplicity " + std::to_string(max_mult));
    std::vector<Edge> pool;
    for (VertexId a = 0; a < n; ++a)
        for (VertexId b = a + 1; b < n; ++b)
            for (int r = 0; r < max_mult; ++r) pool.push_back({a, b});
    std::mt19937_64 rng(seed);
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(static_cast<std::size_t>(m));
    return Multigraph(n, std::move(pool));
}

demand::DemandInstance gen_demand(const Multigraph& g, int k, std::uint64_t seed) {
    if (k < 1) throw InvalidInput("k must be positive");
    std::mt19937_64 rng(seed);
    demand::DemandInstance inst{g, k, std::vector<int>(static_cast<std::size_t>(g.vertex_count()), 0)};
    constexpr int kRedraws = 32;
    for (int attempt = 0; attempt < kRedraws; ++attempt) {
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            std::uniform_int_distribution<int> dist(0, std::min(g.degree(v), k));
            inst.demand[static_cast<std::size_t>(v)] = dist(rng);
        }
        if (is_stable(g, demand::high_demand_set(inst))) return inst;
    }
    for (const Edge& e : g.edges()) {
        const VertexSet s = demand::high_demand_set(inst);
        if (!s.contains(e.a) || !s.contains(e.b)) continue;
        const VertexId v = std::min(e.a, e.b);
        const int capped = k - g.multiplicity_at(v);
        if (capped < 0)
            throw GenerationFailure("k = " + std::to_string(k) + " is below the multiplicity at vertex " +
                                    std::to_string(v));
        inst.demand[static_cast<std::size_t>(v)] = std::min(inst.demand[static_cast<std::size_t>(v)], capped);
    }
    if (!is_stable(g, demand::high_demand_set(inst)))
        throw GenerationFailure("could not make the high-demand set stable");
    return inst;
}

FamilyShape parse_shape(std::string_view name) {
    if (name == "stars") return FamilyShape::stars;
    if (name == "intervals") return FamilyShape::intervals;
    if (name == "laminar") return FamilyShape::laminar;
    if (name == "random-filtered") return FamilyShape::random_filtered;
    throw InvalidInput("unknown family shape '" + std::string(name) + "'");
}

std::string_view shape_name(FamilyShape shape) {
    switch (shape) {
    case FamilyShape::stars: return "stars";
    case FamilyShape::intervals: return "intervals";
    case FamilyShape::laminar: return "laminar";
    case FamilyShape::random_filtered: return "random-filtered";
    }
    return "?";
}

namespace {

using family::ElementSet;

int rand_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

ElementSet random_subset(std::mt19937_64& rng, int ground, double p) {
    std::bernoulli_distribution coin(p);
    ElementSet s = 0;
    for (int e = 0; e < ground; ++e)
        if (coin(rng)) s |= family::singleton(e);
    return s;
}

// g(X) = max(0, |X ∩ W| - t): a convex function of a modular one, hence
// supermodular on any closed pair, and never above |X|.
std::vector<int> convex_demand(std::mt19937_64& rng, const std::vector<ElementSet>& sets, int ground, int k) {
    const ElementSet w = random_subset(rng, ground, 0.8);
    const int size = family::cardinality(w);
    const int t = rand_int(rng, std::max(0, size - k), std::max(0, size - 1));
    std::vector<int> g;
    for (ElementSet x : sets) g.push_back(std::max(0, family::cardinality(x & w) - t));
    return g;
}

std::vector<ElementSet> interval_sets(std::mt19937_64& rng, int ground) {
    std::vector<ElementSet> sets;
    const bool through_point = rand_int(rng, 0, 1) == 1;
    const int point = rand_int(rng, 0, ground - 1);
    for (int i = 0; i < ground; ++i)
        for (int j = i; j < ground; ++j) {
            if (through_point && (point < i || point > j)) continue;
            ElementSet x = 0;
            for (int e = i; e <= j; ++e) x |= family::singleton(e);
            sets.push_back(x);
        }
    return sets;
}

void laminar_split(std::mt19937_64& rng, ElementSet s, std::vector<ElementSet>& out) {
    if (!s) return;
    if (rand_int(rng, 0, 3) != 0) out.push_back(s);
    const auto elems = family::elements(s);
    if (elems.size() < 2 || rand_int(rng, 0, 4) == 0) return;
    const int parts = rand_int(rng, 2, std::min<int>(3, static_cast<int>(elems.size())));
    std::vector<ElementSet> pieces(static_cast<std::size_t>(parts), 0);
    std::vector<int> shuffled = elems;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (std::size_t i = 0; i < shuffled.size(); ++i) {
        const std::size_t slot = i < pieces.size() ? i : static_cast<std::size_t>(rand_int(rng, 0, parts - 1));
        pieces[slot] |= family::singleton(shuffled[i]);
    }
    for (ElementSet piece : pieces) laminar_split(rng, piece, out);
}

// Closes a family under union and intersection of intersecting pairs, or
// gives up once it grows past `cap`.
bool close_family(std::vector<ElementSet>& sets, std::size_t cap) {
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < sets.size(); ++i)
            for (std::size_t j = i + 1; j < sets.size(); ++j) {
                if (!(sets[i] & sets[j])) continue;
                for (ElementSet x : {sets[i] | sets[j], sets[i] & sets[j]})
                    if (std::find(sets.begin(), sets.end(), x) == sets.end()) {
                        sets.push_back(x);
                        changed = true;
                        if (sets.size() > cap) return false;
                    }
            }
    }
    return true;
}

std::optional<family::FamilyInstance> candidate(std::mt19937_64& rng, int ground, int k, FamilyShape shape) {
    std::vector<ElementSet> sets;
    std::vector<int> g;
    switch (shape) {
    case FamilyShape::stars: {
        if (ground == 0) return family::make_instance(0, k, {}, {});
        const int max_mult = rand_int(rng, 1, std::min(3, k));
        int n = 2;
        while (static_cast<long long>(n) * (n - 1) / 2 * max_mult < ground) ++n;
        n += rand_int(rng, 0, 3);
        const Multigraph graph = gen_multigraph(n, ground, max_mult, rng());
        return family::from_graph_stars(gen_demand(graph, k, rng()));
    }
    case FamilyShape::intervals:
        if (ground == 0) return family::make_instance(0, k, {}, {});
        sets = interval_sets(rng, ground);
        g = convex_demand(rng, sets, ground, k);
        break;
    case FamilyShape::laminar: {
        const ElementSet all = ground == family::kMaxGround ? ~ElementSet{0} : (ElementSet{1} << ground) - 1;
        laminar_split(rng, all, sets);
        for (ElementSet x : sets) g.push_back(rand_int(rng, 0, std::min(family::cardinality(x), k)));
        break;
    }
    case FamilyShape::random_filtered: {
        const int count = rand_int(rng, 2, 5);
        for (int i = 0; i < count; ++i) {
            const ElementSet x = random_subset(rng, ground, 0.45);
            if (x && std::find(sets.begin(), sets.end(), x) == sets.end()) sets.push_back(x);
        }
        if (rand_int(rng, 0, 2) != 0 && !close_family(sets, 24)) return std::nullopt;
        if (rand_int(rng, 0, 1) == 0) {
            g = convex_demand(rng, sets, ground, k);
        } else {
            for (ElementSet x : sets) g.push_back(rand_int(rng, 0, std::min(family::cardinality(x), k)));
        }
        break;
    }
    }
    return family::make_instance(ground, k, std::move(sets), std::move(g));
}

} // namespace

family::FamilyInstance gen_family(int ground, int k, FamilyShape shape, std::uint64_t seed) {
    if (ground < 0 || ground > family::kMaxGround) throw InvalidInput("ground size must be in 0..64");
    if (k < 1) throw InvalidInput("k must be positive");
    std::mt19937_64 rng(seed);
    constexpr int kAttempts = 500;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        auto inst = candidate(rng, ground, k, shape);
        if (inst && family::check_hypotheses(*inst).ok()) return std::move(*inst);
    }
    throw GenerationFailure("no valid " + std::string(shape_name(shape)) + " instance after " +
                            std::to_string(kAttempts) + " attempts");
}

} // namespace supercolor::oracle
