#include "supercolor/supermodular_coloring.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <sstream>
#include <string>
#include <variant>

#include "json.hpp"
#include "supercolor/errors.hpp"

namespace supercolor::supermodular {

using family::cardinality;
using family::contains;
using family::elements;
using family::singleton;

ElementSet PartialAssignment::domain() const {
    ElementSet t = 0;
    for (std::size_t u = 0; u < color.size(); ++u)
        if (color[u] != kUncolored) t |= singleton(static_cast<int>(u));
    return t;
}

int distinct_colors(ElementSet x, const PartialAssignment& pi) {
    std::array<Color, family::kMaxGround> seen{};
    std::size_t n = 0;
    for (ElementSet s = x; s; s &= s - 1) {
        const Color c = pi.color[static_cast<std::size_t>(std::countr_zero(s))];
        if (c != kUncolored) seen[n++] = c;
    }
    std::sort(seen.begin(), seen.begin() + static_cast<std::ptrdiff_t>(n));
    return static_cast<int>(std::unique(seen.begin(), seen.begin() + static_cast<std::ptrdiff_t>(n)) - seen.begin());
}

int f_value(ElementSet x, const PartialAssignment& pi) {
    int unassigned = 0;
    for (ElementSet s = x; s; s &= s - 1)
        if (pi.color[static_cast<std::size_t>(std::countr_zero(s))] == kUncolored) ++unassigned;
    return unassigned + distinct_colors(x, pi);
}

bool is_satisfying(ElementSet x, int g, const PartialAssignment& pi) { return f_value(x, pi) >= g; }

bool is_tight(ElementSet x, int g, const PartialAssignment& pi) { return f_value(x, pi) == g; }

namespace {

std::vector<int> maximal_among(const FamilyInstance& inst, const std::vector<int>& candidates) {
    std::vector<int> out;
    for (int i : candidates) {
        const ElementSet x = inst.sets[static_cast<std::size_t>(i)];
        const bool dominated = std::any_of(candidates.begin(), candidates.end(), [&](int j) {
            const ElementSet y = inst.sets[static_cast<std::size_t>(j)];
            return j != i && (x & ~y) == 0;
        });
        if (!dominated) out.push_back(i);
    }
    std::sort(out.begin(), out.end(), [&](int a, int b) {
        return family::lex_less(inst.sets[static_cast<std::size_t>(a)], inst.sets[static_cast<std::size_t>(b)]);
    });
    return out;
}

bool has_color(ElementSet x, const PartialAssignment& pi, Color c) {
    for (ElementSet s = x; s; s &= s - 1)
        if (pi.color[static_cast<std::size_t>(std::countr_zero(s))] == c) return true;
    return false;
}

std::string set_str(ElementSet x) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (int e : elements(x)) {
        os << (first ? "" : ",") << e;
        first = false;
    }
    os << '}';
    return os.str();
}

} // namespace

std::vector<int> maximal_tight_containing(const FamilyInstance& inst, const PartialAssignment& pi, int u) {
    std::vector<int> tight;
    for (int i = 0; i < inst.size(); ++i) {
        const ElementSet x = inst.sets[static_cast<std::size_t>(i)];
        if (contains(x, u) && is_tight(x, inst.g[static_cast<std::size_t>(i)], pi)) tight.push_back(i);
    }
    return maximal_among(inst, tight);
}

namespace {

using nlohmann::json;

// Shared scanning helpers with step accounting.
class Scanner {
public:
    Scanner(const FamilyInstance& inst, SolveStats& stats, long budget) : inst_(inst), stats_(stats), budget_(budget) {}

    void charge(long n) {
        steps_ += n;
        stats_.steps += n;
        if (budget_ > 0 && steps_ > budget_)
            throw BudgetExceeded("augmentation exceeded the step budget of " + std::to_string(budget_));
    }

    std::vector<int> unsatisfied(const PartialAssignment& pi) {
        charge(inst_.size());
        std::vector<int> out;
        for (int i = 0; i < inst_.size(); ++i)
            if (!is_satisfying(inst_.sets[static_cast<std::size_t>(i)], inst_.g[static_cast<std::size_t>(i)], pi))
                out.push_back(i);
        return out;
    }

    std::vector<int> maximal_tight(const PartialAssignment& pi, int u) {
        charge(inst_.size());
        return maximal_tight_containing(inst_, pi, u);
    }

    void require_all_satisfying(const PartialAssignment& pi, const char* claim) {
        ++stats_.all_satisfying_checks;
        const auto bad = unsatisfied(pi);
        SUPERCOLOR_CLAIM(bad.empty(), claim,
                         "set " + set_str(inst_.sets[static_cast<std::size_t>(bad.empty() ? 0 : bad.front())]) +
                             " is not satisfied");
    }

    void reset() { steps_ = 0; }

private:
    const FamilyInstance& inst_;
    SolveStats& stats_;
    long budget_;
    long steps_ = 0;
};

// Parity recoloring of a chain: even positions get α, odd positions β.
PartialAssignment swap_chain(PartialAssignment pi, const std::vector<int>& chain, Color alpha, Color beta) {
    for (std::size_t j = 0; j < chain.size(); ++j) pi.color[static_cast<std::size_t>(chain[j])] = j % 2 == 0 ? alpha : beta;
    return pi;
}

BicolorChain build_chain(const FamilyInstance& inst, const PartialAssignment& base, ElementSet anchor, int x0,
                         Color alpha, Color beta, SolveStats& stats, Scanner& scan) {
    SUPERCOLOR_CLAIM(base.color[static_cast<std::size_t>(x0)] == beta, "chain-condition-1", "x0 does not carry β");
    SUPERCOLOR_CLAIM(!contains(anchor, x0), "chain-start", "x0 lies in the anchor set");
    BicolorChain chain;
    chain.elements.push_back(x0);
    for (;;) {
        ++stats.chain_checks;
        const std::size_t p = chain.elements.size() - 1;
        const int xp = chain.elements[p];
        const PartialAssignment swapped = swap_chain(base, chain.elements, alpha, beta);
        const std::vector<int> bad = scan.unsatisfied(swapped);
        if (bad.empty()) return chain;
        SUPERCOLOR_CLAIM(bad.size() == 1, "chain-single-witness",
                         std::to_string(bad.size()) + " sets unsatisfied after swapping a chain of length " +
                             std::to_string(p + 1));
        const int witness = bad.front();
        const ElementSet xset = inst.sets[static_cast<std::size_t>(witness)];
        SUPERCOLOR_CLAIM(contains(xset, xp), "chain-witness-membership", "chain element " + std::to_string(xp) + " not in its witness");
        chain.witnesses.push_back(witness);

        const Color want = base.color[static_cast<std::size_t>(xp)] == beta ? alpha : beta;
        int next = -1;
        for (int t : elements(xset))
            if (t != xp && base.color[static_cast<std::size_t>(t)] == want) {
                next = t;
                break;
            }
        SUPERCOLOR_CLAIM(next >= 0, "chain-continuation", "witness " + set_str(xset) + " has no element to swap next");
        SUPERCOLOR_CLAIM(std::find(chain.elements.begin(), chain.elements.end(), next) == chain.elements.end(),
                         "chain-distinct", "chain revisits element " + std::to_string(next));
        if (contains(anchor, next)) {
            chain.exit = next;
            return chain;
        }
        chain.elements.push_back(next);
    }
}

struct Finished {
    PartialAssignment result;
};
struct RestartFrom {
    PartialAssignment pi;
    int pivot;
    int anchor; // family index that must play the anchor role next time
};

class Augmenter {
public:
    Augmenter(const FamilyInstance& inst, const std::vector<bool>& in_l,
              const std::vector<std::array<int, 4>>& closed_pairs, SolveStats& stats, const SolveOptions& options)
        : inst_(inst),
          in_l_(in_l),
          closed_pairs_(closed_pairs),
          stats_(stats),
          options_(options),
          scan_(inst, stats, options.step_budget) {}

    void run(PartialAssignment& state, int u0) {
        SUPERCOLOR_CLAIM(!state.assigned(u0), "augment-precondition", "element already assigned");
        scan_.reset();
        const int before = cardinality(state.domain());
        PartialAssignment pi = state;
        int pivot = u0;
        std::optional<int> anchor;
        int restarts = 0;
        for (;;) {
            auto outcome = attempt(pi, pivot, anchor);
            if (auto* done = std::get_if<Finished>(&outcome)) {
                state = std::move(done->result);
                break;
            }
            auto& again = std::get<RestartFrom>(outcome);
            ++restarts;
            ++stats_.restarts;
            SUPERCOLOR_CLAIM(restarts <= 1, "restart-bound", "sequence restart taken twice for one element");
            pi = std::move(again.pi);
            pivot = again.pivot;
            anchor = again.anchor;
        }
        stats_.max_restarts_in_one_augmentation = std::max(stats_.max_restarts_in_one_augmentation, restarts);
        SUPERCOLOR_CLAIM(cardinality(state.domain()) == before + 1, "progress", "domain did not grow by one");
        scan_.require_all_satisfying(state, "invariant");
        ++stats_.augmentations;
    }

private:
    ElementSet set(int i) const { return inst_.sets[static_cast<std::size_t>(i)]; }
    int g(int i) const { return inst_.g[static_cast<std::size_t>(i)]; }

    void trace(json event) const {
        if (options_.trace) options_.trace(event.dump());
    }

    Color lowest_color_not_in(ElementSet x, const PartialAssignment& pi) const {
        for (Color c = 1; c <= inst_.k; ++c)
            if (!has_color(x, pi, c)) return c;
        return kUncolored;
    }

    // Submodularity of f over closed pairs, on a rotating window of pairs.
    void check_submodularity(const PartialAssignment& pi) {
        if (closed_pairs_.empty()) return;
        constexpr std::size_t kWindow = 256;
        const std::size_t n = std::min(kWindow, closed_pairs_.size());
        for (std::size_t t = 0; t < n; ++t) {
            const auto& [a, b, un, in] = closed_pairs_[(pair_cursor_ + t) % closed_pairs_.size()];
            ++stats_.submodularity_checks;
            SUPERCOLOR_CLAIM(f_value(set(a), pi) + f_value(set(b), pi) >= f_value(set(un), pi) + f_value(set(in), pi),
                             "submodularity", "f is not submodular on " + set_str(set(a)) + ", " + set_str(set(b)));
        }
        pair_cursor_ = (pair_cursor_ + n) % closed_pairs_.size();
        scan_.charge(static_cast<long>(n));
    }

    std::variant<Finished, RestartFrom> attempt(PartialAssignment pi0, int u0, std::optional<int> forced_anchor) {
        check_submodularity(pi0);
        scan_.require_all_satisfying(pi0, "invariant");

        const std::vector<int> f0 = scan_.maximal_tight(pi0, u0);
        ++stats_.at_most_two_maximal_checks;
        SUPERCOLOR_CLAIM(f0.size() <= 2, "at-most-two-maximal",
                         std::to_string(f0.size()) + " maximal tight sets contain element " + std::to_string(u0));

        if (f0.empty()) {
            pi0.color[static_cast<std::size_t>(u0)] = 1;
            ++stats_.empty_tight_family;
            trace({{"step", "free"}, {"element", u0}, {"color", 1}});
            return Finished{std::move(pi0)};
        }
        if (f0.size() == 1) {
            const Color c = lowest_color_not_in(set(f0[0]), pi0);
            SUPERCOLOR_CLAIM(c != kUncolored, "unique-maximal", "tight set already uses all k colors");
            pi0.color[static_cast<std::size_t>(u0)] = c;
            ++stats_.unique_maximal;
            trace({{"step", "unique-maximal"}, {"element", u0}, {"set", elements(set(f0[0]))}, {"color", c}});
            return Finished{std::move(pi0)};
        }

        int anchor = -1;
        int moving = -1;
        if (forced_anchor) {
            SUPERCOLOR_CLAIM(*forced_anchor == f0[0] || *forced_anchor == f0[1], "restart",
                             "designated anchor is not maximal after restart");
            anchor = *forced_anchor;
            moving = anchor == f0[0] ? f0[1] : f0[0];
        } else {
            SUPERCOLOR_CLAIM(!(in_l_[static_cast<std::size_t>(f0[0])] && in_l_[static_cast<std::size_t>(f0[1])]),
                             "laminar-pair", "both maximal tight sets lie in L");
            if (in_l_[static_cast<std::size_t>(f0[0])]) {
                anchor = f0[0];
                moving = f0[1];
            } else {
                anchor = f0[1]; // lexicographically larger plays the anchor when neither is in L
                moving = f0[0];
            }
        }
        SUPERCOLOR_CLAIM(!in_l_[static_cast<std::size_t>(moving)], "sequence-condition-6", "Y0 lies in L");
        const ElementSet z = set(anchor);
        const ElementSet t0 = pi0.domain();

        // Sequence (Y_0,u_0), ..., (Y_l,u_l). alpha[i] = π0(u_i) for i >= 1.
        std::vector<int> us{u0};
        std::vector<int> ys{moving};
        std::vector<Color> alpha{kUncolored};

        // π_i: u_j -> α_{j+1} for j < i, u_i unassigned, otherwise π0.
        auto shifted = [&](std::size_t i, Color next_alpha) {
            PartialAssignment pi = pi0;
            for (std::size_t j = 0; j < i; ++j)
                pi.color[static_cast<std::size_t>(us[j])] = j + 1 < alpha.size() ? alpha[j + 1] : next_alpha;
            pi.color[static_cast<std::size_t>(us[i])] = kUncolored;
            return pi;
        };

        trace({{"step", "sequence-start"}, {"pivot", u0}, {"anchor", elements(z)}, {"moving", elements(set(moving))}});

        Color next_alpha = kUncolored;
        for (;;) {
            const std::size_t l = us.size() - 1;
            const ElementSet yl = set(ys[l]);
            stats_.longest_sequence = std::max<long>(stats_.longest_sequence, static_cast<long>(l));

            for (std::size_t i = 0; i <= l; ++i)
                for (std::size_t j = 0; j <= l; ++j)
                    if (i != j && contains(set(ys[j]), us[i])) {
                        ++stats_.equal_sets_checks;
                        SUPERCOLOR_CLAIM(ys[i] == ys[j], "sequence-equal-sets", "u_i in Y_j but Y_i != Y_j");
                    }

            // Color for u_l: new at Y_l and distinct from colors handed to earlier u_i inside Y_l.
            ElementSet pi0_colors_owner = yl & t0;
            int tilde = 0;
            for (std::size_t i = 0; i <= l; ++i)
                if (contains(yl, us[i])) ++tilde;
            ++stats_.color_bound_checks;
            SUPERCOLOR_CLAIM(distinct_colors(pi0_colors_owner, pi0) + tilde <= inst_.k, "color-bound",
                             "color bound fails for Y_l = " + set_str(yl));
            next_alpha = kUncolored;
            for (Color c = 1; c <= inst_.k && next_alpha == kUncolored; ++c) {
                if (has_color(yl & t0, pi0, c)) continue;
                bool clash = false;
                for (std::size_t i = 0; i < l; ++i)
                    if (contains(yl, us[i]) && alpha[i + 1] == c) clash = true;
                if (!clash) next_alpha = c;
            }
            SUPERCOLOR_CLAIM(next_alpha != kUncolored, "color-bound", "no admissible color for Y_l");

            if (!has_color(z & t0, pi0, next_alpha)) {
                PartialAssignment done = shifted(l, next_alpha);
                done.color[static_cast<std::size_t>(us[l])] = next_alpha;
                ++stats_.sequence_finishes;
                trace({{"step", "sequence-finish"}, {"length", l}, {"color", next_alpha}});
                return Finished{std::move(done)};
            }

            int candidate = -1;
            for (int t : elements(z & t0))
                if (pi0.color[static_cast<std::size_t>(t)] == next_alpha &&
                    std::find(us.begin(), us.end(), t) == us.end()) {
                    candidate = t;
                    break;
                }
            if (candidate < 0) break;

            us.push_back(candidate);
            PartialAssignment pi_next = shifted(l + 1, next_alpha);
            scan_.require_all_satisfying(pi_next, "sequence-satisfying");
            const std::vector<int> fn = scan_.maximal_tight(pi_next, candidate);
            ++stats_.only_two_maximal_checks;
            SUPERCOLOR_CLAIM(std::find(fn.begin(), fn.end(), anchor) != fn.end() && fn.size() <= 2, "anchor-maximal",
                             "anchor is not among at most two maximal sets for u_" + std::to_string(l + 1));
            if (fn.size() == 1) {
                const Color c = lowest_color_not_in(z & t0, pi0);
                SUPERCOLOR_CLAIM(c != kUncolored, "anchor-spare", "anchor set uses all k colors");
                pi_next.color[static_cast<std::size_t>(candidate)] = c;
                ++stats_.sequence_finishes;
                trace({{"step", "anchor-unique"}, {"element", candidate}, {"color", c}});
                return Finished{std::move(pi_next)};
            }
            const int y_next = fn[0] == anchor ? fn[1] : fn[0];
            if (!in_l_[static_cast<std::size_t>(y_next)]) {
                ys.push_back(y_next);
                alpha.push_back(next_alpha);
                ++stats_.sequence_extensions;
                trace({{"step", "sequence-extend"}, {"element", candidate}, {"set", elements(set(y_next))},
                       {"color", next_alpha}});
                continue;
            }
            SUPERCOLOR_CLAIM(!in_l_[static_cast<std::size_t>(anchor)], "laminar-pair",
                             "anchor and new maximal set both lie in L");
            trace({{"step", "restart"}, {"pivot", candidate}, {"anchor", elements(set(y_next))}});
            return RestartFrom{std::move(pi_next), candidate, y_next};
        }

        const std::size_t l = us.size() - 1;
        const ElementSet yl = set(ys[l]);
        const Color beta = lowest_color_not_in(z & t0, pi0);
        SUPERCOLOR_CLAIM(beta != kUncolored, "spare-color", "anchor set uses all k colors");
        PartialAssignment pil = shifted(l, next_alpha);

        if (!has_color(yl, pil, beta)) {
            pil.color[static_cast<std::size_t>(us[l])] = beta;
            ++stats_.spare_color_finishes;
            trace({{"step", "spare-color"}, {"element", us[l]}, {"color", beta}});
            return Finished{std::move(pil)};
        }

        int x0 = -1;
        for (int t : elements(yl))
            if (pil.color[static_cast<std::size_t>(t)] == beta) {
                x0 = t;
                break;
            }
        const BicolorChain chain = build_chain(inst_, pil, z, x0, next_alpha, beta, stats_, scan_);
        stats_.longest_chain = std::max<long>(stats_.longest_chain, static_cast<long>(chain.elements.size()));
        trace({{"step", "chain"}, {"elements", chain.elements}, {"witnesses", chain.witnesses},
               {"exit", chain.exit ? json(*chain.exit) : json(nullptr)}});

        if (!chain.exit) {
            PartialAssignment done = swap_chain(pil, chain.elements, next_alpha, beta);
            done.color[static_cast<std::size_t>(us[l])] = beta;
            scan_.require_all_satisfying(done, "clean-finish");
            ++stats_.chain_clean_finishes;
            return Finished{std::move(done)};
        }

        const int exit = *chain.exit;
        SUPERCOLOR_CLAIM(pil.color[static_cast<std::size_t>(exit)] == next_alpha, "chain-exit",
                         "chain enters the anchor set on a non-α element");
        std::size_t q = 0;
        while (q < l && us[q] != exit) ++q;
        SUPERCOLOR_CLAIM(q < l, "chain-exit", "chain enters the anchor set outside u_0..u_{l-1}");
        SUPERCOLOR_CLAIM(alpha[q + 1] == next_alpha, "chain-exit", "α_{q+1} differs from α_{l+1}");

        std::vector<int> full = chain.elements;
        full.push_back(exit);
        scan_.require_all_satisfying(swap_chain(pil, full, next_alpha, beta), "exit-finish");
        for (std::size_t i = l; i-- > q + 1;)
            scan_.require_all_satisfying(swap_chain(shifted(i, next_alpha), full, next_alpha, beta), "exit-finish-shifted");
        PartialAssignment done = swap_chain(shifted(q + 1, next_alpha), full, next_alpha, beta);
        done.color[static_cast<std::size_t>(us[q + 1])] = alpha[q + 1];
        scan_.require_all_satisfying(done, "exit-finish-shifted");
        ++stats_.chain_exit_finishes;
        trace({{"step", "chain-exit"}, {"q", q}, {"element", exit}});
        return Finished{std::move(done)};
    }

    const FamilyInstance& inst_;
    const std::vector<bool>& in_l_;
    const std::vector<std::array<int, 4>>& closed_pairs_;
    SolveStats& stats_;
    const SolveOptions& options_;
    Scanner scan_;
    std::size_t pair_cursor_ = 0;
};

std::vector<bool> l_membership(const FamilyInstance& inst) {
    std::vector<bool> in_l(inst.sets.size(), false);
    for (int i : family::laminar_check(inst.sets, inst.g, inst.k).members) in_l[static_cast<std::size_t>(i)] = true;
    return in_l;
}

std::vector<std::array<int, 4>> closed_pairs(const FamilyInstance& inst) {
    std::map<ElementSet, int> idx;
    for (int i = 0; i < inst.size(); ++i) idx.emplace(inst.sets[static_cast<std::size_t>(i)], i);
    std::vector<std::array<int, 4>> out;
    for (int a = 0; a < inst.size(); ++a)
        for (int b = a + 1; b < inst.size(); ++b) {
            auto un = idx.find(inst.sets[static_cast<std::size_t>(a)] | inst.sets[static_cast<std::size_t>(b)]);
            auto in = idx.find(inst.sets[static_cast<std::size_t>(a)] & inst.sets[static_cast<std::size_t>(b)]);
            if (un != idx.end() && in != idx.end()) out.push_back({a, b, un->second, in->second});
        }
    return out;
}

void require_hypotheses(const FamilyInstance& inst) {
    const family::HypothesisReport r = family::check_hypotheses(inst);
    if (r.ok()) return;
    std::ostringstream os;
    os << "family instance violates hypotheses:";
    for (const auto& m : r.messages) os << "\n  " << m;
    throw HypothesisViolation(os.str());
}

} // namespace

void augment(const FamilyInstance& inst, PartialAssignment& state, int u0, SolveStats& stats,
             const SolveOptions& options) {
    const auto in_l = l_membership(inst);
    const auto pairs = closed_pairs(inst);
    Augmenter(inst, in_l, pairs, stats, options).run(state, u0);
}

BicolorChain bicolor_chain(const FamilyInstance& inst, const PartialAssignment& base, ElementSet anchor, int x0,
                           Color alpha, Color beta, SolveStats& stats) {
    Scanner scan(inst, stats, 0);
    return build_chain(inst, base, anchor, x0, alpha, beta, stats, scan);
}

std::vector<Color> solve(const FamilyInstance& inst, const SolveOptions& options, SolveStats* stats) {
    require_hypotheses(inst);
    SolveStats local;
    SolveStats& st = stats ? *stats : local;
    const auto in_l = l_membership(inst);
    const auto pairs = closed_pairs(inst);
    Augmenter aug(inst, in_l, pairs, st, options);
    PartialAssignment pa(inst.ground);
    const long start = st.augmentations;
    for (int u = 0; u < inst.ground; ++u)
        if (!pa.assigned(u)) aug.run(pa, u);
    SUPERCOLOR_CLAIM(st.augmentations - start == inst.ground, "progress", "expected one augmentation per element");
    SUPERCOLOR_CLAIM(verify(inst, pa.color).empty(), "output", "solver output fails its own verifier");
    return pa.color;
}

std::vector<int> verify(const FamilyInstance& inst, const std::vector<Color>& assignment) {
    if (static_cast<int>(assignment.size()) != inst.ground)
        throw InvalidInput("assignment has " + std::to_string(assignment.size()) + " entries for a ground set of " +
                           std::to_string(inst.ground));
    for (std::size_t u = 0; u < assignment.size(); ++u)
        if (assignment[u] < 1 || assignment[u] > inst.k)
            throw InvalidInput("element " + std::to_string(u) + " has color " + std::to_string(assignment[u]) +
                               " outside 1.." + std::to_string(inst.k));
    PartialAssignment pa;
    pa.color = assignment;
    std::vector<int> bad;
    for (int i = 0; i < inst.size(); ++i)
        if (distinct_colors(inst.sets[static_cast<std::size_t>(i)], pa) < inst.g[static_cast<std::size_t>(i)])
            bad.push_back(i);
    return bad;
}

} // namespace supercolor::supermodular
