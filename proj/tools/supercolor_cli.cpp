// supercolor: command-line front end for the edge-coloring and set-family
// solvers, their checkers and the brute-force oracle.
//
// stdout carries one JSON report per invocation; stderr gets a one-line
// summary. Exit codes: 0 ok/feasible, 1 violation/infeasible, 2 usage, IO or
// malformed input, 3 internal assertion.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "supercolor/demand_coloring.hpp"
#include "supercolor/errors.hpp"
#include "supercolor/io.hpp"
#include "supercolor/oracle.hpp"
#include "supercolor/orientation_gupta.hpp"
#include "supercolor/set_family.hpp"
#include "supercolor/supermodular_coloring.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace supercolor;

namespace {

enum Exit { kOk = 0, kViolation = 1, kUsage = 2, kInternal = 3 };

struct Outcome {
    int code = kOk;
    std::string verdict = "ok";
    json details = json::object();
    json assertions = json::object();
    std::optional<std::string> witness;
    std::string summary;
};

json stats_json(const demand::SolveStats& s) {
    return {{"augmentations", s.augmentations},
            {"direct_extensions", s.direct_extensions},
            {"saturated_pivot", s.saturated_pivot},
            {"fan_shifts", s.fan_shifts},
            {"case_one", s.case_one},
            {"case_two", s.case_two},
            {"case_three", s.case_three},
            {"restarts", s.restarts},
            {"max_restarts_in_one_augmentation", s.max_restarts_in_one_augmentation},
            {"invariant_checks", s.invariant_checks},
            {"max_fan_length", s.max_fan_length}};
}

json stats_json(const orientation::GuptaStats& s) {
    return {{"oriented_edges", s.oriented_edges},
            {"rounds", s.rounds},
            {"negative_demand_vertices", s.negative_demand_vertices},
            {"precondition_checks", s.precondition_checks},
            {"demand", stats_json(s.demand)}};
}

json stats_json(const supermodular::SolveStats& s) {
    return {{"augmentations", s.augmentations},
            {"empty_tight_family", s.empty_tight_family},
            {"unique_maximal", s.unique_maximal},
            {"sequence_finishes", s.sequence_finishes},
            {"sequence_extensions", s.sequence_extensions},
            {"restarts", s.restarts},
            {"max_restarts_in_one_augmentation", s.max_restarts_in_one_augmentation},
            {"spare_color_finishes", s.spare_color_finishes},
            {"chain_clean_finishes", s.chain_clean_finishes},
            {"chain_exit_finishes", s.chain_exit_finishes},
            {"longest_chain", s.longest_chain},
            {"longest_sequence", s.longest_sequence},
            {"submodularity_checks", s.submodularity_checks},
            {"at_most_two_maximal_checks", s.at_most_two_maximal_checks},
            {"all_satisfying_checks", s.all_satisfying_checks},
            {"only_two_maximal_checks", s.only_two_maximal_checks},
            {"equal_sets_checks", s.equal_sets_checks},
            {"color_bound_checks", s.color_bound_checks},
            {"chain_checks", s.chain_checks},
            {"steps", s.steps}};
}

Outcome violation(std::string verdict, std::string summary, json details = json::object()) {
    Outcome o;
    o.code = kViolation;
    o.verdict = std::move(verdict);
    o.summary = std::move(summary);
    o.details = std::move(details);
    return o;
}

json report_json(const demand::Report& r) {
    return {{"messages", r.messages}, {"vertices", r.vertices}, {"edges", r.edges}};
}

// Options shared by the handlers; filled in by CLI11.
struct Options {
    std::string input;
    std::string second; // coloring file for verify
    std::string output;
    std::string trace_path;
    std::string each_dir;
    std::string mode;
    std::optional<int> k;
    long long budget = 5'000'000;
    std::uint64_t seed = 0;
    int n = 6;
    int m = 10;
    int max_mult = 2;
    int ground = 6;
    std::string shape = "intervals";
};

class TraceFile {
public:
    explicit TraceFile(const std::string& path) {
        if (path.empty()) return;
        out_.open(path);
        if (!out_) throw InvalidInput("cannot write trace file " + path);
    }
    TraceSink sink() {
        if (!out_.is_open()) return {};
        return [this](std::string_view line) { out_ << line << '\n'; };
    }

private:
    std::ofstream out_;
};

std::string default_coloring_path(const std::string& input) {
    const fs::path p(input);
    return (p.parent_path() / (p.stem().string() + ".coloring.json")).string();
}

Outcome write_coloring(const std::vector<Color>& colors, const std::string& path, Outcome o) {
    io::write_file(path, io::colors_to_json(colors));
    o.witness = path;
    o.details["colors"] = colors;
    return o;
}

// ---- handlers -----------------------------------------------------------

Outcome cmd_check(const Options& opt) {
    const std::string text = io::read_file(opt.input);
    switch (io::detect_kind(text)) {
    case io::InstanceKind::graph: {
        const Multigraph g = io::parse_graph(text);
        Outcome o;
        o.details = {{"kind", "graph"}, {"max_degree", max_degree(g)}, {"multiplicity", graph_multiplicity(g)}};
        o.summary = "graph is well formed";
        return o;
    }
    case io::InstanceKind::demand: {
        const demand::Report r = demand::validate(io::parse_demand(text));
        if (!r.ok()) return violation("violation", r.messages.front(), {{"kind", "demand"}, {"report", report_json(r)}});
        Outcome o;
        o.details = {{"kind", "demand"}};
        o.summary = "demand instance satisfies the solver hypotheses";
        return o;
    }
    case io::InstanceKind::family: {
        const family::HypothesisReport r = family::check_hypotheses(io::parse_family(text));
        json d = {{"kind", "family"},
                  {"strongly_triple_intersecting_family", r.strongly_triple_intersecting_family},
                  {"strongly_triple_intersecting_supermodular", r.strongly_triple_intersecting_supermodular},
                  {"laminar", r.laminar},
                  {"bounded", r.bounded},
                  {"messages", r.messages}};
        if (!r.ok()) return violation("violation", r.messages.front(), std::move(d));
        Outcome o;
        o.details = std::move(d);
        o.summary = "family instance satisfies the solver hypotheses";
        return o;
    }
    case io::InstanceKind::coloring: break;
    }
    throw InvalidInput("check expects an instance, not a coloring");
}

Outcome cmd_solve_edge(const Options& opt) {
    const std::string text = io::read_file(opt.input);
    TraceFile trace(opt.trace_path);
    demand::SolveOptions so{trace.sink()};
    demand::SolveStats stats;
    EdgeColoring col;
    if (io::detect_kind(text) == io::InstanceKind::graph) {
        const Multigraph g = io::parse_graph(text);
        demand::DemandInstance inst{g, std::max(1, max_degree(g) + graph_multiplicity(g)), {}};
        for (VertexId v = 0; v < g.vertex_count(); ++v) inst.demand.push_back(g.degree(v));
        col = demand::solve(inst, so, &stats);
    } else {
        col = demand::solve(io::parse_demand(text), so, &stats);
    }
    Outcome o;
    o.assertions = stats_json(stats);
    o.details["colors_used"] = col.colors_used();
    o.summary = "colored " + std::to_string(col.colors.size()) + " edges with " + std::to_string(col.colors_used()) +
                " colors";
    return write_coloring(col.colors, opt.output.empty() ? default_coloring_path(opt.input) : opt.output, o);
}

Outcome cmd_solve_gupta(const Options& opt) {
    const std::string text = io::read_file(opt.input);
    Multigraph g;
    int k = 0;
    if (io::detect_kind(text) == io::InstanceKind::demand) {
        demand::DemandInstance inst = io::parse_demand(text);
        g = inst.graph;
        k = inst.k;
    } else {
        g = io::parse_graph(text);
    }
    if (opt.k) k = *opt.k;
    if (k < 1) throw InvalidInput("solve gupta needs --k (or an instance with k >= 1)");
    TraceFile trace(opt.trace_path);
    orientation::GuptaStats stats;
    const EdgeColoring col = orientation::gupta_general_color(g, k, &stats, demand::SolveOptions{trace.sink()});
    Outcome o;
    o.assertions = stats_json(stats);
    o.details["k"] = k;
    o.summary = "colored " + std::to_string(col.colors.size()) + " edges with k = " + std::to_string(k);
    return write_coloring(col.colors, opt.output.empty() ? default_coloring_path(opt.input) : opt.output, o);
}

Outcome cmd_solve_supermodular(const Options& opt) {
    const family::FamilyInstance inst = io::parse_family(io::read_file(opt.input));
    TraceFile trace(opt.trace_path);
    supermodular::SolveOptions so;
    so.trace = trace.sink();
    supermodular::SolveStats stats;
    const auto colors = supermodular::solve(inst, so, &stats);
    Outcome o;
    o.assertions = stats_json(stats);
    o.summary = "assigned " + std::to_string(colors.size()) + " elements";
    return write_coloring(colors, opt.output.empty() ? default_coloring_path(opt.input) : opt.output, o);
}

Outcome cmd_verify(const Options& opt) {
    const std::string text = io::read_file(opt.input);
    const std::vector<Color> colors = io::parse_colors(io::read_file(opt.second));
    const io::InstanceKind kind = io::detect_kind(text);
    if (kind == io::InstanceKind::family) {
        const auto inst = io::parse_family(text);
        const auto bad = supermodular::verify(inst, colors);
        if (!bad.empty())
            return violation("violation", std::to_string(bad.size()) + " sets see too few colors",
                             {{"violating_sets", bad}});
        Outcome o;
        o.summary = "assignment satisfies every set";
        return o;
    }
    const EdgeColoring col{colors};
    demand::Report r;
    if (opt.mode == "gupta" || (kind == io::InstanceKind::graph && opt.k)) {
        Multigraph g;
        int k = opt.k.value_or(0);
        if (kind == io::InstanceKind::demand) {
            const auto inst = io::parse_demand(text);
            g = inst.graph;
            if (!opt.k) k = inst.k;
        } else {
            g = io::parse_graph(text);
        }
        if (k < 1) throw InvalidInput("verify --mode gupta needs --k");
        r = orientation::verify_gupta(g, k, col);
    } else if (kind == io::InstanceKind::demand) {
        r = demand::verify(io::parse_demand(text), col);
    } else if (kind == io::InstanceKind::graph) {
        const Multigraph g = io::parse_graph(text);
        if (static_cast<int>(colors.size()) != g.edge_count()) throw InvalidInput("coloring length differs from edge count");
        if (!is_proper(g, col)) r.messages.push_back("coloring is not proper");
    } else {
        throw InvalidInput("verify expects an instance as its first file");
    }
    if (!r.ok()) return violation("violation", r.messages.front(), {{"report", report_json(r)}});
    Outcome o;
    o.summary = "coloring verifies";
    return o;
}

Outcome cmd_brute_force(const Options& opt) {
    const std::string text = io::read_file(opt.input);
    oracle::SearchBudget budget{opt.budget, opt.seed};
    oracle::SearchResult r;
    switch (io::detect_kind(text)) {
    case io::InstanceKind::graph: {
        const Multigraph g = io::parse_graph(text);
        if (!opt.k) {
            const int chi = oracle::chromatic_index(g, budget);
            Outcome o;
            o.details = {{"chromatic_index", chi}};
            o.summary = "chromatic index " + std::to_string(chi);
            return o;
        }
        demand::DemandInstance inst{g, *opt.k, {}};
        for (VertexId v = 0; v < g.vertex_count(); ++v) inst.demand.push_back(g.degree(v));
        r = oracle::brute_force_edge(inst, budget);
        break;
    }
    case io::InstanceKind::demand: r = oracle::brute_force_edge(io::parse_demand(text), budget); break;
    case io::InstanceKind::family: r = oracle::brute_force_family(io::parse_family(text), budget); break;
    case io::InstanceKind::coloring: throw InvalidInput("brute-force expects an instance");
    }
    if (!r.feasible) return violation("infeasible", "no satisfying coloring exists", {{"nodes", r.nodes}});
    Outcome o;
    o.details = {{"nodes", r.nodes}, {"colors", *r.witness}};
    o.summary = "feasible";
    if (!opt.output.empty()) {
        io::write_file(opt.output, io::colors_to_json(*r.witness));
        o.witness = opt.output;
    }
    return o;
}

Outcome emit_instance(const Options& opt, const std::string& text, std::string summary) {
    Outcome o;
    o.summary = std::move(summary);
    if (opt.output.empty()) {
        o.details["instance"] = json::parse(text);
    } else {
        io::write_file(opt.output, text);
        o.witness = opt.output;
    }
    return o;
}

Outcome cmd_gen_graph(const Options& opt) {
    const Multigraph g = oracle::gen_multigraph(opt.n, opt.m, opt.max_mult, opt.seed);
    return emit_instance(opt, io::to_json(g), "generated graph");
}

Outcome cmd_gen_demand(const Options& opt) {
    const Multigraph g = oracle::gen_multigraph(opt.n, opt.m, opt.max_mult, opt.seed);
    const int k = opt.k.value_or(std::max(1, max_degree(g) + graph_multiplicity(g)));
    return emit_instance(opt, io::to_json(oracle::gen_demand(g, k, opt.seed + 1)), "generated demand instance");
}

Outcome cmd_gen_family(const Options& opt) {
    const auto inst = oracle::gen_family(opt.ground, opt.k.value_or(3), oracle::parse_shape(opt.shape), opt.seed);
    return emit_instance(opt, io::to_json(inst), "generated " + opt.shape + " family");
}

Outcome cmd_reduce_stars(const Options& opt) {
    const auto inst = family::from_graph_stars(io::parse_demand(io::read_file(opt.input)));
    return emit_instance(opt, io::to_json(inst), "star family with " + std::to_string(inst.size()) + " sets");
}

// ---- driver -------------------------------------------------------------

using Handler = std::function<Outcome(const Options&)>;

Outcome guarded(const Handler& h, const Options& opt) {
    auto fail = [](int code, std::string verdict, std::string msg) {
        Outcome o;
        o.code = code;
        o.verdict = std::move(verdict);
        o.details["error"] = msg;
        o.summary = std::move(msg);
        return o;
    };
    try {
        return h(opt);
    } catch (const InternalAssertion& e) {
        Outcome o = fail(kInternal, "error", e.what());
        o.details["claim"] = e.claim();
        return o;
    } catch (const HypothesisViolation& e) {
        return fail(kViolation, "violation", e.what());
    } catch (const InvalidInput& e) {
        return fail(kUsage, "error", e.what());
    } catch (const BudgetExceeded& e) {
        return fail(kUsage, "error", e.what());
    } catch (const GenerationFailure& e) {
        return fail(kUsage, "error", e.what());
    } catch (const std::exception& e) {
        return fail(kInternal, "error", e.what());
    }
}

json outcome_json(const Outcome& o, double wall_ms) {
    json j = {{"verdict", o.verdict},
              {"exit_code", o.code},
              {"witness", o.witness ? json(*o.witness) : json(nullptr)},
              {"wall_ms", wall_ms},
              {"assertions", o.assertions}};
    for (auto& [key, value] : o.details.items()) j[key] = value;
    return j;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

int run_single(const Handler& h, const Options& opt, const json& command) {
    const auto t0 = std::chrono::steady_clock::now();
    const Outcome o = guarded(h, opt);
    json report = outcome_json(o, elapsed_ms(t0));
    report["command"] = command;
    std::cout << report.dump() << '\n';
    std::cerr << "supercolor: " << o.verdict << ": " << o.summary << '\n';
    return o.code;
}

// Runs the handler on every *.json file of a directory (our own
// *.coloring.json outputs excluded) and reports per file name.
int run_each(const Handler& h, const Options& opt, const json& command) {
    if (!opt.trace_path.empty()) {
        std::cerr << "supercolor: --trace cannot be combined with --each\n";
        return kUsage;
    }
    std::vector<std::string> files;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(opt.each_dir, ec)) {
        const std::string name = entry.path().filename().string();
        if (entry.is_regular_file() && entry.path().extension() == ".json" &&
            !name.ends_with(".coloring.json"))
            files.push_back(entry.path().string());
    }
    if (ec) {
        std::cerr << "supercolor: cannot list " << opt.each_dir << ": " << ec.message() << '\n';
        return kUsage;
    }
    std::sort(files.begin(), files.end());

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<Outcome> outcomes(files.size());
    std::vector<double> times(files.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t i = 0; i < files.size(); ++i) {
        Options per = opt;
        per.input = files[i];
        per.output = opt.output.empty() ? "" : (fs::path(opt.output) / fs::path(files[i]).filename()).string();
        const auto start = std::chrono::steady_clock::now();
        outcomes[i] = guarded(h, per);
        times[i] = elapsed_ms(start);
    }

    json results = json::object();
    int code = kOk;
    for (std::size_t i = 0; i < files.size(); ++i) {
        results[fs::path(files[i]).filename().string()] = outcome_json(outcomes[i], times[i]);
        code = std::max(code, outcomes[i].code);
    }
    const char* verdicts[] = {"ok", "violation", "error", "error"};
    json report = {{"command", command},
                   {"verdict", verdicts[code]},
                   {"exit_code", code},
                   {"wall_ms", elapsed_ms(t0)},
                   {"files", files.size()},
                   {"results", results}};
    std::cout << report.dump() << '\n';
    std::cerr << "supercolor: processed " << files.size() << " files, worst exit code " << code << '\n';
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Edge-coloring and supermodular set-coloring solvers with checkers and oracles"};
    app.require_subcommand(1);
    Options opt;
    Handler chosen;

    auto add_input = [&](CLI::App* sub, bool batch) {
        if (batch) {
            auto* in = sub->add_option("input", opt.input, "Instance JSON file")->check(CLI::ExistingFile);
            auto* each = sub->add_option("--each", opt.each_dir, "Process every *.json file in a directory")
                             ->check(CLI::ExistingDirectory);
            in->excludes(each);
            sub->callback([in, each] {
                if (in->count() == 0 && each->count() == 0) throw CLI::RequiredError("input or --each");
            });
        } else {
            sub->add_option("input", opt.input, "Instance JSON file")->required()->check(CLI::ExistingFile);
        }
    };
    auto bind = [&](CLI::App* sub, Handler h) { sub->final_callback([&chosen, h] { chosen = h; }); };

    auto* check = app.add_subcommand("check", "Validate the hypotheses of an instance");
    add_input(check, true);
    bind(check, cmd_check);

    auto* solve = app.add_subcommand("solve", "Run a solver");
    solve->require_subcommand(1);
    auto add_solve = [&](const char* name, const char* help, Handler h) {
        auto* sub = solve->add_subcommand(name, help);
        add_input(sub, true);
        sub->add_option("-o,--output", opt.output, "Coloring output path (a directory with --each)");
        sub->add_option("--trace", opt.trace_path, "Write the solver step log as JSON lines");
        bind(sub, h);
        return sub;
    };
    add_solve("edge", "Demand edge coloring (plain graphs get demand deg(v), k = Δ + μ)", cmd_solve_edge);
    add_solve("gupta", "Coloring for arbitrary k via orientation and reduction", cmd_solve_gupta)
        ->add_option("--k", opt.k, "Number of colors");
    add_solve("supermodular", "Set-family assignment", cmd_solve_supermodular);

    auto* verify = app.add_subcommand("verify", "Check a coloring against an instance");
    verify->add_option("instance", opt.input, "Instance JSON file")->required()->check(CLI::ExistingFile);
    verify->add_option("coloring", opt.second, "Coloring JSON file")->required()->check(CLI::ExistingFile);
    verify->add_option("--mode", opt.mode, "Use 'gupta' to check the arbitrary-k guarantee")
        ->check(CLI::IsMember({"edge", "gupta", "supermodular"}));
    verify->add_option("--k", opt.k, "Number of colors for --mode gupta on a plain graph");
    bind(verify, cmd_verify);

    auto* brute = app.add_subcommand("brute-force", "Exhaustive feasibility (chromatic index for plain graphs)");
    add_input(brute, true);
    brute->add_option("--budget", opt.budget, "Refuse instances with more than this many assignments");
    brute->add_option("--k", opt.k, "For a plain graph: test k-edge-colorability instead");
    brute->add_option("-o,--output", opt.output, "Write the witness coloring here");
    bind(brute, cmd_brute_force);

    auto* gen = app.add_subcommand("gen", "Generate seeded random instances");
    gen->require_subcommand(1);
    auto add_graph_opts = [&](CLI::App* sub) {
        sub->add_option("--n", opt.n, "Vertices");
        sub->add_option("--m", opt.m, "Edges");
        sub->add_option("--max-mult", opt.max_mult, "Maximum parallel edges per pair");
    };
    for (auto* sub : {gen->add_subcommand("graph", "Random multigraph"),
                      gen->add_subcommand("demand", "Random demand instance with a stable high-demand set"),
                      gen->add_subcommand("family", "Random family instance passing all hypotheses")}) {
        sub->add_option("--seed", opt.seed, "Generator seed");
        sub->add_option("-o,--output", opt.output, "Write the instance here instead of embedding it");
    }
    add_graph_opts(gen->get_subcommand("graph"));
    bind(gen->get_subcommand("graph"), cmd_gen_graph);
    add_graph_opts(gen->get_subcommand("demand"));
    gen->get_subcommand("demand")->add_option("--k", opt.k, "Number of colors (default Δ + μ)");
    bind(gen->get_subcommand("demand"), cmd_gen_demand);
    auto* gfam = gen->get_subcommand("family");
    gfam->add_option("--ground", opt.ground, "Ground set size");
    gfam->add_option("--k", opt.k, "Number of colors (default 3)");
    gfam->add_option("--shape", opt.shape, "stars, intervals, laminar or random-filtered")
        ->check(CLI::IsMember({"stars", "intervals", "laminar", "random-filtered"}));
    bind(gfam, cmd_gen_family);

    auto* reduce = app.add_subcommand("reduce", "Instance reductions");
    reduce->require_subcommand(1);
    auto* stars = reduce->add_subcommand("stars", "Star family of a demand instance");
    add_input(stars, true);
    stars->add_option("-o,--output", opt.output, "Write the family instance here");
    bind(stars, cmd_reduce_stars);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    json command = json::array();
    for (int i = 1; i < argc; ++i) command.push_back(argv[i]);
    if (!chosen) return kUsage;
    return opt.each_dir.empty() ? run_single(chosen, opt, command) : run_each(chosen, opt, command);
}
