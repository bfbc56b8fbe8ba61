#include "supercolor/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "supercolor/errors.hpp"

namespace supercolor::io {

using nlohmann::json;

namespace {

json parse_text(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        std::size_t column = 1;
        const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw InvalidInput("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(column) +
                           ": " + e.what());
    }
}

const json& field(const json& obj, const char* key) {
    if (!obj.is_object()) throw InvalidInput("expected a JSON object");
    auto it = obj.find(key);
    if (it == obj.end()) throw InvalidInput(std::string("missing field \"") + key + "\"");
    return *it;
}

int as_int(const json& v, const std::string& what) {
    if (!v.is_number_integer()) throw InvalidInput(what + " must be an integer");
    const auto x = v.get<long long>();
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
        throw InvalidInput(what + " is out of range");
    return static_cast<int>(x);
}

std::vector<int> int_array(const json& v, const std::string& what) {
    if (!v.is_array()) throw InvalidInput(what + " must be an array");
    std::vector<int> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_int(v[i], what + "[" + std::to_string(i) + "]"));
    return out;
}

Multigraph graph_from(const json& j) {
    const int n = as_int(field(j, "n"), "n");
    if (n < 0) throw InvalidInput("n must be non-negative");
    const json& edges = field(j, "edges");
    if (!edges.is_array()) throw InvalidInput("edges must be an array");
    std::vector<Edge> out;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto ends = int_array(edges[i], "edges[" + std::to_string(i) + "]");
        if (ends.size() != 2) throw InvalidInput("edges[" + std::to_string(i) + "] must have two endpoints");
        out.push_back({ends[0], ends[1]});
    }
    return Multigraph(n, std::move(out));
}

json graph_json(const Multigraph& g) {
    json edges = json::array();
    for (const Edge& e : g.edges()) edges.push_back({e.a, e.b});
    return {{"n", g.vertex_count()}, {"edges", edges}};
}

} // namespace

InstanceKind detect_kind(std::string_view text) {
    const json j = parse_text(text);
    if (!j.is_object()) throw InvalidInput("expected a JSON object");
    if (j.contains("ground")) return InstanceKind::family;
    if (j.contains("graph")) return InstanceKind::demand;
    if (j.contains("colors")) return InstanceKind::coloring;
    if (j.contains("n") && j.contains("edges")) return InstanceKind::graph;
    throw InvalidInput("document is not a graph, demand instance, family instance or coloring");
}

Multigraph parse_graph(std::string_view text) { return graph_from(parse_text(text)); }

demand::DemandInstance parse_demand(std::string_view text) {
    const json j = parse_text(text);
    demand::DemandInstance inst;
    inst.graph = graph_from(field(j, "graph"));
    inst.k = as_int(field(j, "k"), "k");
    inst.demand = int_array(field(j, "c"), "c");
    if (static_cast<int>(inst.demand.size()) != inst.graph.vertex_count())
        throw InvalidInput("c has " + std::to_string(inst.demand.size()) + " entries for " +
                           std::to_string(inst.graph.vertex_count()) + " vertices");
    for (std::size_t v = 0; v < inst.demand.size(); ++v)
        if (inst.demand[v] < 0)
            throw InvalidInput("c[" + std::to_string(v) + "] is negative: " + std::to_string(inst.demand[v]));
    return inst;
}

family::FamilyInstance parse_family(std::string_view text) {
    const json j = parse_text(text);
    const int ground = as_int(field(j, "ground"), "ground");
    const int k = as_int(field(j, "k"), "k");
    const json& sets = field(j, "sets");
    if (!sets.is_array()) throw InvalidInput("sets must be an array");
    if (ground < 0 || ground > family::kMaxGround) throw InvalidInput("ground must be in 0..64");
    std::vector<family::ElementSet> members;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        family::ElementSet x = 0;
        for (int e : int_array(sets[i], "sets[" + std::to_string(i) + "]")) {
            if (e < 0 || e >= ground)
                throw InvalidInput("sets[" + std::to_string(i) + "] has element " + std::to_string(e) +
                                   " outside 0.." + std::to_string(ground - 1));
            x |= family::singleton(e);
        }
        members.push_back(x);
    }
    return family::make_instance(ground, k, std::move(members), int_array(field(j, "g"), "g"));
}

std::vector<Color> parse_colors(std::string_view text) { return int_array(field(parse_text(text), "colors"), "colors"); }

std::string to_json(const Multigraph& g) { return graph_json(g).dump(); }

std::string to_json(const demand::DemandInstance& inst) {
    return json{{"graph", graph_json(inst.graph)}, {"k", inst.k}, {"c", inst.demand}}.dump();
}

std::string to_json(const family::FamilyInstance& inst) {
    json sets = json::array();
    for (family::ElementSet x : inst.sets) sets.push_back(family::elements(x));
    return json{{"ground", inst.ground}, {"k", inst.k}, {"sets", sets}, {"g", inst.g}}.dump();
}

std::string colors_to_json(const std::vector<Color>& colors) { return json{{"colors", colors}}.dump(); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write " + path);
    out << contents;
    if (contents.empty() || contents.back() != '\n') out << '\n';
}

} // namespace supercolor::io
