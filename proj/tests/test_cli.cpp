// Runs the supercolor binary end to end through the shell.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
    int code;
    json report;
};

const fs::path& scratch() {
    static const fs::path dir = [] {
        fs::path d(SUPERCOLOR_SCRATCH);
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string put(const std::string& name, const std::string& text) {
    const fs::path p = scratch() / name;
    std::ofstream(p) << text;
    return p.string();
}

Run run(const std::string& args) {
    const fs::path out = scratch() / "stdout.json";
    const std::string cmd = std::string(SUPERCOLOR_BIN) + " " + args + " > " + out.string() + " 2> " +
                            (scratch() / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    Run r{WIFEXITED(status) ? WEXITSTATUS(status) : -1, json()};
    std::ifstream in(out);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (!text.empty()) r.report = json::parse(text, nullptr, false);
    return r;
}

const char* kTriangle = R"({"graph": {"n": 3, "edges": [[0,1],[1,2],[0,2]]}, "k": 3, "c": [2,2,2]})";
const char* kBad = R"({"graph": {"n": 3, "edges": [[0,1],[1,2],[0,2]]}, "k": 2, "c": [2,2,2]})";
const char* kShannon = R"({"n": 3, "edges": [[0,1],[0,1],[1,2],[1,2],[0,2],[0,2]]})";
const char* kInterval = R"({"ground": 3, "k": 3, "sets": [[0,1],[1,2],[0,1,2]], "g": [2,2,3]})";

} // namespace

TEST_CASE("solve edge writes a coloring that verifies") {
    const std::string inst = put("triangle.json", kTriangle);
    const Run solved = run("solve edge " + inst);
    CHECK(solved.code == 0);
    CHECK(solved.report["verdict"] == "ok");
    const std::string witness = solved.report["witness"];
    CHECK(fs::exists(witness));
    CHECK(solved.report["assertions"]["augmentations"] == 3);
    CHECK(run("verify " + inst + " " + witness).code == 0);
}

TEST_CASE("check names the violating edge") {
    const Run r = run("check " + put("bad.json", kBad));
    CHECK(r.code == 1);
    CHECK(r.report["verdict"] == "violation");
    CHECK(r.report["report"]["edges"].size() == 3);
}

TEST_CASE("verify rejects a tampered coloring") {
    const std::string inst = put("triangle.json", kTriangle);
    CHECK(run("verify " + inst + " " + put("mono.json", R"({"colors": [1,1,1]})")).code == 1);
    CHECK(run("verify " + inst + " " + put("short.json", R"({"colors": [1,2]})")).code == 2);
}

TEST_CASE("malformed JSON exits 2 with a position") {
    const Run r = run("check " + put("broken.json", "{\"n\": 3,\n \"edges\": [[0,1],,]}"));
    CHECK(r.code == 2);
    CHECK(r.report["error"].get<std::string>().find("line 2") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run("solve").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("check /nonexistent.json").code == 2);
}

TEST_CASE("solve gupta and its verification mode") {
    const std::string g = put("shannon.json", kShannon);
    const std::string out = (scratch() / "shannon.k3.json").string();
    CHECK(run("solve gupta " + g + " --k 3 -o " + out).code == 0);
    CHECK(run("verify " + g + " " + out + " --mode gupta --k 3").code == 0);
    CHECK(run("solve gupta " + g).code == 2);
}

TEST_CASE("solve supermodular with a trace") {
    const std::string inst = put("interval.json", kInterval);
    const std::string trace = (scratch() / "trace.jsonl").string();
    const Run r = run("solve supermodular " + inst + " --trace " + trace);
    CHECK(r.code == 0);
    CHECK(fs::file_size(trace) > 0);
    CHECK(run("verify " + inst + " " + r.report["witness"].get<std::string>()).code == 0);

    const std::string bad = put("interval_k2.json", R"({"ground": 3, "k": 2, "sets": [[0,1],[1,2],[0,1,2]], "g": [2,2,3]})");
    CHECK(run("solve supermodular " + bad).code == 1);
}

TEST_CASE("brute force and chromatic index") {
    const Run chi = run("brute-force " + put("shannon.json", kShannon));
    CHECK(chi.code == 0);
    CHECK(chi.report["chromatic_index"] == 6);
    CHECK(run("brute-force " + put("shannon.json", kShannon) + " --k 5").code == 1);
    CHECK(run("brute-force " + put("shannon.json", kShannon) + " --k 5 --budget 10").code == 2);
    CHECK(run("brute-force " + put("interval.json", kInterval)).code == 0);
}

TEST_CASE("gen is seed-deterministic") {
    const Run a = run("gen family --ground 6 --k 3 --shape laminar --seed 9");
    const Run b = run("gen family --ground 6 --k 3 --shape laminar --seed 9");
    CHECK(a.code == 0);
    CHECK(a.report["instance"] == b.report["instance"]);
    const Run d = run("gen demand --n 5 --m 8 --max-mult 2 --seed 4");
    CHECK(d.code == 0);
    CHECK(d.report["instance"].contains("c"));
}

TEST_CASE("reduce stars then solve supermodular matches solve edge") {
    const std::string inst = put("triangle.json", kTriangle);
    const std::string stars = (scratch() / "triangle.stars.json").string();
    CHECK(run("reduce stars " + inst + " -o " + stars).code == 0);
    CHECK(run("solve supermodular " + stars).code == 0);
    CHECK(run("solve edge " + inst).code == 0);
}

TEST_CASE("batch mode keys results by file name") {
    const fs::path dir = scratch() / "batch";
    fs::create_directories(dir);
    std::ofstream(dir / "a.json") << kTriangle;
    std::ofstream(dir / "b.json") << kBad;
    const Run r = run("check --each " + dir.string());
    CHECK(r.code == 1);
    CHECK(r.report["results"]["a.json"]["verdict"] == "ok");
    CHECK(r.report["results"]["b.json"]["verdict"] == "violation");
}
