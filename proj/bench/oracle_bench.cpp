// Serial versus OpenMP brute-force search. Infeasible instances force the
// full enumeration, which is where the partitioned search pays off.

#include <benchmark/benchmark.h>

#include "supercolor/oracle.hpp"

using namespace supercolor;

namespace {

// Petersen needs 3^15 candidate assignments, above the default budget.
const oracle::SearchBudget kBudget{20'000'000, 0};

demand::DemandInstance shannon_five() {
    return {named::shannon_triangle(), 5, {4, 4, 4}};
}

// Petersen graph asked for 3 colors per vertex with 3 colors: infeasible.
demand::DemandInstance petersen_three() {
    const Multigraph p = named::petersen();
    return {p, 3, std::vector<int>(static_cast<std::size_t>(p.vertex_count()), 3)};
}

family::FamilyInstance intervals_infeasible() {
    std::vector<family::ElementSet> sets;
    std::vector<int> g;
    for (int i = 0; i < 12; ++i)
        for (int j = i; j < 12; ++j) {
            family::ElementSet x = 0;
            for (int e = i; e <= j; ++e) x |= family::singleton(e);
            sets.push_back(x);
            g.push_back(std::min(j - i + 1, 3));
        }
    g.back() = 4; // the whole ground set asks for 4 of 3 colors
    return family::make_instance(12, 3, std::move(sets), std::move(g));
}

void edge_serial(benchmark::State& state, const demand::DemandInstance& inst) {
    for (auto _ : state) benchmark::DoNotOptimize(oracle::brute_force_edge_serial(inst, kBudget));
}

void edge_openmp(benchmark::State& state, const demand::DemandInstance& inst) {
    for (auto _ : state) benchmark::DoNotOptimize(oracle::brute_force_edge(inst, kBudget));
}

void family_serial(benchmark::State& state) {
    const auto inst = intervals_infeasible();
    for (auto _ : state) benchmark::DoNotOptimize(oracle::brute_force_family_serial(inst));
}

void family_openmp(benchmark::State& state) {
    const auto inst = intervals_infeasible();
    for (auto _ : state) benchmark::DoNotOptimize(oracle::brute_force_family(inst));
}

} // namespace

BENCHMARK_CAPTURE(edge_serial, shannon_k5, shannon_five());
BENCHMARK_CAPTURE(edge_openmp, shannon_k5, shannon_five());
BENCHMARK_CAPTURE(edge_serial, petersen_k3, petersen_three());
BENCHMARK_CAPTURE(edge_openmp, petersen_k3, petersen_three());
BENCHMARK(family_serial);
BENCHMARK(family_openmp);

BENCHMARK_MAIN();
