#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "minset/defgraph.hpp"

namespace minset {

struct SolverConfig {
    int exact_threshold = 32;    // SCCs up to this size are solved exactly (hard cap 64)
    double time_budget_s = 60.0; // wall-clock budget for a whole solve
    long ls_iterations = 0;      // local-search passes after greedy construction
    std::uint64_t seed = 0;      // rng seed for the local search
};

void validate_solver_config(const SolverConfig& cfg);

// One solver subproblem: the subgraph induced on vertex_ids (self-loop
// vertices are pre-selected into forced and removed), plus vertices barred
// from solutions. Throws InfeasibleError if a self-loop vertex is excluded.
struct FvsInstance {
    std::vector<int> vertex_ids;        // sorted original ids, forced removed
    std::vector<std::vector<int>> out;  // local adjacency, sorted, no self-loops
    std::vector<std::vector<int>> in;
    std::vector<int> forced;            // sorted original ids (self-loops)
    std::vector<int> excluded;          // sorted original ids, subset of vertex_ids

    int local_size() const { return static_cast<int>(vertex_ids.size()); }
};

FvsInstance make_instance(const DefGraph& g, const std::vector<int>& vertices,
                          const std::vector<int>& excluded = {});

// One instance per cyclic strongly connected component, in component order.
std::vector<FvsInstance> cyclic_instances(const DefGraph& g, const SccDecomposition& d);

struct ExactResult {
    std::vector<int> solution; // sorted original ids, forced included
    bool timed_out = false;    // deadline hit; solution is not meaningful
    long nodes = 0;            // branch-and-bound nodes explored
};

// Optimal feedback vertex set of the instance via branch and bound with
// reduction rules. Supports at most 64 residual vertices (UnsupportedError
// beyond that); throws InfeasibleError when the exclusion constraints rule
// out every solution.
ExactResult exact_fvs(const FvsInstance& inst,
                      std::chrono::steady_clock::time_point deadline =
                          std::chrono::steady_clock::time_point::max());

// Greedy removal of the vertex maximizing in-degree * out-degree until the
// residual is acyclic, followed by redundancy elimination and optional
// seeded local search. The result is always minimal: no proper subset is a
// feedback vertex set. Requires an instance without exclusions.
std::vector<int> heuristic_fvs(const FvsInstance& inst, const SolverConfig& cfg = {});

enum class Provenance { exact, heuristic };

struct ComponentSolution {
    int component_id = 0;         // id in the SccDecomposition
    std::size_t component_size = 0;
    std::vector<int> chosen;      // sorted original ids
    Provenance provenance = Provenance::exact;
    bool timed_out = false;
};

struct GroundingSet {
    std::vector<int> ids;             // sorted
    std::vector<std::string> words;   // same order (id order is word order)
    int objective = 0;
    Provenance provenance = Provenance::exact; // exact iff every component is exact
    bool verified = false;            // closure from this set learns the whole graph
    bool timed_out = false;
    std::vector<ComponentSolution> components;
    double elapsed_s = 0.0;           // informational; never serialized
};

// Minimum (or heuristic, above the exact threshold) feedback vertex set of
// the whole graph, solved per cyclic SCC and merged in component order.
GroundingSet solve_minset(const DefGraph& g, const SolverConfig& cfg = {});

struct VerifyReport {
    bool verified = false;
    long learned_count = 0;
    std::vector<int> residue;                    // sorted unlearnable ids
    std::vector<std::vector<int>> witness_cycles; // cycles inside the residue
};

// Checks that closure from the candidate learns every word; when it does
// not, reports the unlearnable residue and a shortest definitional cycle per
// residue component (at most witness_limit of them).
VerifyReport verify_grounding_set(const DefGraph& g, const std::vector<int>& candidate,
                                  std::size_t witness_limit = 10);

struct EnumerationResult {
    std::vector<std::vector<int>> sets; // minimum-size sets, each sorted; list sorted
    int objective = 0;
    bool complete = false; // true when no further minimum-size set exists
    bool timed_out = false;
};

// Up to k distinct minimum feedback vertex sets, found by re-solving with
// forced/excluded constraints that partition the solution space. Requires
// every cyclic SCC to be within the exact threshold (UnsupportedError).
EnumerationResult enumerate_minsets(const DefGraph& g, int k,
                                    const SolverConfig& cfg = {});

nlohmann::json minset_report(const DefGraph& g, const GroundingSet& gs);
nlohmann::json verify_to_json(const DefGraph& g, const VerifyReport& vr);
nlohmann::json enumeration_to_json(const DefGraph& g, const EnumerationResult& er);

} // namespace minset
