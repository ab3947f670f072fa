#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "minset/lexicon.hpp"

namespace minset {

// Directed definition graph over the lexicon's headwords. Vertex ids are
// dense 0..n-1 assigned in sorted headword order, so id order and
// lexicographic word order coincide. An edge u -> v means word u occurs in
// the definition of word v.
struct DefGraph {
    std::vector<std::string> words;            // id -> word, sorted
    std::map<std::string, int> word_to_id;
    std::vector<std::vector<int>> out_adj;     // sorted ascending
    std::vector<std::vector<int>> in_adj;      // sorted ascending
    std::vector<int> self_loops;               // sorted vertex ids with u -> u
    long edge_count = 0;

    int size() const { return static_cast<int>(words.size()); }
};

// Strongly connected components. Component ids follow Tarjan's emission
// order, which is a reverse topological order of the condensation: every
// condensation edge goes from a higher component id to a lower one.
struct SccDecomposition {
    std::vector<int> component_of;             // vertex id -> component id
    std::vector<std::vector<int>> components;  // component id -> sorted vertex ids
    std::vector<std::vector<int>> condensation_adj; // sorted successor component ids

    int count() const { return static_cast<int>(components.size()); }
    // A component can contain a cycle: either multiple vertices or a self-loop.
    bool is_cyclic(int comp, const DefGraph& g) const;
};

// Builds the graph from a lexicon. Throws ArgumentError on an empty lexicon.
DefGraph build_graph(const Lexicon& lex);

// Test/tool helper: builds a graph from an explicit vertex count and edge
// list (duplicates collapsed). Vertex names are generated ("w00", "w01", ...)
// unless words are supplied, in which case they must be sorted and unique.
DefGraph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                          const std::vector<std::string>& words = {});

// Induced subgraph on the given vertices (any order; deduped). Local ids are
// assigned in ascending original-id order; orig_ids maps local -> original.
struct InducedSubgraph {
    DefGraph graph;
    std::vector<int> orig_ids;
};
InducedSubgraph induced_subgraph(const DefGraph& g, const std::vector<int>& vertices);

// Iterative Tarjan; safe on graphs with hundreds of thousands of vertices.
SccDecomposition scc(const DefGraph& g);

enum class Direction { forward, backward };

// All vertices reachable from the start set (which is included) following
// out-edges (forward) or in-edges (backward). Returns sorted ids.
std::vector<int> reachable_from(const DefGraph& g, const std::vector<int>& start,
                                Direction dir);

// Shortest directed cycle through v that only uses vertices with
// allowed[w] != 0, found by BFS over out-edges. The returned list starts at
// v and follows the cycle; empty when no such cycle exists.
std::vector<int> shortest_cycle_through(const DefGraph& g, const std::vector<char>& allowed,
                                        int v);

// Stable DOT renderings: vertices in id order, edges in (u, v) order.
std::string to_dot(const DefGraph& g);
std::string condensation_to_dot(const DefGraph& g, const SccDecomposition& d);

// {"words": [...], "edges": [[u, v], ...]} with edges sorted ascending.
nlohmann::json edges_to_json(const DefGraph& g);

// Vertex/edge/component counts for the graph_stats report.
nlohmann::json graph_stats(const DefGraph& g, const SccDecomposition& d);

} // namespace minset
