#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "minset/defgraph.hpp"

namespace minset {

// Whether a word with no defining words (an orphan vertex) can be picked up
// for free or must be part of the seed.
enum class OrphanPolicy { auto_learnable, must_be_seeded };

struct ClosureReport {
    int vertex_count = 0;
    OrphanPolicy policy = OrphanPolicy::auto_learnable;
    std::vector<int> seed;           // sorted, deduped
    std::vector<int> learned;        // sorted
    std::vector<int> unlearnable;    // sorted complement of learned
    std::vector<int> depth;          // per vertex; -1 when not learned
    std::vector<int> learning_order; // seeds first (ascending), then by readiness

    bool all_learned() const { return unlearnable.empty(); }
};

// Least fixpoint of "a word is learned once every word in its definition is
// learned". Seeds are learned unconditionally at depth 0; any other word's
// depth is 1 + max depth of its defining words (0 for orphans learned under
// auto_learnable). Throws ArgumentError on out-of-range seed ids.
ClosureReport ivg_closure(const DefGraph& g, const std::vector<int>& seed,
                          OrphanPolicy policy = OrphanPolicy::auto_learnable);

// Diagnostics for a failed (or partial) closure: for every unlearnable word,
// the unlearned defining words blocking it, and a shortest definitional cycle
// through it that stays inside the unlearnable set (when one exists).
// cycle_limit caps how many entries get the cycle search (0 = all).
struct GapEntry {
    int vertex;
    std::vector<int> blocked_by; // sorted unlearned in-neighbors
    std::vector<int> cycle;      // shortest cycle through vertex, empty if none found
};
std::vector<GapEntry> teachability_gap(const DefGraph& g, const ClosureReport& report,
                                       std::size_t cycle_limit = 0);

nlohmann::json closure_to_json(const DefGraph& g, const ClosureReport& report);
nlohmann::json gap_to_json(const DefGraph& g, const std::vector<GapEntry>& gap);

// CSV rows "word,depth,learned" in word order, with header.
std::string closure_to_csv(const DefGraph& g, const ClosureReport& report);

} // namespace minset
