#pragma once

#include <vector>

#include "json.hpp"

#include "minset/defgraph.hpp"

namespace minset {

// Result of round-based peeling: every round simultaneously deletes all
// vertices with no remaining out-edges (words that define nothing still
// alive). What survives is the kernel; the core is its largest strongly
// connected component.
struct KernelDecomposition {
    std::vector<int> kernel;                 // sorted vertex ids
    std::vector<std::vector<int>> peel_layers; // round k -> sorted ids removed
    std::vector<int> removal_order;          // peel_layers concatenated
    std::vector<int> core;                   // sorted; largest cyclic SCC of the kernel
    std::vector<int> satellites;             // sorted; kernel minus core
};

// Peels the graph to a fixed point. The kernel is empty only when the graph
// is acyclic. Ties between equally large core candidates are broken toward
// the component containing the smallest vertex id.
KernelDecomposition compute_kernel(const DefGraph& g);

// Throws ArgumentError unless kernel plus peel layers exactly partition the
// graph's vertex set.
void validate_kernel_decomposition(const DefGraph& g, const KernelDecomposition& kd);

// Fractions and layer sizes. Throws ArgumentError when the decomposition
// does not partition the graph's vertices.
nlohmann::json kernel_stats(const DefGraph& g, const KernelDecomposition& kd);

// Word-level report: kernel, layers, core, satellites plus the stats block.
nlohmann::json kernel_report(const DefGraph& g, const KernelDecomposition& kd);

} // namespace minset
