#include "minset/kernel.hpp"

#include <algorithm>

#include "minset/errors.hpp"

namespace minset {

KernelDecomposition compute_kernel(const DefGraph& g) {
    const int n = g.size();
    KernelDecomposition kd;
    std::vector<long> out_deg(n);
    std::vector<char> removed(n, 0);
    for (int v = 0; v < n; ++v) out_deg[v] = static_cast<long>(g.out_adj[v].size());

    std::vector<int> layer;
    for (int v = 0; v < n; ++v)
        if (out_deg[v] == 0) layer.push_back(v);

    while (!layer.empty()) {
        std::sort(layer.begin(), layer.end());
        std::vector<int> next;
        for (int v : layer) {
            removed[v] = 1;
            kd.removal_order.push_back(v);
        }
        for (int v : layer) {
            for (int u : g.in_adj[v]) {
                if (removed[u]) continue;
                if (--out_deg[u] == 0) next.push_back(u);
            }
        }
        kd.peel_layers.push_back(std::move(layer));
        layer = std::move(next);
    }

    for (int v = 0; v < n; ++v)
        if (!removed[v]) kd.kernel.push_back(v);

    if (!kd.kernel.empty()) {
        auto sub = induced_subgraph(g, kd.kernel);
        auto d = scc(sub.graph);
        int best = -1;
        for (int c = 0; c < d.count(); ++c) {
            if (!d.is_cyclic(c, sub.graph)) continue;
            if (best == -1 || d.components[c].size() > d.components[best].size() ||
                (d.components[c].size() == d.components[best].size() &&
                 d.components[c].front() < d.components[best].front()))
                best = c;
        }
        if (best != -1)
            for (int local : d.components[best]) kd.core.push_back(sub.orig_ids[local]);
        std::set_difference(kd.kernel.begin(), kd.kernel.end(), kd.core.begin(),
                            kd.core.end(), std::back_inserter(kd.satellites));
    }
    return kd;
}

void validate_kernel_decomposition(const DefGraph& g, const KernelDecomposition& kd) {
    std::vector<char> seen(g.size(), 0);
    auto mark = [&](int v) {
        if (v < 0 || v >= g.size() || seen[v])
            throw ArgumentError("kernel decomposition does not match graph");
        seen[v] = 1;
    };
    for (int v : kd.kernel) mark(v);
    for (const auto& layer : kd.peel_layers)
        for (int v : layer) mark(v);
    for (char s : seen)
        if (!s) throw ArgumentError("kernel decomposition does not match graph");
}

nlohmann::json kernel_stats(const DefGraph& g, const KernelDecomposition& kd) {
    validate_kernel_decomposition(g, kd);
    const double n = g.size() ? static_cast<double>(g.size()) : 1.0;
    std::vector<std::size_t> layer_sizes;
    for (const auto& layer : kd.peel_layers) layer_sizes.push_back(layer.size());
    return {{"vertex_count", g.size()},
            {"kernel_size", kd.kernel.size()},
            {"kernel_fraction", static_cast<double>(kd.kernel.size()) / n},
            {"core_size", kd.core.size()},
            {"core_fraction_of_graph", static_cast<double>(kd.core.size()) / n},
            {"core_fraction_of_kernel",
             kd.kernel.empty() ? 0.0
                               : static_cast<double>(kd.core.size()) /
                                     static_cast<double>(kd.kernel.size())},
            {"satellite_size", kd.satellites.size()},
            {"layer_count", kd.peel_layers.size()},
            {"layer_sizes", layer_sizes}};
}

nlohmann::json kernel_report(const DefGraph& g, const KernelDecomposition& kd) {
    auto words_of = [&](const std::vector<int>& ids) {
        std::vector<std::string> ws;
        ws.reserve(ids.size());
        for (int v : ids) ws.push_back(g.words[v]);
        return ws;
    };
    nlohmann::json layers = nlohmann::json::array();
    for (const auto& layer : kd.peel_layers) layers.push_back(words_of(layer));
    return {{"kernel", words_of(kd.kernel)},
            {"core", words_of(kd.core)},
            {"satellites", words_of(kd.satellites)},
            {"peel_layers", std::move(layers)},
            {"stats", kernel_stats(g, kd)}};
}

} // namespace minset
