#pragma once

// Brute-force reference implementations used to cross-check the solvers.
// Everything here enumerates exponential spaces and is only meant for the
// small random graphs the tests generate (n <= ~12).

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "minset/defgraph.hpp"

namespace oracle {

using Mask = std::uint32_t;

inline Mask mask_of(const std::vector<int>& ids) {
    Mask m = 0;
    for (int v : ids) m |= Mask{1} << v;
    return m;
}

// DFS color check for a cycle among the vertices not in `removed`.
inline bool is_acyclic_without(const minset::DefGraph& g, Mask removed) {
    const int n = g.size();
    std::vector<int> color(n, 0); // 0 white, 1 on stack, 2 done
    std::vector<std::pair<int, std::size_t>> stack;
    for (int s = 0; s < n; ++s) {
        if (color[s] != 0 || (removed >> s) & 1) continue;
        stack.push_back({s, 0});
        color[s] = 1;
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            if (next < g.out_adj[v].size()) {
                int w = g.out_adj[v][next++];
                if ((removed >> w) & 1) continue;
                if (color[w] == 1) return false;
                if (color[w] == 0) {
                    color[w] = 1;
                    stack.push_back({w, 0});
                }
            } else {
                color[v] = 2;
                stack.pop_back();
            }
        }
    }
    return true;
}

// Smallest k such that some k-subset of vertices breaks every cycle.
inline int min_fvs_size(const minset::DefGraph& g) {
    const int n = g.size();
    int best = n;
    for (Mask m = 0; m < (Mask{1} << n); ++m) {
        int k = std::popcount(m);
        if (k >= best) continue;
        if (is_acyclic_without(g, m)) best = k;
    }
    return best;
}

// Every subset of minimum size whose removal leaves the graph acyclic,
// sorted lexicographically as id vectors.
inline std::vector<std::vector<int>> all_min_fvs(const minset::DefGraph& g) {
    const int n = g.size();
    const int best = min_fvs_size(g);
    std::vector<std::vector<int>> out;
    for (Mask m = 0; m < (Mask{1} << n); ++m) {
        if (std::popcount(m) != best || !is_acyclic_without(g, m)) continue;
        std::vector<int> ids;
        for (int v = 0; v < n; ++v)
            if ((m >> v) & 1) ids.push_back(v);
        out.push_back(std::move(ids));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// All simple directed cycles, each reported as the vertex list starting at
// its smallest id. Self-loops come out as single-vertex cycles.
inline std::vector<std::vector<int>> simple_cycles(const minset::DefGraph& g) {
    const int n = g.size();
    std::vector<std::vector<int>> cycles;
    std::vector<int> path;
    std::vector<char> on_path(n, 0);

    // Paths from root may only pass through vertices > root, so each cycle
    // is found exactly once, rooted at its minimum.
    auto dfs = [&](auto&& self, int root, int v) -> void {
        path.push_back(v);
        on_path[v] = 1;
        for (int w : g.out_adj[v]) {
            if (w == root)
                cycles.push_back(path);
            else if (w > root && !on_path[w])
                self(self, root, w);
        }
        on_path[v] = 0;
        path.pop_back();
    };
    for (int root = 0; root < n; ++root) dfs(dfs, root, root);
    return cycles;
}

inline bool hits_all_cycles(const std::vector<std::vector<int>>& cycles, Mask candidate) {
    for (const auto& cyc : cycles) {
        bool hit = false;
        for (int v : cyc)
            if ((candidate >> v) & 1) {
                hit = true;
                break;
            }
        if (!hit) return false;
    }
    return true;
}

// Random digraph with independent edges and sparser self-loops.
inline minset::DefGraph random_digraph(std::mt19937_64& rng, int n, double edge_p,
                                       double self_loop_p = 0.1) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            double p = u == v ? self_loop_p : edge_p;
            if (coin(rng) < p) edges.push_back({u, v});
        }
    return minset::graph_from_edges(n, edges);
}

} // namespace oracle
