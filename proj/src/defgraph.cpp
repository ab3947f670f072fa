#include "minset/defgraph.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "minset/errors.hpp"

namespace minset {

bool SccDecomposition::is_cyclic(int comp, const DefGraph& g) const {
    const auto& members = components.at(comp);
    if (members.size() > 1) return true;
    int v = members.front();
    return std::binary_search(g.self_loops.begin(), g.self_loops.end(), v);
}

DefGraph build_graph(const Lexicon& lex) {
    if (lex.entries.empty()) throw ArgumentError("build_graph: empty lexicon");
    DefGraph g;
    g.words.reserve(lex.entries.size());
    for (const auto& [hw, ds] : lex.entries) {
        (void)ds;
        g.word_to_id.emplace(hw, static_cast<int>(g.words.size()));
        g.words.push_back(hw);
    }
    const int n = g.size();
    g.out_adj.resize(n);
    g.in_adj.resize(n);
    for (const auto& [hw, ds] : lex.entries) {
        const int v = g.word_to_id.at(hw);
        for (const auto& dw : ds.defining_words) {
            const int u = g.word_to_id.at(dw);
            g.out_adj[u].push_back(v);
            g.in_adj[v].push_back(u);
            if (u == v) g.self_loops.push_back(u);
        }
        g.edge_count += static_cast<long>(ds.defining_words.size());
    }
    // defining_words is sorted per entry, so in_adj is already sorted; out_adj
    // gains targets in sorted target order only if sources were visited in
    // order, which entry iteration guarantees. Sort anyway for safety.
    for (auto& a : g.out_adj) std::sort(a.begin(), a.end());
    std::sort(g.self_loops.begin(), g.self_loops.end());
    return g;
}

DefGraph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                          const std::vector<std::string>& words) {
    if (n < 0) throw ArgumentError("graph_from_edges: negative vertex count");
    DefGraph g;
    if (!words.empty()) {
        if (static_cast<int>(words.size()) != n)
            throw ArgumentError("graph_from_edges: word list size mismatch");
        if (!std::is_sorted(words.begin(), words.end()) ||
            std::adjacent_find(words.begin(), words.end()) != words.end())
            throw ArgumentError("graph_from_edges: words must be sorted and unique");
        g.words = words;
    } else {
        int width = 1;
        for (int p = 10; p <= n - 1 && width < 10; p *= 10) ++width;
        for (int i = 0; i < n; ++i) {
            std::string num = std::to_string(i);
            g.words.push_back("w" + std::string(width - num.size(), '0') + num);
        }
    }
    for (int i = 0; i < n; ++i) g.word_to_id.emplace(g.words[i], i);
    g.out_adj.resize(n);
    g.in_adj.resize(n);
    std::set<std::pair<int, int>> dedup(edges.begin(), edges.end());
    for (const auto& [u, v] : dedup) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ArgumentError("graph_from_edges: edge endpoint out of range");
        g.out_adj[u].push_back(v);
        g.in_adj[v].push_back(u);
        if (u == v) g.self_loops.push_back(u);
        ++g.edge_count;
    }
    for (auto& a : g.in_adj) std::sort(a.begin(), a.end());
    return g;
}

InducedSubgraph induced_subgraph(const DefGraph& g, const std::vector<int>& vertices) {
    std::vector<int> keep(vertices);
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    for (int v : keep)
        if (v < 0 || v >= g.size())
            throw ArgumentError("induced_subgraph: vertex id out of range");

    std::vector<int> local(g.size(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) local[keep[i]] = static_cast<int>(i);

    InducedSubgraph sub;
    sub.orig_ids = keep;
    DefGraph& s = sub.graph;
    for (int v : keep) {
        s.word_to_id.emplace(g.words[v], static_cast<int>(s.words.size()));
        s.words.push_back(g.words[v]);
    }
    s.out_adj.resize(keep.size());
    s.in_adj.resize(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        for (int w : g.out_adj[keep[i]]) {
            if (local[w] < 0) continue;
            s.out_adj[i].push_back(local[w]);
            s.in_adj[local[w]].push_back(static_cast<int>(i));
            if (local[w] == static_cast<int>(i)) s.self_loops.push_back(static_cast<int>(i));
            ++s.edge_count;
        }
    }
    for (auto& a : s.in_adj) std::sort(a.begin(), a.end());
    std::sort(s.self_loops.begin(), s.self_loops.end());
    return sub;
}

SccDecomposition scc(const DefGraph& g) {
    const int n = g.size();
    SccDecomposition d;
    d.component_of.assign(n, -1);

    std::vector<int> index(n, -1), lowlink(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<int> stack;
    int counter = 0;

    struct Frame {
        int v;
        std::size_t next;
    };
    std::vector<Frame> frames;

    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        frames.push_back({root, 0});
        index[root] = lowlink[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.next < g.out_adj[f.v].size()) {
                int w = g.out_adj[f.v][f.next++];
                if (index[w] == -1) {
                    index[w] = lowlink[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    lowlink[f.v] = std::min(lowlink[f.v], index[w]);
                }
            } else {
                int v = f.v;
                frames.pop_back();
                if (lowlink[v] == index[v]) {
                    std::vector<int> comp;
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        d.component_of[w] = d.count();
                        comp.push_back(w);
                        if (w == v) break;
                    }
                    std::sort(comp.begin(), comp.end());
                    d.components.push_back(std::move(comp));
                }
                if (!frames.empty())
                    lowlink[frames.back().v] = std::min(lowlink[frames.back().v], lowlink[v]);
            }
        }
    }

    d.condensation_adj.resize(d.count());
    std::set<std::pair<int, int>> seen;
    for (int u = 0; u < n; ++u) {
        for (int v : g.out_adj[u]) {
            int cu = d.component_of[u], cv = d.component_of[v];
            if (cu != cv && seen.insert({cu, cv}).second)
                d.condensation_adj[cu].push_back(cv);
        }
    }
    for (auto& a : d.condensation_adj) std::sort(a.begin(), a.end());
    return d;
}

std::vector<int> reachable_from(const DefGraph& g, const std::vector<int>& start,
                                Direction dir) {
    const auto& adj = dir == Direction::forward ? g.out_adj : g.in_adj;
    std::vector<char> seen(g.size(), 0);
    std::deque<int> queue;
    for (int v : start) {
        if (v < 0 || v >= g.size())
            throw ArgumentError("reachable_from: vertex id out of range");
        if (!seen[v]) {
            seen[v] = 1;
            queue.push_back(v);
        }
    }
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : adj[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                queue.push_back(w);
            }
        }
    }
    std::vector<int> out;
    for (int v = 0; v < g.size(); ++v)
        if (seen[v]) out.push_back(v);
    return out;
}

std::vector<int> shortest_cycle_through(const DefGraph& g, const std::vector<char>& allowed,
                                        int v) {
    if (v < 0 || v >= g.size() || static_cast<int>(allowed.size()) != g.size())
        throw ArgumentError("shortest_cycle_through: bad arguments");
    if (!allowed[v]) return {};
    std::vector<int> parent(g.size(), -2);
    std::deque<int> queue{v};
    parent[v] = -1;
    int closed_from = -1;
    while (!queue.empty() && closed_from == -1) {
        int u = queue.front();
        queue.pop_front();
        for (int w : g.out_adj[u]) {
            if (!allowed[w]) continue;
            if (w == v) {
                closed_from = u;
                break;
            }
            if (parent[w] == -2) {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    std::vector<int> path;
    if (closed_from != -1) {
        for (int u = closed_from; u != -1; u = parent[u]) path.push_back(u);
        std::reverse(path.begin(), path.end());
    }
    return path;
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

} // namespace

std::string to_dot(const DefGraph& g) {
    std::string out = "digraph definitions {\n";
    for (int v = 0; v < g.size(); ++v)
        out += "  \"" + dot_escape(g.words[v]) + "\";\n";
    for (int u = 0; u < g.size(); ++u)
        for (int v : g.out_adj[u])
            out += "  \"" + dot_escape(g.words[u]) + "\" -> \"" + dot_escape(g.words[v]) + "\";\n";
    out += "}\n";
    return out;
}

std::string condensation_to_dot(const DefGraph& g, const SccDecomposition& d) {
    std::string out = "digraph condensation {\n";
    for (int c = 0; c < d.count(); ++c) {
        const auto& members = d.components[c];
        std::string label;
        if (members.size() <= 6) {
            for (std::size_t i = 0; i < members.size(); ++i) {
                if (i) label += ' ';
                label += dot_escape(g.words[members[i]]);
            }
        } else {
            label = std::to_string(members.size()) + " words";
        }
        out += "  c" + std::to_string(c) + " [label=\"" + label + "\"];\n";
    }
    for (int c = 0; c < d.count(); ++c)
        for (int s : d.condensation_adj[c])
            out += "  c" + std::to_string(c) + " -> c" + std::to_string(s) + ";\n";
    out += "}\n";
    return out;
}

nlohmann::json edges_to_json(const DefGraph& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (int u = 0; u < g.size(); ++u)
        for (int v : g.out_adj[u])
            edges.push_back({u, v});
    return {{"words", g.words}, {"edges", std::move(edges)}};
}

nlohmann::json graph_stats(const DefGraph& g, const SccDecomposition& d) {
    int orphan_count = 0;
    for (int v = 0; v < g.size(); ++v)
        if (g.in_adj[v].empty()) ++orphan_count;
    std::size_t largest = 0;
    int cyclic = 0;
    for (int c = 0; c < d.count(); ++c) {
        largest = std::max(largest, d.components[c].size());
        if (d.is_cyclic(c, g)) ++cyclic;
    }
    return {{"vertex_count", g.size()},
            {"edge_count", g.edge_count},
            {"self_loop_count", g.self_loops.size()},
            {"orphan_count", orphan_count},
            {"scc",
             {{"component_count", d.count()},
              {"cyclic_component_count", cyclic},
              {"largest_component_size", largest}}}};
}

} // namespace minset
