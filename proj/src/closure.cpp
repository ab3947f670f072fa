#include "minset/closure.hpp"

#include <algorithm>
#include <queue>

#include "minset/errors.hpp"

namespace minset {

ClosureReport ivg_closure(const DefGraph& g, const std::vector<int>& seed,
                          OrphanPolicy policy) {
    const int n = g.size();
    ClosureReport rep;
    rep.vertex_count = n;
    rep.policy = policy;
    rep.seed = seed;
    std::sort(rep.seed.begin(), rep.seed.end());
    rep.seed.erase(std::unique(rep.seed.begin(), rep.seed.end()), rep.seed.end());
    for (int v : rep.seed)
        if (v < 0 || v >= n) throw ArgumentError("ivg_closure: seed id out of range");

    std::vector<char> learned(n, 0);
    rep.depth.assign(n, -1);
    // Count of still-unlearned defining words; a self-loop counts itself, so a
    // circular definition never becomes ready on its own.
    std::vector<long> pending(n);
    for (int v = 0; v < n; ++v) pending[v] = static_cast<long>(g.in_adj[v].size());

    std::priority_queue<int, std::vector<int>, std::greater<int>> ready;

    auto learn = [&](int v, int d) {
        learned[v] = 1;
        rep.depth[v] = d;
        rep.learning_order.push_back(v);
        for (int w : g.out_adj[v]) {
            if (--pending[w] == 0 && !learned[w]) ready.push(w);
        }
    };

    for (int s : rep.seed) learn(s, 0);
    if (policy == OrphanPolicy::auto_learnable) {
        for (int v = 0; v < n; ++v)
            if (!learned[v] && g.in_adj[v].empty()) ready.push(v);
    }

    while (!ready.empty()) {
        int v = ready.top();
        ready.pop();
        if (learned[v]) continue;
        int d = 0;
        for (int u : g.in_adj[v]) d = std::max(d, rep.depth[u] + 1);
        learn(v, d);
    }

    for (int v = 0; v < n; ++v)
        (learned[v] ? rep.learned : rep.unlearnable).push_back(v);
    return rep;
}

std::vector<GapEntry> teachability_gap(const DefGraph& g, const ClosureReport& report,
                                       std::size_t cycle_limit) {
    if (report.vertex_count != g.size())
        throw ArgumentError("teachability_gap: closure report is for a different graph");
    std::vector<char> unlearned(g.size(), 0);
    for (int v : report.unlearnable) unlearned[v] = 1;

    std::vector<GapEntry> gap;
    for (std::size_t i = 0; i < report.unlearnable.size(); ++i) {
        int v = report.unlearnable[i];
        GapEntry e;
        e.vertex = v;
        for (int u : g.in_adj[v])
            if (unlearned[u]) e.blocked_by.push_back(u);
        if (cycle_limit == 0 || i < cycle_limit)
            e.cycle = shortest_cycle_through(g, unlearned, v);
        gap.push_back(std::move(e));
    }
    return gap;
}

namespace {

std::vector<std::string> words_of(const DefGraph& g, const std::vector<int>& ids) {
    std::vector<std::string> ws;
    ws.reserve(ids.size());
    for (int v : ids) ws.push_back(g.words[v]);
    return ws;
}

} // namespace

nlohmann::json closure_to_json(const DefGraph& g, const ClosureReport& report) {
    nlohmann::json depths = nlohmann::json::object();
    for (int v : report.learned) depths[g.words[v]] = report.depth[v];
    int max_depth = 0;
    for (int v : report.learned) max_depth = std::max(max_depth, report.depth[v]);
    return {{"vertex_count", report.vertex_count},
            {"orphan_policy",
             report.policy == OrphanPolicy::auto_learnable ? "auto_learnable"
                                                           : "must_be_seeded"},
            {"seed", words_of(g, report.seed)},
            {"learned_count", report.learned.size()},
            {"all_learned", report.all_learned()},
            {"unlearnable", words_of(g, report.unlearnable)},
            {"max_depth", max_depth},
            {"depth", std::move(depths)},
            {"learning_order", words_of(g, report.learning_order)}};
}

nlohmann::json gap_to_json(const DefGraph& g, const std::vector<GapEntry>& gap) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : gap) {
        entries.push_back({{"word", g.words[e.vertex]},
                           {"blocked_by", words_of(g, e.blocked_by)},
                           {"cycle", words_of(g, e.cycle)}});
    }
    return {{"unlearnable_count", gap.size()}, {"entries", std::move(entries)}};
}

std::string closure_to_csv(const DefGraph& g, const ClosureReport& report) {
    std::string out = "word,depth,learned\n";
    for (int v = 0; v < g.size(); ++v) {
        out += g.words[v];
        out += ',';
        if (report.depth[v] >= 0) out += std::to_string(report.depth[v]);
        out += ',';
        out += report.depth[v] >= 0 ? '1' : '0';
        out += '\n';
    }
    return out;
}

} // namespace minset
