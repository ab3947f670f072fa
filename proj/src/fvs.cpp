#include "minset/fvs.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <deque>
#include <limits>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <tuple>

#include "minset/closure.hpp"
#include "minset/errors.hpp"

namespace minset {

void validate_solver_config(const SolverConfig& cfg) {
    if (cfg.exact_threshold < 1 || cfg.exact_threshold > 64)
        throw ArgumentError("exact_threshold must be between 1 and 64");
    if (!(cfg.time_budget_s > 0))
        throw ArgumentError("time_budget_s must be positive");
    if (cfg.ls_iterations < 0)
        throw ArgumentError("ls_iterations must be non-negative");
}

FvsInstance make_instance(const DefGraph& g, const std::vector<int>& vertices,
                          const std::vector<int>& excluded) {
    std::vector<int> verts(vertices);
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    for (int v : verts)
        if (v < 0 || v >= g.size())
            throw ArgumentError("make_instance: vertex id out of range");

    std::vector<int> excl(excluded);
    std::sort(excl.begin(), excl.end());
    excl.erase(std::unique(excl.begin(), excl.end()), excl.end());
    std::vector<int> excl_in;
    std::set_intersection(excl.begin(), excl.end(), verts.begin(), verts.end(),
                          std::back_inserter(excl_in));

    FvsInstance inst;
    std::set_intersection(g.self_loops.begin(), g.self_loops.end(), verts.begin(),
                          verts.end(), std::back_inserter(inst.forced));
    for (int v : inst.forced)
        if (std::binary_search(excl_in.begin(), excl_in.end(), v))
            throw InfeasibleError("make_instance: self-loop vertex '" + g.words[v] +
                                  "' is excluded but belongs to every solution");

    std::set_difference(verts.begin(), verts.end(), inst.forced.begin(),
                        inst.forced.end(), std::back_inserter(inst.vertex_ids));
    std::set_difference(excl_in.begin(), excl_in.end(), inst.forced.begin(),
                        inst.forced.end(), std::back_inserter(inst.excluded));

    std::vector<int> local(g.size(), -1);
    for (std::size_t i = 0; i < inst.vertex_ids.size(); ++i)
        local[inst.vertex_ids[i]] = static_cast<int>(i);
    inst.out.resize(inst.vertex_ids.size());
    inst.in.resize(inst.vertex_ids.size());
    for (std::size_t i = 0; i < inst.vertex_ids.size(); ++i) {
        for (int w : g.out_adj[inst.vertex_ids[i]]) {
            int lw = local[w];
            if (lw < 0 || lw == static_cast<int>(i)) continue;
            inst.out[i].push_back(lw);
            inst.in[lw].push_back(static_cast<int>(i));
        }
    }
    for (auto& a : inst.in) std::sort(a.begin(), a.end());
    return inst;
}

std::vector<FvsInstance> cyclic_instances(const DefGraph& g, const SccDecomposition& d) {
    std::vector<FvsInstance> out;
    for (int c = 0; c < d.count(); ++c)
        if (d.is_cyclic(c, g)) out.push_back(make_instance(g, d.components[c]));
    return out;
}

namespace {

// Kahn's algorithm over the instance subgraph with a blocked-out vertex set.
bool acyclic_without(const FvsInstance& inst, const std::vector<char>& blocked) {
    const int n = inst.local_size();
    std::vector<int> indeg(n, 0);
    int alive = 0;
    for (int v = 0; v < n; ++v) {
        if (blocked[v]) continue;
        ++alive;
        for (int u : inst.in[v])
            if (!blocked[u]) ++indeg[v];
    }
    std::deque<int> q;
    for (int v = 0; v < n; ++v)
        if (!blocked[v] && indeg[v] == 0) q.push_back(v);
    int seen = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        ++seen;
        for (int w : inst.out[v])
            if (!blocked[w] && --indeg[w] == 0) q.push_back(w);
    }
    return seen == alive;
}

// First directed cycle found by DFS (roots and neighbors in ascending order),
// or empty when the residual is acyclic.
std::vector<int> find_cycle(const FvsInstance& inst, const std::vector<char>& blocked) {
    const int n = inst.local_size();
    std::vector<char> state(n, 0); // 0 new, 1 on stack, 2 done
    std::vector<std::size_t> iter(n, 0);
    std::vector<int> stack;
    for (int root = 0; root < n; ++root) {
        if (blocked[root] || state[root]) continue;
        stack.assign(1, root);
        state[root] = 1;
        iter[root] = 0;
        while (!stack.empty()) {
            int v = stack.back();
            if (iter[v] < inst.out[v].size()) {
                int w = inst.out[v][iter[v]++];
                if (blocked[w] || state[w] == 2) continue;
                if (state[w] == 1) {
                    auto it = std::find(stack.begin(), stack.end(), w);
                    return std::vector<int>(it, stack.end());
                }
                state[w] = 1;
                iter[w] = 0;
                stack.push_back(w);
            } else {
                state[v] = 2;
                stack.pop_back();
            }
        }
    }
    return {};
}

// Greedy construction over local ids: trim vertices that cannot lie on a
// cycle, otherwise take the vertex with the largest in*out degree product
// (smallest id on ties). Ends when the residual is empty, i.e. acyclic.
std::vector<int> greedy_fvs_local(const FvsInstance& inst) {
    const int n = inst.local_size();
    std::vector<long> din(n), dout(n);
    std::vector<char> alive(n, 1);
    int alive_cnt = n;
    std::deque<int> trimq;
    using Entry = std::tuple<long, int>; // (degree product, -id)
    std::priority_queue<Entry> pq;

    auto consider = [&](int v) {
        if (!alive[v]) return;
        if (din[v] == 0 || dout[v] == 0)
            trimq.push_back(v);
        else
            pq.push({din[v] * dout[v], -v});
    };
    auto kill = [&](int v) {
        alive[v] = 0;
        --alive_cnt;
        for (int w : inst.out[v])
            if (alive[w]) {
                --din[w];
                consider(w);
            }
        for (int u : inst.in[v])
            if (alive[u]) {
                --dout[u];
                consider(u);
            }
    };

    for (int v = 0; v < n; ++v) {
        din[v] = static_cast<long>(inst.in[v].size());
        dout[v] = static_cast<long>(inst.out[v].size());
        consider(v);
    }

    std::vector<int> chosen;
    while (alive_cnt > 0) {
        while (!trimq.empty()) {
            int v = trimq.front();
            trimq.pop_front();
            if (alive[v] && (din[v] == 0 || dout[v] == 0)) kill(v);
        }
        if (alive_cnt == 0) break;
        int v = -1;
        while (!pq.empty()) {
            auto [p, nid] = pq.top();
            int cand = -nid;
            if (!alive[cand] || p != din[cand] * dout[cand]) {
                pq.pop();
                continue;
            }
            v = cand;
            pq.pop();
            break;
        }
        if (v == -1) break;
        chosen.push_back(v);
        kill(v);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

// Drops every vertex whose removal from the solution keeps the residual
// acyclic, scanning in ascending id order. Guarantees minimality.
void make_minimal(const FvsInstance& inst, std::vector<int>& sol) {
    std::vector<char> blocked(inst.local_size(), 0);
    for (int v : sol) blocked[v] = 1;
    std::vector<int> kept;
    for (int v : sol) {
        blocked[v] = 0;
        if (acyclic_without(inst, blocked)) continue;
        blocked[v] = 1;
        kept.push_back(v);
    }
    sol = std::move(kept);
}

void local_search(const FvsInstance& inst, std::vector<int>& sol, const SolverConfig& cfg) {
    if (cfg.ls_iterations <= 0 || sol.empty()) return;
    std::mt19937_64 rng(cfg.seed);
    std::vector<char> blocked(inst.local_size(), 0);
    for (int v : sol) blocked[v] = 1;
    std::vector<int> cur = sol;
    for (long it = 0; it < cfg.ls_iterations && !cur.empty(); ++it) {
        std::size_t idx = static_cast<std::size_t>(rng() % cur.size());
        int v = cur[idx];
        blocked[v] = 0;
        auto cyc = find_cycle(inst, blocked);
        if (cyc.empty()) {
            cur.erase(cur.begin() + static_cast<long>(idx));
            continue;
        }
        std::sort(cyc.begin(), cyc.end());
        bool swapped = false;
        for (int u : cyc) {
            if (u == v) continue;
            blocked[u] = 1;
            if (acyclic_without(inst, blocked)) {
                cur.erase(cur.begin() + static_cast<long>(idx));
                cur.insert(std::lower_bound(cur.begin(), cur.end(), u), u);
                swapped = true;
                break;
            }
            blocked[u] = 0;
        }
        if (!swapped) blocked[v] = 1;
    }
    sol = std::move(cur);
}

} // namespace

std::vector<int> heuristic_fvs(const FvsInstance& inst, const SolverConfig& cfg) {
    validate_solver_config(cfg);
    if (!inst.excluded.empty())
        throw ArgumentError("heuristic_fvs: exclusion constraints are not supported");
    auto sol = greedy_fvs_local(inst);
    make_minimal(inst, sol);
    if (cfg.ls_iterations > 0) {
        local_search(inst, sol, cfg);
        make_minimal(inst, sol);
    }
    std::vector<int> out = inst.forced;
    for (int v : sol) out.push_back(inst.vertex_ids[v]);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

constexpr std::uint64_t bit_of(int v) { return std::uint64_t{1} << v; }

struct BitGraph {
    int n = 0;
    std::array<std::uint64_t, 64> out{}, in{};
    std::uint64_t alive = 0;
    std::uint64_t excluded = 0;
};

BitGraph bitgraph_of(const FvsInstance& inst) {
    BitGraph bg;
    bg.n = inst.local_size();
    bg.alive = bg.n == 64 ? ~std::uint64_t{0} : (bit_of(bg.n) - 1);
    for (int v = 0; v < bg.n; ++v)
        for (int w : inst.out[v]) {
            bg.out[v] |= bit_of(w);
            bg.in[w] |= bit_of(v);
        }
    for (int x : inst.excluded) {
        auto it = std::lower_bound(inst.vertex_ids.begin(), inst.vertex_ids.end(), x);
        bg.excluded |= bit_of(static_cast<int>(it - inst.vertex_ids.begin()));
    }
    return bg;
}

// Reachability through at least one edge, restricted to alive vertices.
std::array<std::uint64_t, 64> reach_closure(const BitGraph& g) {
    std::array<std::uint64_t, 64> reach{};
    for (std::uint64_t m = g.alive; m; m &= m - 1) {
        int v = std::countr_zero(m);
        reach[v] = g.out[v] & g.alive;
    }
    for (std::uint64_t mk = g.alive; mk; mk &= mk - 1) {
        int k = std::countr_zero(mk);
        for (std::uint64_t mv = g.alive; mv; mv &= mv - 1) {
            int v = std::countr_zero(mv);
            if (reach[v] & bit_of(k)) reach[v] |= reach[k];
        }
    }
    return reach;
}

std::uint64_t cyclic_vertices(const BitGraph& g) {
    auto reach = reach_closure(g);
    std::uint64_t cyc = 0;
    for (std::uint64_t m = g.alive; m; m &= m - 1) {
        int v = std::countr_zero(m);
        if (reach[v] & bit_of(v)) cyc |= bit_of(v);
    }
    return cyc;
}

// Shortest cycle through v within avail, as a vertex mask. v must lie on one.
std::uint64_t bfs_cycle_mask(const BitGraph& g, std::uint64_t avail, int v) {
    std::array<int, 64> parent;
    parent.fill(-2);
    parent[v] = -1;
    std::deque<int> queue{v};
    int closed_from = -1;
    while (!queue.empty() && closed_from == -1) {
        int u = queue.front();
        queue.pop_front();
        std::uint64_t next = g.out[u] & avail;
        if (next & bit_of(v)) {
            closed_from = u;
            break;
        }
        for (std::uint64_t m = next; m; m &= m - 1) {
            int w = std::countr_zero(m);
            if (parent[w] == -2) {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    std::uint64_t mask = 0;
    for (int u = closed_from; u != -1; u = parent[u]) mask |= bit_of(u);
    return mask;
}

// Count of vertex-disjoint cycles found greedily; a valid lower bound on the
// number of vertices any solution still needs.
int disjoint_cycle_lb(const BitGraph& g) {
    BitGraph h = g;
    int count = 0;
    while (true) {
        std::uint64_t cyc = cyclic_vertices(h);
        if (!cyc) break;
        int v = std::countr_zero(cyc);
        std::uint64_t mask = bfs_cycle_mask(h, h.alive, v);
        h.alive &= ~mask;
        ++count;
    }
    return count;
}

// Bypasses v, whose only alive in-neighbor is u: every path through v now
// runs through u directly, which can only create the self-loop u->u when the
// edge v->u existed.
void contract_via_in(BitGraph& g, int v, int u) {
    std::uint64_t ov = g.out[v] & g.alive & ~bit_of(v);
    g.alive &= ~bit_of(v);
    ov &= g.alive;
    g.out[u] = (g.out[u] | ov) & ~bit_of(v);
    for (std::uint64_t m = ov; m; m &= m - 1) {
        int w = std::countr_zero(m);
        g.in[w] = (g.in[w] & ~bit_of(v)) | bit_of(u);
    }
    g.in[u] &= ~bit_of(v);
}

void contract_via_out(BitGraph& g, int v, int w) {
    std::uint64_t iv = g.in[v] & g.alive & ~bit_of(v);
    g.alive &= ~bit_of(v);
    iv &= g.alive;
    g.in[w] = (g.in[w] | iv) & ~bit_of(v);
    for (std::uint64_t m = iv; m; m &= m - 1) {
        int u = std::countr_zero(m);
        g.out[u] = (g.out[u] & ~bit_of(v)) | bit_of(w);
    }
    g.out[w] &= ~bit_of(v);
}

struct ExactCtx {
    int best = std::numeric_limits<int>::max();
    std::uint64_t best_set = 0;
    bool found = false;
    bool timed_out = false;
    long nodes = 0;
    std::chrono::steady_clock::time_point deadline;
};

void exact_dfs(BitGraph g, int chosen_cnt, std::uint64_t chosen_set, ExactCtx& ctx) {
    if (ctx.timed_out) return;
    if ((++ctx.nodes & 1023) == 0 &&
        std::chrono::steady_clock::now() > ctx.deadline) {
        ctx.timed_out = true;
        return;
    }

    for (;;) {
        // Self-loop vertices belong to every solution; an excluded one kills
        // the whole branch.
        std::uint64_t selfs = 0;
        for (std::uint64_t m = g.alive; m; m &= m - 1) {
            int v = std::countr_zero(m);
            if (g.out[v] & bit_of(v)) selfs |= bit_of(v);
        }
        if (selfs) {
            if (selfs & g.excluded) return;
            chosen_set |= selfs;
            chosen_cnt += std::popcount(selfs);
            g.alive &= ~selfs;
            continue;
        }
        // Vertices on no cycle never help; drop them.
        std::uint64_t cyc = cyclic_vertices(g);
        if (cyc != g.alive) {
            g.alive = cyc;
            continue;
        }
        if (!g.alive) break;
        // Degree-one bypass, highest id first so that small ids are kept as
        // solution candidates. The bypass target must not be excluded unless
        // the contracted vertex itself is (replacing v by the target must
        // stay legal).
        bool contracted = false;
        for (int v = 63; v >= 0 && !contracted; --v) {
            if (!(g.alive & bit_of(v))) continue;
            bool v_exc = (g.excluded & bit_of(v)) != 0;
            std::uint64_t im = g.in[v] & g.alive & ~bit_of(v);
            std::uint64_t om = g.out[v] & g.alive & ~bit_of(v);
            if (std::popcount(im) == 1) {
                int u = std::countr_zero(im);
                if (v_exc || !(g.excluded & bit_of(u))) {
                    contract_via_in(g, v, u);
                    contracted = true;
                }
            } else if (std::popcount(om) == 1) {
                int w = std::countr_zero(om);
                if (v_exc || !(g.excluded & bit_of(w))) {
                    contract_via_out(g, v, w);
                    contracted = true;
                }
            }
        }
        if (contracted) continue;
        break;
    }

    if (!g.alive) {
        if (!ctx.found || chosen_cnt < ctx.best) {
            ctx.found = true;
            ctx.best = chosen_cnt;
            ctx.best_set = chosen_set;
        }
        return;
    }

    if (ctx.found && chosen_cnt + disjoint_cycle_lb(g) >= ctx.best) return;

    int bv = -1;
    long bp = -1;
    for (std::uint64_t m = g.alive & ~g.excluded; m; m &= m - 1) {
        int v = std::countr_zero(m);
        long p = static_cast<long>(std::popcount(g.in[v] & g.alive)) *
                 std::popcount(g.out[v] & g.alive);
        if (p > bp) {
            bp = p;
            bv = v;
        }
    }
    if (bv == -1) return; // every remaining cycle vertex is excluded

    BitGraph g1 = g;
    g1.alive &= ~bit_of(bv);
    exact_dfs(g1, chosen_cnt + 1, chosen_set | bit_of(bv), ctx);
    BitGraph g2 = g;
    g2.excluded |= bit_of(bv);
    exact_dfs(g2, chosen_cnt, chosen_set, ctx);
}

} // namespace

ExactResult exact_fvs(const FvsInstance& inst,
                      std::chrono::steady_clock::time_point deadline) {
    if (inst.local_size() > 64)
        throw UnsupportedError("exact_fvs: instance has " +
                               std::to_string(inst.local_size()) +
                               " residual vertices; the exact solver handles at most 64");
    if (std::chrono::steady_clock::now() > deadline) {
        ExactResult res;
        res.timed_out = true;
        return res;
    }
    ExactCtx ctx;
    ctx.deadline = deadline;
    if (inst.excluded.empty() && inst.local_size() > 0) {
        // The greedy solution is a valid upper bound and often optimal.
        auto h = greedy_fvs_local(inst);
        make_minimal(inst, h);
        ctx.found = true;
        ctx.best = static_cast<int>(h.size());
        for (int v : h) ctx.best_set |= bit_of(v);
    }
    exact_dfs(bitgraph_of(inst), 0, 0, ctx);

    ExactResult res;
    res.nodes = ctx.nodes;
    if (ctx.timed_out) {
        res.timed_out = true;
        return res;
    }
    if (!ctx.found)
        throw InfeasibleError(
            "exact_fvs: the exclusion constraints admit no feedback vertex set");
    res.solution = inst.forced;
    for (std::uint64_t m = ctx.best_set; m; m &= m - 1)
        res.solution.push_back(inst.vertex_ids[std::countr_zero(m)]);
    std::sort(res.solution.begin(), res.solution.end());
    return res;
}

GroundingSet solve_minset(const DefGraph& g, const SolverConfig& cfg) {
    validate_solver_config(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    const auto deadline =
        t0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                 std::chrono::duration<double>(cfg.time_budget_s));

    auto d = scc(g);
    GroundingSet gs;
    bool all_exact = true;
    for (int c = 0; c < d.count(); ++c) {
        if (!d.is_cyclic(c, g)) continue;
        auto inst = make_instance(g, d.components[c]);
        ComponentSolution cs;
        cs.component_id = c;
        cs.component_size = d.components[c].size();
        if (static_cast<int>(d.components[c].size()) <= cfg.exact_threshold) {
            auto r = exact_fvs(inst, deadline);
            if (r.timed_out) {
                cs.chosen = heuristic_fvs(inst, cfg);
                cs.provenance = Provenance::heuristic;
                cs.timed_out = true;
            } else {
                cs.chosen = r.solution;
                cs.provenance = Provenance::exact;
            }
        } else {
            cs.chosen = heuristic_fvs(inst, cfg);
            cs.provenance = Provenance::heuristic;
        }
        all_exact = all_exact && cs.provenance == Provenance::exact;
        gs.timed_out = gs.timed_out || cs.timed_out;
        gs.ids.insert(gs.ids.end(), cs.chosen.begin(), cs.chosen.end());
        gs.components.push_back(std::move(cs));
    }
    std::sort(gs.ids.begin(), gs.ids.end());
    gs.objective = static_cast<int>(gs.ids.size());
    gs.provenance = all_exact ? Provenance::exact : Provenance::heuristic;
    gs.words.reserve(gs.ids.size());
    for (int v : gs.ids) gs.words.push_back(g.words[v]);
    gs.verified = ivg_closure(g, gs.ids, OrphanPolicy::auto_learnable).all_learned();
    gs.elapsed_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return gs;
}

VerifyReport verify_grounding_set(const DefGraph& g, const std::vector<int>& candidate,
                                  std::size_t witness_limit) {
    auto rep = ivg_closure(g, candidate, OrphanPolicy::auto_learnable);
    VerifyReport vr;
    vr.verified = rep.all_learned();
    vr.learned_count = static_cast<long>(rep.learned.size());
    vr.residue = rep.unlearnable;
    if (vr.verified) return vr;

    std::vector<char> allowed(g.size(), 0);
    for (int v : vr.residue) allowed[v] = 1;
    auto sub = induced_subgraph(g, vr.residue);
    auto sd = scc(sub.graph);
    std::vector<int> starts; // smallest original vertex of each cyclic component
    for (int c = 0; c < sd.count(); ++c)
        if (sd.is_cyclic(c, sub.graph))
            starts.push_back(sub.orig_ids[sd.components[c].front()]);
    std::sort(starts.begin(), starts.end());
    if (witness_limit && starts.size() > witness_limit) starts.resize(witness_limit);
    for (int v : starts) {
        auto cycle = shortest_cycle_through(g, allowed, v);
        if (!cycle.empty()) vr.witness_cycles.push_back(std::move(cycle));
    }
    return vr;
}

EnumerationResult enumerate_minsets(const DefGraph& g, int k, const SolverConfig& cfg) {
    validate_solver_config(cfg);
    if (k < 1) throw ArgumentError("enumerate_minsets: k must be >= 1");
    const auto deadline =
        std::chrono::steady_clock::now() +
        std::chrono::duration_cast<std::chrono::steady_clock::duration>(
            std::chrono::duration<double>(cfg.time_budget_s));

    auto d = scc(g);
    std::vector<int> cyclic_union;
    for (int c = 0; c < d.count(); ++c) {
        if (!d.is_cyclic(c, g)) continue;
        if (static_cast<int>(d.components[c].size()) > cfg.exact_threshold)
            throw UnsupportedError(
                "enumerate_minsets: a strongly connected component of size " +
                std::to_string(d.components[c].size()) +
                " exceeds the exact threshold of " + std::to_string(cfg.exact_threshold));
        cyclic_union.insert(cyclic_union.end(), d.components[c].begin(),
                            d.components[c].end());
    }
    std::sort(cyclic_union.begin(), cyclic_union.end());

    EnumerationResult er;
    // All solutions live inside the union of cyclic components; solve there.
    auto work = induced_subgraph(g, cyclic_union);
    const DefGraph& H = work.graph;

    bool timed = false;
    // Solves min-FVS over H with forced-in and excluded vertices (H-local
    // ids). Returns nothing when the constraints are infeasible.
    auto solve_sub = [&](const std::vector<int>& forced_in,
                         const std::vector<int>& excluded)
        -> std::optional<std::vector<int>> {
        std::vector<int> rest;
        for (int v = 0; v < H.size(); ++v)
            if (!std::binary_search(forced_in.begin(), forced_in.end(), v))
                rest.push_back(v);
        auto sub = induced_subgraph(H, rest);
        std::vector<int> sub_local_of(H.size(), -1);
        for (std::size_t i = 0; i < sub.orig_ids.size(); ++i)
            sub_local_of[sub.orig_ids[i]] = static_cast<int>(i);
        std::vector<int> excl_sub;
        for (int v : excluded)
            if (sub_local_of[v] >= 0) excl_sub.push_back(sub_local_of[v]);
        std::sort(excl_sub.begin(), excl_sub.end());

        std::vector<int> sol = forced_in;
        auto sd = scc(sub.graph);
        try {
            for (int c = 0; c < sd.count(); ++c) {
                if (!sd.is_cyclic(c, sub.graph)) continue;
                auto inst = make_instance(sub.graph, sd.components[c], excl_sub);
                auto r = exact_fvs(inst, deadline);
                if (r.timed_out) {
                    timed = true;
                    return std::nullopt;
                }
                for (int v : r.solution) sol.push_back(sub.orig_ids[v]);
            }
        } catch (const InfeasibleError&) {
            return std::nullopt;
        }
        std::sort(sol.begin(), sol.end());
        return sol;
    };

    auto root = solve_sub({}, {});
    if (!root) {
        // Cannot happen without constraints, but fail loudly rather than lie.
        throw InfeasibleError("enumerate_minsets: unconstrained solve failed");
    }
    er.objective = static_cast<int>(root->size());

    // Subproblems ordered by (solution size, solution); each holds a distinct
    // optimum of its own subspace, so the set ordering acts as the queue.
    using Sub = std::tuple<std::size_t, std::vector<int>, std::vector<int>, std::vector<int>>;
    std::set<Sub> queue;
    queue.insert({root->size(), *root, {}, {}});

    std::vector<std::vector<int>> found;
    while (!queue.empty() && static_cast<int>(found.size()) < k && !timed) {
        auto top = *queue.begin();
        queue.erase(queue.begin());
        const auto& [size, sol, forced_in, excluded] = top;
        if (static_cast<int>(size) > er.objective) break;
        found.push_back(sol);

        std::vector<int> splittable;
        std::set_difference(sol.begin(), sol.end(), forced_in.begin(), forced_in.end(),
                            std::back_inserter(splittable));
        std::vector<int> child_forced = forced_in;
        for (std::size_t i = 0; i < splittable.size() && !timed; ++i) {
            std::vector<int> child_excluded = excluded;
            child_excluded.insert(std::lower_bound(child_excluded.begin(),
                                                   child_excluded.end(), splittable[i]),
                                  splittable[i]);
            auto r = solve_sub(child_forced, child_excluded);
            if (r) queue.insert({r->size(), *r, child_forced, child_excluded});
            child_forced.insert(std::lower_bound(child_forced.begin(), child_forced.end(),
                                                 splittable[i]),
                                splittable[i]);
        }
    }

    er.timed_out = timed;
    er.complete = !timed && (queue.empty() ||
                             static_cast<int>(std::get<0>(*queue.begin())) > er.objective);
    // Map back to original graph ids and order the list lexicographically.
    for (auto& sol : found) {
        for (int& v : sol) v = work.orig_ids[v];
        er.sets.push_back(std::move(sol));
    }
    std::sort(er.sets.begin(), er.sets.end());
    return er;
}

namespace {

std::vector<std::string> words_of(const DefGraph& g, const std::vector<int>& ids) {
    std::vector<std::string> ws;
    ws.reserve(ids.size());
    for (int v : ids) ws.push_back(g.words[v]);
    return ws;
}

const char* provenance_name(Provenance p) {
    return p == Provenance::exact ? "exact" : "heuristic";
}

} // namespace

nlohmann::json verify_to_json(const DefGraph& g, const VerifyReport& vr) {
    nlohmann::json cycles = nlohmann::json::array();
    for (const auto& c : vr.witness_cycles) cycles.push_back(words_of(g, c));
    return {{"verified", vr.verified},
            {"learned_count", vr.learned_count},
            {"residue", words_of(g, vr.residue)},
            {"witness_cycles", std::move(cycles)}};
}

nlohmann::json minset_report(const DefGraph& g, const GroundingSet& gs) {
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& cs : gs.components) {
        comps.push_back({{"component_id", cs.component_id},
                         {"component_size", cs.component_size},
                         {"chosen", words_of(g, cs.chosen)},
                         {"provenance", provenance_name(cs.provenance)},
                         {"timed_out", cs.timed_out}});
    }
    auto vr = verify_grounding_set(g, gs.ids);
    return {{"objective", gs.objective},
            {"words", gs.words},
            {"provenance", provenance_name(gs.provenance)},
            {"verified", gs.verified},
            {"timed_out", gs.timed_out},
            {"components", std::move(comps)},
            {"verification", verify_to_json(g, vr)}};
}

nlohmann::json enumeration_to_json(const DefGraph& g, const EnumerationResult& er) {
    nlohmann::json sets = nlohmann::json::array();
    for (const auto& s : er.sets) sets.push_back(words_of(g, s));
    return {{"objective", er.objective},
            {"count", er.sets.size()},
            {"complete", er.complete},
            {"timed_out", er.timed_out},
            {"sets", std::move(sets)}};
}

} // namespace minset
