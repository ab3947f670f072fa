#include <algorithm>
#include <chrono>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"

#include "minset/closure.hpp"
#include "minset/errors.hpp"
#include "minset/fvs.hpp"
#include "oracles.hpp"

using namespace minset;

namespace {

const std::string kDataDir = MINSET_DATA_DIR;

DefGraph toy_graph() {
    auto entries = parse_jsonl(kDataDir + "/toy_dictionary.jsonl");
    auto fw = load_function_words(kDataDir + "/function_words_en.txt");
    return build_graph(build_lexicon(entries, fw, LexiconConfig{}));
}

std::vector<int> ids_of(const DefGraph& g, const std::vector<const char*>& words) {
    std::vector<int> ids;
    for (const char* w : words) ids.push_back(g.word_to_id.at(w));
    std::sort(ids.begin(), ids.end());
    return ids;
}

FvsInstance whole_graph_instance(const DefGraph& g) {
    std::vector<int> all(g.size());
    for (int v = 0; v < g.size(); ++v) all[v] = v;
    return make_instance(g, all);
}

bool acyclic_without(const DefGraph& g, const std::vector<int>& removed) {
    return oracle::is_acyclic_without(g, oracle::mask_of(removed));
}

} // namespace

TEST_CASE("a plain cycle is grounded by its smallest word") {
    auto g = graph_from_edges(3, {{0, 1}, {1, 2}, {2, 0}});
    auto gs = solve_minset(g);
    CHECK(gs.ids == std::vector<int>{0});
    CHECK(gs.objective == 1);
    CHECK(gs.provenance == Provenance::exact);
    CHECK(gs.verified);
    CHECK_FALSE(gs.timed_out);
}

TEST_CASE("toy dictionary needs exactly four grounding words") {
    auto g = toy_graph();
    auto gs = solve_minset(g);
    CHECK(gs.objective == 4);
    CHECK(gs.ids == ids_of(g, {"fruit", "part", "plant", "round"}));
    CHECK(gs.words == std::vector<std::string>{"fruit", "part", "plant", "round"});
    CHECK(gs.provenance == Provenance::exact);
    CHECK(gs.verified);
    REQUIRE(gs.components.size() == 3);
    for (const auto& c : gs.components) CHECK_FALSE(c.timed_out);
}

TEST_CASE("toy enumeration finds all six optima") {
    auto g = toy_graph();
    auto er = enumerate_minsets(g, 10);
    CHECK(er.objective == 4);
    CHECK(er.complete);
    std::vector<std::vector<int>> want = {
        ids_of(g, {"fruit", "part", "plant", "round"}),
        ids_of(g, {"fruit", "part", "plant", "shape"}),
        ids_of(g, {"grow", "part", "round", "seed"}),
        ids_of(g, {"grow", "part", "seed", "shape"}),
        ids_of(g, {"part", "plant", "round", "seed"}),
        ids_of(g, {"part", "plant", "seed", "shape"}),
    };
    std::sort(want.begin(), want.end());
    CHECK(er.sets == want);
}

TEST_CASE("enumeration can stop early") {
    auto g = toy_graph();
    auto er = enumerate_minsets(g, 3);
    CHECK(er.sets.size() == 3);
    CHECK_FALSE(er.complete);
    for (const auto& s : er.sets) CHECK(s.size() == 4);
}

TEST_CASE("two disjoint two-cycles have four grounding sets") {
    auto g = graph_from_edges(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}});
    auto er = enumerate_minsets(g, 10);
    CHECK(er.objective == 2);
    CHECK(er.complete);
    CHECK(er.sets == std::vector<std::vector<int>>{{0, 2}, {0, 3}, {1, 2}, {1, 3}});
}

TEST_CASE("self-loops are forced into every solution") {
    auto g = graph_from_edges(3, {{0, 0}, {1, 2}, {2, 1}});
    auto gs = solve_minset(g);
    CHECK(gs.ids == std::vector<int>{0, 1});

    auto inst = whole_graph_instance(g);
    CHECK(inst.forced == std::vector<int>{0});
    CHECK_THROWS_AS(make_instance(g, {0, 1, 2}, {0}), InfeasibleError);
}

TEST_CASE("exact solver matches the brute-force oracle") {
    std::mt19937_64 rng(31);
    for (int iter = 0; iter < 200; ++iter) {
        auto g = oracle::random_digraph(rng, 3 + static_cast<int>(rng() % 6), 0.3);
        auto gs = solve_minset(g);
        CHECK(gs.objective == oracle::min_fvs_size(g));
        CHECK(acyclic_without(g, gs.ids));
        CHECK(gs.provenance == Provenance::exact);
    }
}

TEST_CASE("every solver output is minimal") {
    std::mt19937_64 rng(32);
    for (int iter = 0; iter < 100; ++iter) {
        auto g = oracle::random_digraph(rng, 4 + static_cast<int>(rng() % 6), 0.3);
        auto gs = solve_minset(g);
        for (std::size_t i = 0; i < gs.ids.size(); ++i) {
            auto reduced = gs.ids;
            reduced.erase(reduced.begin() + static_cast<long>(i));
            CHECK_FALSE(acyclic_without(g, reduced));
        }
    }
}

TEST_CASE("heuristic output is feasible and minimal even with local search") {
    std::mt19937_64 rng(33);
    SolverConfig cfg;
    cfg.ls_iterations = 50;
    cfg.seed = 7;
    for (int iter = 0; iter < 100; ++iter) {
        auto g = oracle::random_digraph(rng, 4 + static_cast<int>(rng() % 9), 0.25);
        auto inst = whole_graph_instance(g);
        auto sol = heuristic_fvs(inst, cfg);
        CHECK(acyclic_without(g, sol));
        for (std::size_t i = 0; i < sol.size(); ++i) {
            auto reduced = sol;
            reduced.erase(reduced.begin() + static_cast<long>(i));
            CHECK_FALSE(acyclic_without(g, reduced));
        }
        CHECK(heuristic_fvs(inst, cfg) == sol);
    }
}

TEST_CASE("heuristic rejects exclusion constraints") {
    auto g = graph_from_edges(2, {{0, 1}, {1, 0}});
    auto inst = make_instance(g, {0, 1}, {0});
    CHECK_THROWS_AS(heuristic_fvs(inst), ArgumentError);
}

TEST_CASE("exact solver honors forced and excluded vertices") {
    auto g = graph_from_edges(3, {{0, 1}, {1, 2}, {2, 0}});

    auto inst = make_instance(g, {0, 1, 2}, {0});
    auto res = exact_fvs(inst);
    CHECK(res.solution == std::vector<int>{1});

    inst = make_instance(g, {0, 1, 2}, {0, 1});
    res = exact_fvs(inst);
    CHECK(res.solution == std::vector<int>{2});

    CHECK_THROWS_AS(exact_fvs(make_instance(g, {0, 1, 2}, {0, 1, 2})), InfeasibleError);
}

TEST_CASE("exact solver reports a timeout on an expired deadline") {
    auto g = graph_from_edges(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}});
    auto inst = whole_graph_instance(g);
    auto past = std::chrono::steady_clock::now() - std::chrono::seconds(1);
    auto res = exact_fvs(inst, past);
    CHECK(res.timed_out);
}

TEST_CASE("oversized instances are rejected up front") {
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < 70; ++v) edges.push_back({v, (v + 1) % 70});
    auto g = graph_from_edges(70, edges);
    CHECK_THROWS_AS(exact_fvs(whole_graph_instance(g)), UnsupportedError);

    // solve_minset falls back to the heuristic instead.
    SolverConfig cfg;
    cfg.exact_threshold = 64;
    auto gs = solve_minset(g, cfg);
    CHECK(gs.objective == 1);
    CHECK(gs.provenance == Provenance::heuristic);
    CHECK(gs.verified);
}

TEST_CASE("components above the exact threshold go to the heuristic") {
    auto g = graph_from_edges(5, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 3}});
    SolverConfig cfg;
    cfg.exact_threshold = 2;
    auto gs = solve_minset(g, cfg);
    CHECK(gs.objective == 2);
    CHECK(gs.provenance == Provenance::heuristic); // mixed solves report heuristic
    REQUIRE(gs.components.size() == 2);
    CHECK(gs.components[0].provenance != gs.components[1].provenance);
    CHECK(acyclic_without(g, gs.ids));
}

TEST_CASE("enumeration agrees with the oracle on random graphs") {
    std::mt19937_64 rng(34);
    for (int iter = 0; iter < 100; ++iter) {
        auto g = oracle::random_digraph(rng, 3 + static_cast<int>(rng() % 5), 0.3);
        auto er = enumerate_minsets(g, 1 << 16);
        REQUIRE(er.complete);
        auto want = oracle::all_min_fvs(g);
        if (want.size() == 1 && want[0].empty()) {
            // Acyclic graph: the only minimum set is empty.
            CHECK(er.sets == std::vector<std::vector<int>>{{}});
        } else {
            CHECK(er.sets == want);
        }
    }
}

TEST_CASE("enumeration validates its arguments") {
    auto g = graph_from_edges(2, {{0, 1}, {1, 0}});
    CHECK_THROWS_AS(enumerate_minsets(g, 0), ArgumentError);

    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < 70; ++v) edges.push_back({v, (v + 1) % 70});
    auto big = graph_from_edges(70, edges);
    CHECK_THROWS_AS(enumerate_minsets(big, 2), UnsupportedError);
}

TEST_CASE("verify_grounding_set answers both ways") {
    auto g = toy_graph();
    auto good = verify_grounding_set(g, ids_of(g, {"fruit", "part", "plant", "round"}));
    CHECK(good.verified);
    CHECK(good.learned_count == g.size());
    CHECK(good.residue.empty());
    CHECK(good.witness_cycles.empty());

    auto bad = verify_grounding_set(g, ids_of(g, {"part"}));
    CHECK_FALSE(bad.verified);
    CHECK_FALSE(bad.residue.empty());
    REQUIRE_FALSE(bad.witness_cycles.empty());
    std::set<int> residue(bad.residue.begin(), bad.residue.end());
    for (const auto& cyc : bad.witness_cycles) {
        REQUIRE_FALSE(cyc.empty());
        // Each witness is a real cycle inside the residue.
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            CHECK(residue.count(cyc[i]) == 1);
            int from = cyc[i], to = cyc[(i + 1) % cyc.size()];
            bool edge = std::binary_search(g.out_adj[from].begin(), g.out_adj[from].end(), to);
            CHECK(edge);
        }
    }
}

TEST_CASE("grounding sets verify on random graphs") {
    std::mt19937_64 rng(35);
    for (int iter = 0; iter < 100; ++iter) {
        auto g = oracle::random_digraph(rng, 8, 0.25);
        auto gs = solve_minset(g);
        CHECK(gs.verified);
        auto vr = verify_grounding_set(g, gs.ids);
        CHECK(vr.verified);
    }
}

TEST_CASE("solver config is validated") {
    SolverConfig cfg;
    cfg.exact_threshold = 0;
    CHECK_THROWS_AS(validate_solver_config(cfg), ArgumentError);
    cfg.exact_threshold = 65;
    CHECK_THROWS_AS(validate_solver_config(cfg), ArgumentError);
    cfg = SolverConfig{};
    cfg.time_budget_s = 0;
    CHECK_THROWS_AS(validate_solver_config(cfg), ArgumentError);
    cfg = SolverConfig{};
    cfg.ls_iterations = -1;
    CHECK_THROWS_AS(validate_solver_config(cfg), ArgumentError);
}

TEST_CASE("reports carry words and verification") {
    auto g = toy_graph();
    auto gs = solve_minset(g);
    auto j = minset_report(g, gs);
    CHECK(j["objective"] == 4);
    CHECK(j["words"] == nlohmann::json({"fruit", "part", "plant", "round"}));
    CHECK(j["provenance"] == "exact");
    CHECK(j["verified"] == true);
    CHECK(j["verification"]["verified"] == true);
    CHECK(j["components"].size() == 3);

    auto er = enumerate_minsets(g, 10);
    auto ej = enumeration_to_json(g, er);
    CHECK(ej["objective"] == 4);
    CHECK(ej["complete"] == true);
    CHECK(ej["sets"].size() == 6);
    CHECK(ej["sets"][0] == nlohmann::json({"fruit", "part", "plant", "round"}));
}
