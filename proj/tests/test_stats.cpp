#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"

#include "minset/errors.hpp"
#include "minset/lexicon.hpp"
#include "minset/stats.hpp"
#include "oracles.hpp"

using namespace minset;

namespace {

const std::string kDataDir = MINSET_DATA_DIR;

std::string temp_file(const std::string& tag, const std::string& content) {
    std::string path = std::string("/tmp/minset_stats_") + tag + "_" +
                       std::to_string(::getpid()) + ".csv";
    std::ofstream out(path, std::ios::trunc);
    out << content;
    return path;
}

struct ToyAnalysis {
    DefGraph g;
    KernelDecomposition kd;
    GroundingSet gs;
    ClosureReport closure;
    std::vector<WordProfile> profiles;
};

ToyAnalysis toy_analysis() {
    auto entries = parse_jsonl(kDataDir + "/toy_dictionary.jsonl");
    auto fw = load_function_words(kDataDir + "/function_words_en.txt");
    ToyAnalysis t;
    t.g = build_graph(build_lexicon(entries, fw, LexiconConfig{}));
    t.kd = compute_kernel(t.g);
    t.gs = solve_minset(t.g);
    t.closure = ivg_closure(t.g, t.gs.ids);
    t.profiles = depth_profile(t.g, t.kd, t.gs, t.closure);
    return t;
}

} // namespace

TEST_CASE("spearman reproduces the textbook tie-free value exactly") {
    auto r = spearman({1, 2, 3, 4}, {2, 1, 4, 3});
    CHECK(r.rho == 0.6); // bit-exact, no tolerance
    CHECK(r.n == 4);
    CHECK_FALSE(r.ties_x);
    CHECK_FALSE(r.ties_y);
    CHECK_FALSE(r.degenerate);
}

TEST_CASE("spearman endpoints") {
    CHECK(spearman({1, 2, 3}, {10, 20, 30}).rho == 1.0);
    CHECK(spearman({1, 2, 3}, {30, 20, 10}).rho == -1.0);
}

TEST_CASE("spearman averages tied ranks") {
    auto r = spearman({1, 2, 2, 3}, {1, 2, 3, 4});
    CHECK(r.ties_x);
    CHECK_FALSE(r.ties_y);
    CHECK(r.rho == doctest::Approx(0.9486832980505138).epsilon(1e-12));
}

TEST_CASE("constant vectors are degenerate") {
    auto r = spearman({5, 5, 5}, {1, 2, 3});
    CHECK(r.degenerate);
    CHECK(r.rho == 0.0);
}

TEST_CASE("spearman validates its input") {
    CHECK_THROWS_AS(spearman({1, 2}, {1, 2, 3}), ArgumentError);
    CHECK_THROWS_AS(spearman({1}, {1}), ArgumentError);
}

TEST_CASE("rho is invariant under monotone transforms") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> val(0.1, 100.0);
    for (int iter = 0; iter < 100; ++iter) {
        std::size_t n = 5 + rng() % 20;
        std::vector<double> x, y;
        for (std::size_t i = 0; i < n; ++i) {
            x.push_back(val(rng));
            y.push_back(val(rng));
        }
        double base = spearman(x, y).rho;
        std::vector<double> lx, ey;
        for (double v : x) lx.push_back(std::log(v));
        for (double v : y) ey.push_back(v * 3.0 + 1.0);
        // Ranks are untouched by strictly increasing maps, so rho is
        // bit-identical, not merely close.
        CHECK(spearman(lx, ey).rho == base);
    }
}

TEST_CASE("load_norms reads the bundled toy table") {
    auto norms = load_norms(kDataDir + "/toy_norms.csv");
    CHECK(norms.size() == 13);
    CHECK(norms.at("banana").frequency == doctest::Approx(150));
    CHECK_FALSE(norms.at("shape").aoa.has_value());
    CHECK(norms.at("shape").frequency == doctest::Approx(540));
    CHECK_FALSE(norms.at("tree").frequency.has_value());
    CHECK(norms.at("tree").aoa == doctest::Approx(4.4));
}

TEST_CASE("load_norms accepts headerless files and lowercases words") {
    auto path = temp_file("noheader", "Apple,10,2.5\nPEAR,20,\n");
    auto norms = load_norms(path);
    CHECK(norms.count("apple") == 1);
    CHECK(norms.count("pear") == 1);
    std::remove(path.c_str());
}

TEST_CASE("load_norms rejects malformed tables") {
    auto reject = [](const std::string& tag, const std::string& body) {
        auto path = temp_file(tag, body);
        CHECK_THROWS_AS(load_norms(path), ParseError);
        std::remove(path.c_str());
    };
    reject("cols", "word,frequency,aoa\napple,10\n");
    reject("badnum", "apple,ten,2.5\n");
    reject("negfreq", "apple,-3,2.5\n");
    reject("zerofreq", "apple,0,2.5\n");
    reject("dup", "apple,10,2.5\napple,11,2.6\n");
    reject("noword", ",10,2.5\n");
}

TEST_CASE("depth_profile assigns the toy zones") {
    auto t = toy_analysis();
    std::map<std::string, WordProfile> by_word;
    for (const auto& p : t.profiles) by_word[p.word] = p;

    CHECK(by_word.at("apple").zone == Zone::periphery);
    CHECK(by_word.at("apple").peel_layer == 1);
    CHECK(by_word.at("apple").zone_rank == 1);
    CHECK(by_word.at("red").zone_rank == 2);
    CHECK(by_word.at("tree").zone_rank == 2);
    CHECK(by_word.at("color").zone_rank == 3);

    for (const char* w : {"grow", "seed", "shape", "thing"}) {
        CHECK(by_word.at(w).zone == Zone::kernel_non_minset);
        CHECK(by_word.at(w).zone_rank == 4);
        CHECK(by_word.at(w).peel_layer == 0);
    }
    for (const char* w : {"fruit", "part", "plant", "round"}) {
        CHECK(by_word.at(w).zone == Zone::minset);
        CHECK(by_word.at(w).zone_rank == 5);
    }
    CHECK(by_word.at("apple").ivg_depth == 3);
    CHECK(by_word.at("fruit").ivg_depth == 0);
}

TEST_CASE("depth_profile rejects mismatched inputs") {
    auto t = toy_analysis();
    auto other = graph_from_edges(2, {{0, 1}, {1, 0}});
    auto small_closure = ivg_closure(other, {0});
    CHECK_THROWS_AS(depth_profile(t.g, t.kd, t.gs, small_closure), ArgumentError);
}

TEST_CASE("toy norms correlate as frozen") {
    auto t = toy_analysis();
    auto norms = load_norms(kDataDir + "/toy_norms.csv");
    auto corr = correlate_depth_norms(t.profiles, norms);
    CHECK(corr.shared_words == 12);

    REQUIRE(corr.freq.has_value());
    CHECK(corr.freq->n == 11); // tree has no frequency
    CHECK(corr.freq->rho == doctest::Approx(0.8152105138049814).epsilon(1e-12));
    CHECK(corr.freq->ties_x);

    REQUIRE(corr.aoa.has_value());
    CHECK(corr.aoa->n == 11); // shape has no aoa
    CHECK(corr.aoa->rho == doctest::Approx(-0.9135103221351415).epsilon(1e-12));
}

TEST_CASE("correlate_depth_norms needs at least three shared words") {
    auto t = toy_analysis();
    NormTable tiny;
    tiny["apple"] = {10.0, 2.0};
    tiny["red"] = {20.0, 3.0};
    CHECK_THROWS_AS(correlate_depth_norms(t.profiles, tiny), InsufficientDataError);
}

TEST_CASE("a metric with too few observations is reported absent") {
    auto t = toy_analysis();
    NormTable partial;
    partial["apple"] = {10.0, std::nullopt};
    partial["red"] = {20.0, std::nullopt};
    partial["tree"] = {30.0, std::nullopt};
    partial["color"] = {40.0, 2.0};
    auto corr = correlate_depth_norms(t.profiles, partial);
    CHECK(corr.shared_words == 4);
    CHECK(corr.freq.has_value());
    CHECK_FALSE(corr.aoa.has_value());
}

TEST_CASE("profile csv lists every word with its zone") {
    auto t = toy_analysis();
    auto csv = profile_to_csv(t.profiles);
    CHECK(csv.find("word,zone,peel_layer,zone_rank,ivg_depth,learned\n") == 0);
    CHECK(csv.find("apple,periphery,1,1,3,1\n") != std::string::npos);
    CHECK(csv.find("fruit,minset,0,5,0,1\n") != std::string::npos);
    CHECK(csv.find("thing,kernel_non_minset,0,4,0,1\n") != std::string::npos);
}

TEST_CASE("stats report carries zone counts and correlations") {
    auto t = toy_analysis();
    auto norms = load_norms(kDataDir + "/toy_norms.csv");
    auto corr = correlate_depth_norms(t.profiles, norms);
    auto j = stats_report(t.profiles, corr);
    CHECK(j["profile_words"] == 12);
    CHECK(j["zone_counts"]["periphery"] == 4);
    CHECK(j["zone_counts"]["kernel_non_minset"] == 4);
    CHECK(j["zone_counts"]["minset"] == 4);
    CHECK(j["peel_layer_count"] == 3);
    CHECK(j["shared_words"] == 12);
    CHECK(j["frequency"]["n"] == 11);
    CHECK(j["frequency"]["transform"] == "log");
    CHECK(j["aoa"]["rho"] < 0);
}
