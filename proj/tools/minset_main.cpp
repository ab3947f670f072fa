#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "minset/errors.hpp"
#include "minset/pipeline.hpp"

namespace {

// Exit codes: 0 success; 1 grounding ran but left words unlearned; 2 bad
// input or arguments; 3 infeasible or unsupported request; 4 not enough data
// for the requested statistic; 5 time budget hit (best-effort output was
// still written); 70 internal error.
constexpr int kExitPartialGround = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitInsufficient = 4;
constexpr int kExitTimeout = 5;
constexpr int kExitInternal = 70;

struct CommandCtx {
    minset::RunConfig cfg;
    std::string config_path;
    std::string seed_file;
    // Options that were set explicitly, with copiers to apply them on top of
    // a loaded config file.
    std::vector<std::pair<CLI::Option*,
                          std::function<void(minset::RunConfig&, const minset::RunConfig&)>>>
        overrides;
};

void add_config_options(CLI::App* cmd, CommandCtx& ctx) {
    auto track = [&ctx](CLI::Option* opt,
                        std::function<void(minset::RunConfig&, const minset::RunConfig&)> fn) {
        ctx.overrides.emplace_back(opt, std::move(fn));
    };
    track(cmd->add_option("-i,--input", ctx.cfg.input_path, "dictionary file to ingest"),
          [](auto& t, const auto& s) { t.input_path = s.input_path; });
    track(cmd->add_option("--format", ctx.cfg.format, "input format: jsonl or tsv"),
          [](auto& t, const auto& s) { t.format = s.format; });
    track(cmd->add_option("-f,--function-words", ctx.cfg.function_words_path,
                          "closed-class word list (one per line)"),
          [](auto& t, const auto& s) { t.function_words_path = s.function_words_path; });
    track(cmd->add_option("--sense-policy", ctx.cfg.sense_policy,
                          "merge senses: union or first_sense"),
          [](auto& t, const auto& s) { t.sense_policy = s.sense_policy; });
    track(cmd->add_flag("--lowercase,!--no-lowercase", ctx.cfg.lowercase,
                        "lowercase all tokens (default on)"),
          [](auto& t, const auto& s) { t.lowercase = s.lowercase; });
    track(cmd->add_flag("--strip-punctuation,!--keep-punctuation", ctx.cfg.strip_punctuation,
                        "strip punctuation from tokens (default on)"),
          [](auto& t, const auto& s) { t.strip_punctuation = s.strip_punctuation; });
    track(cmd->add_option("--strip-suffixes", ctx.cfg.strip_suffixes,
                          "comma-separated suffixes to strip, 'none' to disable")
              ->delimiter(','),
          [](auto& t, const auto& s) { t.strip_suffixes = s.strip_suffixes; });
    track(cmd->add_option("--exact-threshold", ctx.cfg.exact_threshold,
                          "largest SCC solved exactly (1..64)"),
          [](auto& t, const auto& s) { t.exact_threshold = s.exact_threshold; });
    track(cmd->add_option("--time-budget", ctx.cfg.time_budget_s,
                          "solver wall-clock budget in seconds"),
          [](auto& t, const auto& s) { t.time_budget_s = s.time_budget_s; });
    track(cmd->add_option("--ls-iterations", ctx.cfg.ls_iterations,
                          "local-search iterations for the heuristic solver"),
          [](auto& t, const auto& s) { t.ls_iterations = s.ls_iterations; });
    track(cmd->add_option("--seed", ctx.cfg.seed, "rng seed for the local search"),
          [](auto& t, const auto& s) { t.seed = s.seed; });
    track(cmd->add_option("--orphan-policy", ctx.cfg.orphan_policy,
                          "auto_learnable or must_be_seeded"),
          [](auto& t, const auto& s) { t.orphan_policy = s.orphan_policy; });
    track(cmd->add_option("-k,--enumerate-k", ctx.cfg.enumerate_k,
                          "how many minimum sets to enumerate (minset command)"),
          [](auto& t, const auto& s) { t.enumerate_k = s.enumerate_k; });
    track(cmd->add_option("--norms", ctx.cfg.norms_path,
                          "word,frequency,aoa CSV for correlations"),
          [](auto& t, const auto& s) { t.norms_path = s.norms_path; });
    track(cmd->add_option("-o,--out-dir", ctx.cfg.out_dir, "report output directory"),
          [](auto& t, const auto& s) { t.out_dir = s.out_dir; });
    cmd->add_option("--config", ctx.config_path,
                    "load a saved config.json; explicit flags override it");
}

minset::RunConfig final_config(const CommandCtx& ctx) {
    if (ctx.config_path.empty()) {
        minset::RunConfig cfg = ctx.cfg;
        if (cfg.strip_suffixes == std::vector<std::string>{"none"}) cfg.strip_suffixes.clear();
        return cfg;
    }
    std::ifstream in(ctx.config_path);
    if (!in) throw minset::ParseError("cannot open file: " + ctx.config_path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& ex) {
        throw minset::ParseError(ctx.config_path + ": invalid JSON: " + ex.what());
    }
    minset::RunConfig cfg = minset::config_from_json(j);
    for (const auto& [opt, apply] : ctx.overrides)
        if (opt->count() > 0) apply(cfg, ctx.cfg);
    if (cfg.strip_suffixes == std::vector<std::string>{"none"}) cfg.strip_suffixes.clear();
    return cfg;
}

int dispatch(const std::string& name, const CommandCtx& ctx) {
    const auto t0 = std::chrono::steady_clock::now();
    int rc = 0;
    auto cfg = final_config(ctx);
    if (name == "analyze") {
        auto outcome = minset::run_analyze(cfg);
        minset::write_outputs(cfg.out_dir, outcome.files);
        std::cout << outcome.headline << "\n";
        rc = outcome.solver_timed_out ? kExitTimeout : 0;
    } else if (name == "kernel") {
        minset::write_outputs(cfg.out_dir, minset::run_kernel_cmd(cfg));
        std::cout << "kernel report written to " << cfg.out_dir << "\n";
    } else if (name == "minset") {
        auto outcome = minset::run_minset_cmd(cfg);
        minset::write_outputs(cfg.out_dir, outcome.files);
        std::cout << "minset report written to " << cfg.out_dir << "\n";
        rc = outcome.timed_out ? kExitTimeout : 0;
    } else if (name == "ground") {
        auto outcome = minset::run_ground_cmd(cfg, ctx.seed_file);
        minset::write_outputs(cfg.out_dir, outcome.files);
        std::cout << "grounded=" << (outcome.all_learned ? "yes" : "no") << " ("
                  << outcome.learned_count << "/" << outcome.vertex_count << " words)\n";
        rc = outcome.all_learned ? 0 : kExitPartialGround;
    } else if (name == "stats") {
        minset::write_outputs(cfg.out_dir, minset::run_stats_cmd(cfg));
        std::cout << "stats report written to " << cfg.out_dir << "\n";
    } else if (name == "export-dot") {
        minset::write_outputs(cfg.out_dir, minset::run_export_cmd(cfg));
        std::cout << "graph exports written to " << cfg.out_dir << "\n";
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::fprintf(stderr, "[time] %s took %.2fs\n", name.c_str(), secs);
    return rc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lexical definition-graph toolkit: kernel, grounding sets, "
                 "learning closure and depth statistics"};
    app.require_subcommand(1);

    CommandCtx analyze_ctx, kernel_ctx, minset_ctx, ground_ctx, stats_ctx, export_ctx;
    auto* analyze = app.add_subcommand("analyze", "run the full pipeline and write all reports");
    add_config_options(analyze, analyze_ctx);
    auto* kernel = app.add_subcommand("kernel", "peel the graph and report the kernel");
    add_config_options(kernel, kernel_ctx);
    auto* minset_cmd = app.add_subcommand("minset", "solve (and optionally enumerate) grounding sets");
    add_config_options(minset_cmd, minset_ctx);
    auto* ground = app.add_subcommand("ground", "simulate learning from a seed-word file");
    add_config_options(ground, ground_ctx);
    ground->add_option("seed_file", ground_ctx.seed_file, "file with one seed word per line")
        ->required();
    auto* stats = app.add_subcommand("stats", "correlate depth zones with word norms");
    add_config_options(stats, stats_ctx);
    auto* export_dot = app.add_subcommand("export-dot", "write DOT and JSON graph exports");
    add_config_options(export_dot, export_ctx);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (analyze->parsed()) return dispatch("analyze", analyze_ctx);
        if (kernel->parsed()) return dispatch("kernel", kernel_ctx);
        if (minset_cmd->parsed()) return dispatch("minset", minset_ctx);
        if (ground->parsed()) return dispatch("ground", ground_ctx);
        if (stats->parsed()) return dispatch("stats", stats_ctx);
        if (export_dot->parsed()) return dispatch("export-dot", export_ctx);
    } catch (const minset::ParseError& e) {
        std::cerr << "[E] " << e.what() << "\n";
        return kExitUsage;
    } catch (const minset::ArgumentError& e) {
        std::cerr << "[E] " << e.what() << "\n";
        return kExitUsage;
    } catch (const minset::InfeasibleError& e) {
        std::cerr << "[E] " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const minset::UnsupportedError& e) {
        std::cerr << "[E] " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const minset::InsufficientDataError& e) {
        std::cerr << "[E] " << e.what() << "\n";
        return kExitInsufficient;
    } catch (const std::exception& e) {
        std::cerr << "[E] internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
