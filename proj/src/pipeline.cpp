#include "minset/pipeline.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "minset/errors.hpp"
#include "minset/kernel.hpp"
#include "minset/stats.hpp"

namespace minset {

void validate_config(const RunConfig& cfg) {
    if (cfg.input_path.empty()) throw ArgumentError("input path is required");
    if (cfg.format != "jsonl" && cfg.format != "tsv")
        throw ArgumentError("format must be 'jsonl' or 'tsv'");
    if (cfg.function_words_path.empty())
        throw ArgumentError("function-word list path is required");
    if (cfg.sense_policy != "union" && cfg.sense_policy != "first_sense")
        throw ArgumentError("sense_policy must be 'union' or 'first_sense'");
    if (cfg.orphan_policy != "auto_learnable" && cfg.orphan_policy != "must_be_seeded")
        throw ArgumentError("orphan_policy must be 'auto_learnable' or 'must_be_seeded'");
    if (cfg.enumerate_k < 1) throw ArgumentError("enumerate_k must be >= 1");
    if (cfg.out_dir.empty()) throw ArgumentError("output directory is required");
    validate_solver_config(solver_config_of(cfg));
}

nlohmann::json config_to_json(const RunConfig& cfg) {
    return {{"input_path", cfg.input_path},
            {"format", cfg.format},
            {"function_words_path", cfg.function_words_path},
            {"sense_policy", cfg.sense_policy},
            {"lowercase", cfg.lowercase},
            {"strip_punctuation", cfg.strip_punctuation},
            {"strip_suffixes", cfg.strip_suffixes},
            {"exact_threshold", cfg.exact_threshold},
            {"time_budget_s", cfg.time_budget_s},
            {"ls_iterations", cfg.ls_iterations},
            {"seed", cfg.seed},
            {"orphan_policy", cfg.orphan_policy},
            {"enumerate_k", cfg.enumerate_k},
            {"norms_path", cfg.norms_path},
            {"out_dir", cfg.out_dir}};
}

RunConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ArgumentError("config must be a JSON object");
    RunConfig cfg;
    const nlohmann::json defaults = config_to_json(cfg);
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!defaults.contains(key))
            throw ArgumentError("config: unknown key '" + key + "'");
    }
    auto get = [&](const char* key, auto& field) {
        if (!j.contains(key)) return;
        try {
            field = j.at(key).get<std::decay_t<decltype(field)>>();
        } catch (const nlohmann::json::exception&) {
            throw ArgumentError("config: key '" + std::string(key) + "' has the wrong type");
        }
    };
    get("input_path", cfg.input_path);
    get("format", cfg.format);
    get("function_words_path", cfg.function_words_path);
    get("sense_policy", cfg.sense_policy);
    get("lowercase", cfg.lowercase);
    get("strip_punctuation", cfg.strip_punctuation);
    get("strip_suffixes", cfg.strip_suffixes);
    get("exact_threshold", cfg.exact_threshold);
    get("time_budget_s", cfg.time_budget_s);
    get("ls_iterations", cfg.ls_iterations);
    get("seed", cfg.seed);
    get("orphan_policy", cfg.orphan_policy);
    get("enumerate_k", cfg.enumerate_k);
    get("norms_path", cfg.norms_path);
    get("out_dir", cfg.out_dir);
    return cfg;
}

SensePolicy sense_policy_of(const RunConfig& cfg) {
    return cfg.sense_policy == "first_sense" ? SensePolicy::first_sense
                                             : SensePolicy::union_all;
}

OrphanPolicy orphan_policy_of(const RunConfig& cfg) {
    return cfg.orphan_policy == "must_be_seeded" ? OrphanPolicy::must_be_seeded
                                                 : OrphanPolicy::auto_learnable;
}

NormalizeRules rules_of(const RunConfig& cfg) {
    NormalizeRules rules;
    rules.lowercase = cfg.lowercase;
    rules.strip_punctuation = cfg.strip_punctuation;
    rules.strip_suffixes = cfg.strip_suffixes;
    return rules;
}

SolverConfig solver_config_of(const RunConfig& cfg) {
    SolverConfig sc;
    sc.exact_threshold = cfg.exact_threshold;
    sc.time_budget_s = cfg.time_budget_s;
    sc.ls_iterations = cfg.ls_iterations;
    sc.seed = cfg.seed;
    return sc;
}

PipelineData ingest(const RunConfig& cfg) {
    validate_config(cfg);
    auto entries = cfg.format == "tsv" ? parse_tsv(cfg.input_path)
                                       : parse_jsonl(cfg.input_path);
    auto function_words = load_function_words(cfg.function_words_path);
    LexiconConfig lc;
    lc.sense_policy = sense_policy_of(cfg);
    lc.rules = rules_of(cfg);
    PipelineData data;
    data.lexicon = build_lexicon(entries, function_words, lc);
    data.graph = build_graph(data.lexicon);
    return data;
}

namespace {

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::string headline_of(const DefGraph& g, const KernelDecomposition& kd,
                        const GroundingSet& gs) {
    const double pct =
        g.size() ? 100.0 * static_cast<double>(kd.kernel.size()) / g.size() : 0.0;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "|V|=%d |E|=%ld kernel=%.1f%% |MinSet|=%d verified=%s",
                  g.size(), g.edge_count, pct, gs.objective,
                  gs.verified ? "yes" : "no");
    return buf;
}

std::vector<std::string> read_seed_words(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::vector<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t b = line.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) continue;
        std::size_t e = line.find_last_not_of(" \t\r\n");
        std::string w = line.substr(b, e - b + 1);
        if (w.empty() || w[0] == '#') continue;
        words.push_back(std::move(w));
    }
    return words;
}

} // namespace

void write_outputs(const std::string& out_dir, const OutputBundle& files) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw Error("cannot create output directory '" + out_dir + "': " + ec.message());
    std::vector<fs::path> written;
    try {
        for (const auto& [name, bytes] : files) {
            fs::path p = fs::path(out_dir) / name;
            std::ofstream out(p, std::ios::binary | std::ios::trunc);
            if (!out) throw Error("cannot open '" + p.string() + "' for writing");
            out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
            if (!out) throw Error("failed writing '" + p.string() + "'");
            written.push_back(p);
        }
    } catch (...) {
        // Do not leave a half-written bundle behind.
        for (const auto& p : written) fs::remove(p, ec);
        throw;
    }
}

AnalyzeOutcome run_analyze(const RunConfig& cfg) {
    auto data = ingest(cfg);
    auto decomposition = scc(data.graph);
    auto kd = compute_kernel(data.graph);
    auto gs = solve_minset(data.graph, solver_config_of(cfg));
    auto closure = ivg_closure(data.graph, gs.ids, orphan_policy_of(cfg));
    auto profiles = depth_profile(data.graph, kd, gs, closure);

    AnalyzeOutcome out;
    out.solver_timed_out = gs.timed_out;
    out.files["config.json"] = dump(config_to_json(cfg));
    out.files["lexicon_summary.json"] = dump(lexicon_summary(data.lexicon));
    out.files["graph_stats.json"] = dump(graph_stats(data.graph, decomposition));
    out.files["kernel_report.json"] = dump(kernel_report(data.graph, kd));
    out.files["minset_report.json"] = dump(minset_report(data.graph, gs));
    out.files["closure_report.json"] = dump(closure_to_json(data.graph, closure));
    out.files["closure.csv"] = closure_to_csv(data.graph, closure);
    out.files["depth_profile.csv"] = profile_to_csv(profiles);
    if (!cfg.norms_path.empty()) {
        auto norms = load_norms(cfg.norms_path);
        auto corr = correlate_depth_norms(profiles, norms);
        out.files["stats_report.json"] = dump(stats_report(profiles, corr));
    }
    out.headline = headline_of(data.graph, kd, gs);
    return out;
}

OutputBundle run_kernel_cmd(const RunConfig& cfg) {
    auto data = ingest(cfg);
    auto kd = compute_kernel(data.graph);
    OutputBundle files;
    files["config.json"] = dump(config_to_json(cfg));
    files["kernel_report.json"] = dump(kernel_report(data.graph, kd));
    return files;
}

MinsetOutcome run_minset_cmd(const RunConfig& cfg) {
    auto data = ingest(cfg);
    auto gs = solve_minset(data.graph, solver_config_of(cfg));
    auto report = minset_report(data.graph, gs);
    MinsetOutcome out;
    out.timed_out = gs.timed_out;
    if (cfg.enumerate_k > 1) {
        auto er = enumerate_minsets(data.graph, cfg.enumerate_k, solver_config_of(cfg));
        report["alternatives"] = enumeration_to_json(data.graph, er);
        out.timed_out = out.timed_out || er.timed_out;
    }
    out.files["config.json"] = dump(config_to_json(cfg));
    out.files["minset_report.json"] = dump(report);
    return out;
}

GroundOutcome run_ground_cmd(const RunConfig& cfg, const std::string& seed_words_path) {
    auto data = ingest(cfg);
    // Seed words get the same case and punctuation treatment as headwords,
    // but no suffix guessing: a seed has to name a headword exactly.
    NormalizeRules bare = rules_of(cfg);
    bare.strip_suffixes.clear();
    std::vector<int> seed_ids;
    std::vector<std::string> unknown;
    for (const auto& raw : read_seed_words(seed_words_path)) {
        const std::string w = normalize_token(raw, bare);
        auto it = data.graph.word_to_id.find(w);
        if (it == data.graph.word_to_id.end())
            unknown.push_back(raw);
        else
            seed_ids.push_back(it->second);
    }
    if (!unknown.empty()) {
        std::string msg = "seed words not in the lexicon:";
        for (const auto& w : unknown) msg += " " + w;
        throw ArgumentError(msg);
    }

    auto closure = ivg_closure(data.graph, seed_ids, orphan_policy_of(cfg));
    // On large graphs an exhaustive per-word cycle search is wasteful output;
    // the first 25 entries carry witness cycles, the rest just blockers.
    auto gap = teachability_gap(data.graph, closure, 25);

    GroundOutcome out;
    out.all_learned = closure.all_learned();
    out.learned_count = static_cast<int>(closure.learned.size());
    out.vertex_count = closure.vertex_count;
    nlohmann::json report = {{"seed_file", seed_words_path},
                             {"closure", closure_to_json(data.graph, closure)},
                             {"gap", gap_to_json(data.graph, gap)}};
    out.files["config.json"] = dump(config_to_json(cfg));
    out.files["ground_report.json"] = dump(report);
    out.files["closure.csv"] = closure_to_csv(data.graph, closure);
    return out;
}

OutputBundle run_stats_cmd(const RunConfig& cfg) {
    if (cfg.norms_path.empty())
        throw ArgumentError("the stats command requires a norms file");
    auto data = ingest(cfg);
    auto kd = compute_kernel(data.graph);
    auto gs = solve_minset(data.graph, solver_config_of(cfg));
    auto closure = ivg_closure(data.graph, gs.ids, orphan_policy_of(cfg));
    auto profiles = depth_profile(data.graph, kd, gs, closure);
    auto corr = correlate_depth_norms(profiles, load_norms(cfg.norms_path));

    OutputBundle files;
    files["config.json"] = dump(config_to_json(cfg));
    files["stats_report.json"] = dump(stats_report(profiles, corr));
    files["depth_profile.csv"] = profile_to_csv(profiles);
    return files;
}

OutputBundle run_export_cmd(const RunConfig& cfg) {
    auto data = ingest(cfg);
    auto decomposition = scc(data.graph);
    OutputBundle files;
    files["config.json"] = dump(config_to_json(cfg));
    files["graph.dot"] = to_dot(data.graph);
    files["condensation.dot"] = condensation_to_dot(data.graph, decomposition);
    files["edges.json"] = dump(edges_to_json(data.graph));
    return files;
}

} // namespace minset
