#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "minset/closure.hpp"
#include "minset/defgraph.hpp"
#include "minset/fvs.hpp"
#include "minset/lexicon.hpp"

namespace minset {

// Immutable description of one run. Every field has a well-defined default
// and every value, defaulted or not, is echoed into config.json so a run can
// be replayed exactly.
struct RunConfig {
    std::string input_path;
    std::string format = "jsonl"; // jsonl | tsv
    std::string function_words_path;
    std::string sense_policy = "union"; // union | first_sense
    bool lowercase = true;
    bool strip_punctuation = true;
    std::vector<std::string> strip_suffixes = {"es", "s"};
    int exact_threshold = 32;
    double time_budget_s = 60.0;
    long ls_iterations = 0;
    std::uint64_t seed = 0;
    std::string orphan_policy = "auto_learnable"; // auto_learnable | must_be_seeded
    int enumerate_k = 1;
    std::string norms_path; // empty means no norms
    std::string out_dir = "out";
};

void validate_config(const RunConfig& cfg);
nlohmann::json config_to_json(const RunConfig& cfg);
// Strict on unknown keys; missing keys keep their defaults.
RunConfig config_from_json(const nlohmann::json& j);

SensePolicy sense_policy_of(const RunConfig& cfg);
OrphanPolicy orphan_policy_of(const RunConfig& cfg);
NormalizeRules rules_of(const RunConfig& cfg);
SolverConfig solver_config_of(const RunConfig& cfg);

struct PipelineData {
    Lexicon lexicon;
    DefGraph graph;
};
PipelineData ingest(const RunConfig& cfg);

// Commands assemble their whole output bundle in memory (file name ->
// bytes); nothing is written until the run has fully succeeded.
using OutputBundle = std::map<std::string, std::string>;
void write_outputs(const std::string& out_dir, const OutputBundle& files);

struct AnalyzeOutcome {
    OutputBundle files;
    std::string headline;
    bool solver_timed_out = false;
};
// Full pipeline: ingest, graph, kernel, grounding set, closure from it,
// depth profile, and correlations when norms are configured.
AnalyzeOutcome run_analyze(const RunConfig& cfg);

OutputBundle run_kernel_cmd(const RunConfig& cfg);

struct MinsetOutcome {
    OutputBundle files;
    bool timed_out = false;
};
// Solves one grounding set; with enumerate_k > 1 also enumerates that many
// minimum sets (every cyclic SCC must fit the exact threshold).
MinsetOutcome run_minset_cmd(const RunConfig& cfg);

struct GroundOutcome {
    OutputBundle files;
    bool all_learned = false;
    int learned_count = 0;
    int vertex_count = 0;
};
// Simulates learning from an explicit seed-word file (one word per line,
// '#' comments). Unknown seed words are an error.
GroundOutcome run_ground_cmd(const RunConfig& cfg, const std::string& seed_words_path);

OutputBundle run_stats_cmd(const RunConfig& cfg);
OutputBundle run_export_cmd(const RunConfig& cfg);

} // namespace minset
