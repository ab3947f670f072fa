#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "minset/closure.hpp"
#include "minset/defgraph.hpp"
#include "minset/fvs.hpp"
#include "minset/kernel.hpp"

namespace minset {

enum class Zone { periphery, kernel_non_minset, minset };

// Where a word sits in the peeling geography, plus its learning depth from
// the grounding closure. zone_rank is a single ordinal axis: peel layer k
// maps to k (1-based), kernel words outside the grounding set to L+1 and
// grounding-set members to L+2, where L is the number of peel layers. Larger
// rank means closer to the definitional core.
struct WordProfile {
    int id = 0;
    std::string word;
    Zone zone = Zone::periphery;
    int peel_layer = 0; // 1-based peel round; 0 for kernel members
    int zone_rank = 0;
    int ivg_depth = -1; // -1 when the closure did not learn the word
};

std::vector<WordProfile> depth_profile(const DefGraph& g, const KernelDecomposition& kd,
                                       const GroundingSet& gs,
                                       const ClosureReport& closure);

struct NormRow {
    std::optional<double> frequency; // corpus-relative, must be positive
    std::optional<double> aoa;       // age of acquisition in years
};
using NormTable = std::map<std::string, NormRow>;

// CSV "word,frequency,aoa" with an optional header row; empty cells mean
// missing. Throws ParseError on malformed rows, non-positive frequencies or
// duplicate words.
NormTable load_norms(const std::string& path);

struct SpearmanResult {
    double rho = 0.0;
    std::size_t n = 0;
    bool ties_x = false;
    bool ties_y = false;
    bool degenerate = false; // a constant vector; rho is reported as 0
};

// Spearman rank correlation with average ranks for ties. Tie-free inputs go
// through the exact integer difference formula so that textbook values are
// reproduced bit for bit. Requires equal lengths >= 2.
SpearmanResult spearman(const std::vector<double>& x, const std::vector<double>& y);

struct CorrelationReport {
    std::size_t shared_words = 0;
    std::optional<SpearmanResult> freq; // zone rank vs log frequency
    std::optional<SpearmanResult> aoa;  // zone rank vs age of acquisition
};

// Joins profiles with the norm table on the word and correlates the zone
// ordinal with each available norm (frequency is log-transformed first,
// which rank correlation makes cosmetic). Throws InsufficientDataError when
// fewer than 3 profile words appear in the table; a metric with fewer than 3
// present values is reported as absent.
CorrelationReport correlate_depth_norms(const std::vector<WordProfile>& profiles,
                                        const NormTable& norms);

const char* zone_name(Zone z);
std::string profile_to_csv(const std::vector<WordProfile>& profiles);
nlohmann::json stats_report(const std::vector<WordProfile>& profiles,
                            const CorrelationReport& corr);

} // namespace minset
