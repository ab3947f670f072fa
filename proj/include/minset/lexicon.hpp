#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

namespace minset {

// One sense row from an input dictionary file.
struct RawEntry {
    std::string headword;
    std::string pos;
    int sense_id = 0;
    std::string definition;
};

struct NormalizeRules {
    bool lowercase = true;
    bool strip_punctuation = true;
    // Tried in order; the first suffix that matches (leaving at least two
    // characters) is stripped.
    std::vector<std::string> strip_suffixes = {"es", "s"};
};

enum class SensePolicy { union_all, first_sense };

// Definition of one headword after sense merging and token resolution.
struct DefinitionSet {
    std::vector<std::string> defining_words; // sorted, unique, all are headword keys
    std::vector<int> source_sense_ids;       // sense ids merged into this entry
};

struct Lexicon {
    // Ordered by headword so iteration order and serialization are canonical.
    std::map<std::string, DefinitionSet> entries;
    std::vector<std::string> orphans;        // sorted; no resolved defining words
    std::vector<std::string> self_definers;  // sorted; headword occurs in its own definition
    std::map<std::string, long> oov;         // unresolved tokens dropped, with counts
    std::vector<std::string> dropped_function_headwords; // sorted; entries excluded entirely
    long function_tokens_dropped = 0;        // definition tokens dropped as function words
};

struct LexiconConfig {
    SensePolicy sense_policy = SensePolicy::union_all;
    NormalizeRules rules;
};

// Parses a jsonl dictionary (one object per line with keys headword, pos,
// sense_id, definition). Throws ParseError naming the offending line.
std::vector<RawEntry> parse_jsonl(const std::string& path);

// Parses a 4-column TSV dictionary: headword, pos, sense_id, definition.
std::vector<RawEntry> parse_tsv(const std::string& path);

// Loads a function-word list: one word per line, '#' lines are comments,
// blanks skipped. Entries are case/punctuation normalized.
std::set<std::string> load_function_words(const std::string& path);

// Lowercases, strips punctuation, then applies the first matching suffix
// strip (if any). Deterministic; may return an empty string for tokens that
// are pure punctuation.
std::string normalize_token(const std::string& token, const NormalizeRules& rules);

// Splits text into raw tokens on any non-word character.
std::vector<std::string> tokenize(const std::string& text);

// Merges raw entries into a Lexicon: headwords are case/punct normalized
// (suffixes are never stripped from headwords), function words are removed
// from the headword set and from definitions, definition tokens are resolved
// to headword keys (exact match first, then suffix-stripped forms), and
// unresolved tokens are dropped into the oov report.
//
// Under first_sense, each headword keeps only its lowest-numbered sense
// (ties broken by pos, then raw headword); under union_all every sense
// contributes. Throws ArgumentError when entries is empty or when nothing
// survives function-word filtering.
Lexicon build_lexicon(const std::vector<RawEntry>& entries,
                      const std::set<std::string>& function_words,
                      const LexiconConfig& config);

// Full canonical serialization (sorted keys), suitable for hashing.
nlohmann::json lexicon_to_json(const Lexicon& lex);

// Compact report: counts plus the orphan/self-definer/oov details.
nlohmann::json lexicon_summary(const Lexicon& lex);

} // namespace minset
