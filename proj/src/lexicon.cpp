#include "minset/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <tuple>

#include "minset/errors.hpp"

namespace minset {

namespace {

bool is_word_char(unsigned char c) {
    // Bytes >= 0x80 are kept so UTF-8 sequences survive tokenization.
    return std::isalnum(c) || c >= 0x80;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string lower_strip(const std::string& token, const NormalizeRules& rules) {
    std::string out;
    out.reserve(token.size());
    for (unsigned char c : token) {
        if (rules.strip_punctuation && c < 0x80 && !std::isalnum(c)) continue;
        out.push_back(rules.lowercase ? static_cast<char>(std::tolower(c)) : static_cast<char>(c));
    }
    return out;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    return in;
}

void check_entry(const RawEntry& e, const std::string& where) {
    if (trim(e.headword).empty())
        throw ParseError(where + ": headword is empty");
    if (e.pos.empty())
        throw ParseError(where + ": pos is empty");
    if (e.sense_id < 1)
        throw ParseError(where + ": sense_id must be a positive integer");
}

void check_duplicates(const std::vector<RawEntry>& entries, const std::string& path) {
    std::set<std::tuple<std::string, std::string, int>> seen;
    for (const auto& e : entries) {
        if (!seen.insert({e.headword, e.pos, e.sense_id}).second)
            throw ParseError(path + ": duplicate entry (" + e.headword + ", " + e.pos +
                             ", " + std::to_string(e.sense_id) + ")");
    }
}

} // namespace

std::vector<RawEntry> parse_jsonl(const std::string& path) {
    auto in = open_or_throw(path);
    std::vector<RawEntry> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const std::string where = path + ":" + std::to_string(lineno);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& ex) {
            throw ParseError(where + ": invalid JSON: " + ex.what());
        }
        if (!j.is_object()) throw ParseError(where + ": expected a JSON object");
        RawEntry e;
        for (const char* field : {"headword", "pos", "definition"}) {
            if (!j.contains(field) || !j[field].is_string())
                throw ParseError(where + ": missing or non-string field '" + field + "'");
        }
        if (!j.contains("sense_id") || !j["sense_id"].is_number_integer())
            throw ParseError(where + ": missing or non-integer field 'sense_id'");
        e.headword = trim(j["headword"].get<std::string>());
        e.pos = j["pos"].get<std::string>();
        e.sense_id = j["sense_id"].get<int>();
        e.definition = j["definition"].get<std::string>();
        check_entry(e, where);
        out.push_back(std::move(e));
    }
    check_duplicates(out, path);
    return out;
}

std::vector<RawEntry> parse_tsv(const std::string& path) {
    auto in = open_or_throw(path);
    std::vector<RawEntry> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const std::string where = path + ":" + std::to_string(lineno);
        std::vector<std::string> cols;
        std::size_t start = 0;
        while (true) {
            std::size_t tab = line.find('\t', start);
            cols.push_back(line.substr(start, tab == std::string::npos ? tab : tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        if (cols.size() != 4)
            throw ParseError(where + ": expected 4 tab-separated columns, got " +
                             std::to_string(cols.size()));
        RawEntry e;
        e.headword = trim(cols[0]);
        e.pos = trim(cols[1]);
        const std::string sense = trim(cols[2]);
        try {
            std::size_t used = 0;
            e.sense_id = std::stoi(sense, &used);
            if (used != sense.size()) throw std::invalid_argument(sense);
        } catch (const std::exception&) {
            throw ParseError(where + ": sense_id is not an integer: '" + sense + "'");
        }
        e.definition = cols[3];
        check_entry(e, where);
        out.push_back(std::move(e));
    }
    check_duplicates(out, path);
    return out;
}

std::set<std::string> load_function_words(const std::string& path) {
    auto in = open_or_throw(path);
    std::set<std::string> words;
    NormalizeRules bare;
    bare.strip_suffixes.clear();
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::string norm = lower_strip(t, bare);
        if (!norm.empty()) words.insert(std::move(norm));
    }
    return words;
}

std::string normalize_token(const std::string& token, const NormalizeRules& rules) {
    std::string out = lower_strip(token, rules);
    for (const auto& sfx : rules.strip_suffixes) {
        if (sfx.empty() || out.size() < sfx.size() + 2) continue;
        if (out.compare(out.size() - sfx.size(), sfx.size(), sfx) == 0) {
            out.erase(out.size() - sfx.size());
            break;
        }
    }
    return out;
}

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (unsigned char c : text) {
        if (is_word_char(c)) {
            cur.push_back(static_cast<char>(c));
        } else if (!cur.empty()) {
            tokens.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

Lexicon build_lexicon(const std::vector<RawEntry>& entries,
                      const std::set<std::string>& function_words,
                      const LexiconConfig& config) {
    if (entries.empty()) throw ArgumentError("build_lexicon: no entries");

    NormalizeRules bare = config.rules;
    bare.strip_suffixes.clear();

    // Group raw entries by normalized headword. Headwords are lemmas, so the
    // suffix rules are never applied to them.
    struct Sense {
        const RawEntry* raw;
    };
    std::map<std::string, std::vector<Sense>> grouped;
    std::set<std::string> dropped_fw;
    for (const auto& e : entries) {
        std::string hw = lower_strip(e.headword, bare);
        if (hw.empty())
            throw ParseError("headword '" + e.headword + "' is empty after normalization");
        if (function_words.count(hw)) {
            dropped_fw.insert(hw);
            continue;
        }
        grouped[hw].push_back({&e});
    }
    if (grouped.empty())
        throw ArgumentError("build_lexicon: every entry was filtered as a function word");

    Lexicon lex;
    lex.dropped_function_headwords.assign(dropped_fw.begin(), dropped_fw.end());

    // Canonical sense order within a headword: lowest sense_id first, then
    // pos, then the raw spelling. first_sense keeps only the front of this.
    for (auto& [hw, senses] : grouped) {
        std::sort(senses.begin(), senses.end(), [](const Sense& a, const Sense& b) {
            return std::tie(a.raw->sense_id, a.raw->pos, a.raw->headword) <
                   std::tie(b.raw->sense_id, b.raw->pos, b.raw->headword);
        });
        if (config.sense_policy == SensePolicy::first_sense) senses.resize(1);
        DefinitionSet ds;
        for (const auto& s : senses) ds.source_sense_ids.push_back(s.raw->sense_id);
        lex.entries.emplace(hw, std::move(ds));
    }

    // Resolve definition tokens against the final headword set.
    std::map<std::string, long> oov;
    for (auto& [hw, ds] : lex.entries) {
        std::set<std::string> resolved;
        for (const Sense& s : grouped[hw]) {
            for (const auto& raw_tok : tokenize(s.raw->definition)) {
                std::string tok = lower_strip(raw_tok, bare);
                if (tok.empty()) continue;
                if (function_words.count(tok)) {
                    ++lex.function_tokens_dropped;
                    continue;
                }
                if (lex.entries.count(tok)) {
                    resolved.insert(tok);
                    continue;
                }
                bool hit = false;
                for (const auto& sfx : config.rules.strip_suffixes) {
                    if (sfx.empty() || tok.size() < sfx.size() + 2) continue;
                    if (tok.compare(tok.size() - sfx.size(), sfx.size(), sfx) != 0) continue;
                    std::string cand = tok.substr(0, tok.size() - sfx.size());
                    if (lex.entries.count(cand)) {
                        resolved.insert(std::move(cand));
                        hit = true;
                        break;
                    }
                }
                if (!hit) ++oov[tok];
            }
        }
        ds.defining_words.assign(resolved.begin(), resolved.end());
        if (resolved.count(hw)) lex.self_definers.push_back(hw);
        if (ds.defining_words.empty()) lex.orphans.push_back(hw);
    }
    lex.oov = std::move(oov);
    return lex;
}

nlohmann::json lexicon_to_json(const Lexicon& lex) {
    nlohmann::json entries = nlohmann::json::object();
    for (const auto& [hw, ds] : lex.entries) {
        entries[hw] = {{"defining_words", ds.defining_words},
                       {"source_sense_ids", ds.source_sense_ids}};
    }
    return {{"entries", std::move(entries)},
            {"orphans", lex.orphans},
            {"self_definers", lex.self_definers},
            {"oov", lex.oov},
            {"dropped_function_headwords", lex.dropped_function_headwords},
            {"function_tokens_dropped", lex.function_tokens_dropped}};
}

nlohmann::json lexicon_summary(const Lexicon& lex) {
    long oov_total = 0;
    for (const auto& [tok, n] : lex.oov) oov_total += n;
    return {{"entry_count", lex.entries.size()},
            {"orphan_count", lex.orphans.size()},
            {"orphans", lex.orphans},
            {"self_definer_count", lex.self_definers.size()},
            {"self_definers", lex.self_definers},
            {"oov_distinct", lex.oov.size()},
            {"oov_total", oov_total},
            {"dropped_function_headwords", lex.dropped_function_headwords},
            {"function_tokens_dropped", lex.function_tokens_dropped}};
}

} // namespace minset
