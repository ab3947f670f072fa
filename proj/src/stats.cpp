#include "minset/stats.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>

#include "minset/errors.hpp"

namespace minset {

std::vector<WordProfile> depth_profile(const DefGraph& g, const KernelDecomposition& kd,
                                       const GroundingSet& gs,
                                       const ClosureReport& closure) {
    validate_kernel_decomposition(g, kd);
    if (closure.vertex_count != g.size())
        throw ArgumentError("depth_profile: closure report is for a different graph");
    for (int v : gs.ids)
        if (v < 0 || v >= g.size())
            throw ArgumentError("depth_profile: grounding set id out of range");

    const int L = static_cast<int>(kd.peel_layers.size());
    std::vector<int> layer_of(g.size(), 0);
    for (int k = 0; k < L; ++k)
        for (int v : kd.peel_layers[k]) layer_of[v] = k + 1;
    std::vector<char> in_minset(g.size(), 0);
    for (int v : gs.ids) in_minset[v] = 1;
    std::vector<char> in_kernel(g.size(), 0);
    for (int v : kd.kernel) in_kernel[v] = 1;

    std::vector<WordProfile> out;
    out.reserve(g.size());
    for (int v = 0; v < g.size(); ++v) {
        WordProfile p;
        p.id = v;
        p.word = g.words[v];
        p.peel_layer = layer_of[v];
        if (in_minset[v]) {
            p.zone = Zone::minset;
            p.zone_rank = L + 2;
        } else if (in_kernel[v]) {
            p.zone = Zone::kernel_non_minset;
            p.zone_rank = L + 1;
        } else {
            p.zone = Zone::periphery;
            p.zone_rank = layer_of[v];
        }
        p.ivg_depth = closure.depth[v];
        out.push_back(std::move(p));
    }
    return out;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::optional<double> parse_cell(const std::string& cell, const std::string& where,
                                 const char* field) {
    std::string t = trim(cell);
    if (t.empty()) return std::nullopt;
    try {
        std::size_t used = 0;
        double v = std::stod(t, &used);
        if (used != t.size()) throw std::invalid_argument(t);
        return v;
    } catch (const std::exception&) {
        throw ParseError(where + ": field '" + std::string(field) +
                         "' is not a number: '" + t + "'");
    }
}

} // namespace

NormTable load_norms(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    NormTable table;
    std::string line;
    std::size_t lineno = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const std::string where = path + ":" + std::to_string(lineno);
        std::vector<std::string> cols;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = line.find(',', start);
            cols.push_back(line.substr(start, comma == std::string::npos ? comma
                                                                         : comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (first) {
            first = false;
            if (lower(trim(cols[0])) == "word") continue; // header row
        }
        if (cols.size() != 3)
            throw ParseError(where + ": expected 3 comma-separated columns, got " +
                             std::to_string(cols.size()));
        std::string word = lower(trim(cols[0]));
        if (word.empty()) throw ParseError(where + ": empty word");
        NormRow row;
        row.frequency = parse_cell(cols[1], where, "frequency");
        if (row.frequency && !(*row.frequency > 0))
            throw ParseError(where + ": frequency must be positive");
        row.aoa = parse_cell(cols[2], where, "aoa");
        if (!table.emplace(std::move(word), row).second)
            throw ParseError(where + ": duplicate word '" + trim(cols[0]) + "'");
    }
    return table;
}

namespace {

// Average ranks, 1-based. Equal values share the mean of their positions.
std::vector<double> ranks_of(const std::vector<double>& xs, bool& ties) {
    const std::size_t n = xs.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    std::vector<double> rank(n);
    ties = false;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && xs[idx[j + 1]] == xs[idx[i]]) ++j;
        if (j > i) ties = true;
        double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t t = i; t <= j; ++t) rank[idx[t]] = avg;
        i = j + 1;
    }
    return rank;
}

} // namespace

SpearmanResult spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw ArgumentError("spearman: length mismatch");
    if (x.size() < 2) throw ArgumentError("spearman: need at least 2 observations");

    SpearmanResult r;
    r.n = x.size();
    auto rx = ranks_of(x, r.ties_x);
    auto ry = ranks_of(y, r.ties_y);

    const bool const_x = std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; });
    const bool const_y = std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; });
    if (const_x || const_y) {
        r.degenerate = true;
        r.rho = 0.0;
        return r;
    }

    if (!r.ties_x && !r.ties_y) {
        // Tie-free ranks are integers, so the classic formula can be computed
        // in exact integer arithmetic with a single rounding at the division.
        long long sum_d2 = 0;
        for (std::size_t i = 0; i < r.n; ++i) {
            long long d = static_cast<long long>(rx[i]) - static_cast<long long>(ry[i]);
            sum_d2 += d * d;
        }
        const long long n = static_cast<long long>(r.n);
        const long long denom = n * (n * n - 1);
        r.rho = static_cast<double>(denom - 6 * sum_d2) / static_cast<double>(denom);
        return r;
    }

    // Pearson correlation on the rank vectors.
    const double n = static_cast<double>(r.n);
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < r.n; ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < r.n; ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0 || syy == 0) {
        r.degenerate = true;
        r.rho = 0.0;
        return r;
    }
    r.rho = sxy / std::sqrt(sxx * syy);
    return r;
}

CorrelationReport correlate_depth_norms(const std::vector<WordProfile>& profiles,
                                        const NormTable& norms) {
    CorrelationReport rep;
    std::vector<double> fx, fy, ax, ay;
    for (const auto& p : profiles) {
        auto it = norms.find(p.word);
        if (it == norms.end()) continue;
        ++rep.shared_words;
        if (it->second.frequency) {
            fx.push_back(static_cast<double>(p.zone_rank));
            fy.push_back(std::log(*it->second.frequency));
        }
        if (it->second.aoa) {
            ax.push_back(static_cast<double>(p.zone_rank));
            ay.push_back(*it->second.aoa);
        }
    }
    if (rep.shared_words < 3)
        throw InsufficientDataError(
            "correlate_depth_norms: only " + std::to_string(rep.shared_words) +
            " profile words appear in the norm table (need at least 3)");
    if (fx.size() >= 3) rep.freq = spearman(fx, fy);
    if (ax.size() >= 3) rep.aoa = spearman(ax, ay);
    return rep;
}

const char* zone_name(Zone z) {
    switch (z) {
        case Zone::periphery: return "periphery";
        case Zone::kernel_non_minset: return "kernel_non_minset";
        case Zone::minset: return "minset";
    }
    return "unknown";
}

std::string profile_to_csv(const std::vector<WordProfile>& profiles) {
    std::string out = "word,zone,peel_layer,zone_rank,ivg_depth,learned\n";
    for (const auto& p : profiles) {
        out += p.word;
        out += ',';
        out += zone_name(p.zone);
        out += ',';
        out += std::to_string(p.peel_layer);
        out += ',';
        out += std::to_string(p.zone_rank);
        out += ',';
        out += p.ivg_depth >= 0 ? std::to_string(p.ivg_depth) : std::string();
        out += ',';
        out += p.ivg_depth >= 0 ? '1' : '0';
        out += '\n';
    }
    return out;
}

namespace {

nlohmann::json spearman_json(const std::optional<SpearmanResult>& s, const char* transform) {
    if (!s) return nullptr;
    return {{"rho", s->rho},
            {"n", s->n},
            {"ties_depth", s->ties_x},
            {"ties_norm", s->ties_y},
            {"degenerate", s->degenerate},
            {"transform", transform}};
}

} // namespace

nlohmann::json stats_report(const std::vector<WordProfile>& profiles,
                            const CorrelationReport& corr) {
    std::size_t zones[3] = {0, 0, 0};
    int max_layer = 0;
    for (const auto& p : profiles) {
        zones[static_cast<int>(p.zone)] += 1;
        max_layer = std::max(max_layer, p.peel_layer);
    }
    return {{"profile_words", profiles.size()},
            {"zone_counts",
             {{"periphery", zones[0]},
              {"kernel_non_minset", zones[1]},
              {"minset", zones[2]}}},
            {"peel_layer_count", max_layer},
            {"shared_words", corr.shared_words},
            {"frequency", spearman_json(corr.freq, "log")},
            {"aoa", spearman_json(corr.aoa, "identity")}};
}

} // namespace minset
