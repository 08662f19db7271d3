#include "bpmneval/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <vector>

namespace bpmneval {

namespace {

constexpr double kTieEps = 1e-9;

std::set<std::string> token_set(std::string_view s) {
    std::set<std::string> tokens;
    std::size_t start = 0;
    while (start < s.size()) {
        auto space = s.find(' ', start);
        if (space == std::string_view::npos) space = s.size();
        if (space > start) tokens.emplace(s.substr(start, space - start));
        start = space + 1;
    }
    return tokens;
}

std::u32string decode_codepoints(std::string_view s) {
    std::u32string out;
    for (std::size_t i = 0; i < s.size();) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        char32_t cp = c;
        std::size_t len = 1;
        if (c >= 0xF0) len = 4;
        else if (c >= 0xE0) len = 3;
        else if (c >= 0xC0) len = 2;
        if (len > 1 && i + len <= s.size()) {
            cp = c & (0x7F >> len);
            for (std::size_t k = 1; k < len; ++k)
                cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

std::size_t levenshtein(const std::u32string& a, const std::u32string& b) {
    std::vector<std::size_t> prev(b.size() + 1), curr(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        curr[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            std::size_t substitute = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            curr[j] = std::min({prev[j] + 1, curr[j - 1] + 1, substitute});
        }
        std::swap(prev, curr);
    }
    return prev[b.size()];
}

// Minimum-cost perfect assignment on a square matrix (potentials method,
// O(n^3)). Returns row -> column.
std::vector<int> solve_min_assignment(const std::vector<std::vector<double>>& cost) {
    int n = static_cast<int>(cost.size());
    if (n == 0) return {};
    const double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> way(n + 1, 0), match(n + 1, 0);  // match[col] = row (1-based)
    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, kInf);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            int i0 = match[j0], j1 = -1;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            int j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<int> row_to_col(n, -1);
    for (int j = 1; j <= n; ++j)
        if (match[j] != 0) row_to_col[match[j] - 1] = j - 1;
    return row_to_col;
}

// Score matrix with -1 marking inadmissible pairs.
using ScoreMatrix = std::vector<std::vector<double>>;

// Maximum total similarity over injective partial matchings, taking only
// rows/columns still enabled. Inadmissible cells act as "leave unmatched".
double max_matching_total(const ScoreMatrix& scores, const std::vector<bool>& row_enabled,
                          const std::vector<bool>& col_enabled) {
    std::vector<int> rows, cols;
    for (std::size_t i = 0; i < row_enabled.size(); ++i)
        if (row_enabled[i]) rows.push_back(static_cast<int>(i));
    for (std::size_t j = 0; j < col_enabled.size(); ++j)
        if (col_enabled[j]) cols.push_back(static_cast<int>(j));

    int n = static_cast<int>(std::max(rows.size(), cols.size()));
    if (n == 0) return 0.0;
    // Weight 0 doubles as "unmatched": the bipartite graph is complete, so
    // any partial matching over admissible pairs extends to a perfect one.
    std::vector<std::vector<double>> cost(n, std::vector<double>(n, 1.0));
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = 0; b < cols.size(); ++b) {
            double s = scores[rows[a]][cols[b]];
            if (s >= 0.0) cost[a][b] = 1.0 - s;
        }
    std::vector<int> assignment = solve_min_assignment(cost);
    double total = 0.0;
    for (std::size_t a = 0; a < rows.size(); ++a) {
        int b = assignment[a];
        if (b >= 0 && b < static_cast<int>(cols.size())) {
            double s = scores[rows[a]][cols[b]];
            if (s > 0.0) total += s;
        }
    }
    return total;
}

}  // namespace

double NodeMatching::total_score() const {
    double total = 0.0;
    for (const MatchPair& pair : pairs) total += pair.score;
    return total;
}

const MatchPair* NodeMatching::for_candidate(std::string_view candidate_id) const {
    for (const MatchPair& pair : pairs)
        if (pair.candidate_id == candidate_id) return &pair;
    return nullptr;
}

const MatchPair* NodeMatching::for_gold(std::string_view gold_id) const {
    for (const MatchPair& pair : pairs)
        if (pair.gold_id == gold_id) return &pair;
    return nullptr;
}

double label_similarity(std::string_view a, std::string_view b) {
    if (a.empty() && b.empty()) return 0.0;
    if (a == b) return 1.0;

    std::set<std::string> ta = token_set(a), tb = token_set(b);
    std::size_t intersection = 0;
    for (const std::string& t : ta) intersection += tb.count(t);
    std::size_t unions = ta.size() + tb.size() - intersection;
    double jaccard = unions == 0 ? 0.0 : static_cast<double>(intersection) / unions;

    std::u32string ca = decode_codepoints(a), cb = decode_codepoints(b);
    std::size_t longest = std::max(ca.size(), cb.size());
    double lev = longest == 0 ? 0.0
                              : 1.0 - static_cast<double>(levenshtein(ca, cb)) / longest;

    return std::max(jaccard, lev);
}

NodeMatching compute_node_matching(const ProcessGraph& candidate, const ProcessGraph& gold,
                                   double threshold) {
    const std::size_t nc = candidate.nodes.size(), ng = gold.nodes.size();
    NodeMatching matching;
    matching.threshold = threshold;
    if (nc == 0 || ng == 0) return matching;

    std::vector<std::string> cand_labels(nc), gold_labels(ng);
    for (std::size_t i = 0; i < nc; ++i) cand_labels[i] = normalize_label(candidate.nodes[i].label);
    for (std::size_t j = 0; j < ng; ++j) gold_labels[j] = normalize_label(gold.nodes[j].label);

    auto unlabeled_count = [](const ProcessGraph& g, const std::vector<std::string>& labels,
                              NodeKind kind) {
        std::size_t count = 0;
        for (std::size_t i = 0; i < g.nodes.size(); ++i)
            if (g.nodes[i].kind == kind && labels[i].empty()) ++count;
        return count;
    };

    ScoreMatrix scores(nc, std::vector<double>(ng, -1.0));
    for (std::size_t i = 0; i < nc; ++i) {
        for (std::size_t j = 0; j < ng; ++j) {
            const Node& cn = candidate.nodes[i];
            const Node& gn = gold.nodes[j];
            if (cn.kind != gn.kind) continue;
            double s;
            if (cand_labels[i].empty() && gold_labels[j].empty() &&
                (cn.kind == NodeKind::StartEvent || cn.kind == NodeKind::EndEvent)) {
                // Unique unlabeled start/end nodes are unambiguous anchors.
                bool unique = unlabeled_count(candidate, cand_labels, cn.kind) == 1 &&
                              unlabeled_count(gold, gold_labels, cn.kind) == 1;
                s = unique ? 1.0 : 0.0;
            } else {
                s = label_similarity(cand_labels[i], gold_labels[j]);
            }
            if (s >= threshold && s > 0.0) scores[i][j] = s;
        }
    }

    std::vector<bool> row_enabled(nc, true), col_enabled(ng, true);
    double remaining = max_matching_total(scores, row_enabled, col_enabled);

    // Greedy lexicographic refinement: fix the smallest (candidate id,
    // gold id) pair consistent with the optimal total, then recurse on the
    // reduced problem. Candidate/gold visits follow id order.
    std::vector<std::size_t> cand_order(nc), gold_order(ng);
    for (std::size_t i = 0; i < nc; ++i) cand_order[i] = i;
    for (std::size_t j = 0; j < ng; ++j) gold_order[j] = j;
    std::sort(cand_order.begin(), cand_order.end(), [&](std::size_t a, std::size_t b) {
        return candidate.nodes[a].id < candidate.nodes[b].id;
    });
    std::sort(gold_order.begin(), gold_order.end(), [&](std::size_t a, std::size_t b) {
        return gold.nodes[a].id < gold.nodes[b].id;
    });

    for (std::size_t ci : cand_order) {
        row_enabled[ci] = false;
        for (std::size_t gj : gold_order) {
            if (!col_enabled[gj] || scores[ci][gj] < 0.0) continue;
            col_enabled[gj] = false;
            double rest = max_matching_total(scores, row_enabled, col_enabled);
            if (scores[ci][gj] + rest >= remaining - kTieEps) {
                matching.pairs.push_back({candidate.nodes[ci].id, gold.nodes[gj].id,
                                          scores[ci][gj]});
                remaining -= scores[ci][gj];
                break;
            }
            col_enabled[gj] = true;
        }
        // No fix means some optimal matching leaves this candidate
        // unmatched, so dropping its row preserves the achievable total.
    }

    std::sort(matching.pairs.begin(), matching.pairs.end(),
              [](const MatchPair& a, const MatchPair& b) {
                  return a.candidate_id < b.candidate_id;
              });
    return matching;
}

NodeMatching identity_matching(const ProcessGraph& graph) {
    NodeMatching matching;
    matching.threshold = 0.5;
    for (const Node& node : graph.nodes) matching.pairs.push_back({node.id, node.id, 1.0});
    std::sort(matching.pairs.begin(), matching.pairs.end(),
              [](const MatchPair& a, const MatchPair& b) {
                  return a.candidate_id < b.candidate_id;
              });
    return matching;
}

}  // namespace bpmneval
