#include "bpmneval/quality.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <queue>
#include <unordered_map>

namespace bpmneval {

namespace {

struct IndexedGraph {
    const ProcessGraph* graph;
    std::vector<std::string> labels;  // normalized
    std::map<std::pair<int, int>, int> edge_groups;  // (source idx, target idx) -> multiplicity

    explicit IndexedGraph(const ProcessGraph& g) : graph(&g) {
        std::unordered_map<std::string_view, int> index;
        labels.reserve(g.nodes.size());
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
            index.emplace(g.nodes[i].id, static_cast<int>(i));
            labels.push_back(normalize_label(g.nodes[i].label));
        }
        for (const SequenceFlow& flow : g.flows)
            ++edge_groups[{index.at(flow.source), index.at(flow.target)}];
    }

    int count(int a, int b) const {
        auto it = edge_groups.find({a, b});
        return it == edge_groups.end() ? 0 : it->second;
    }

    int node_count() const { return static_cast<int>(graph->nodes.size()); }
};

double substitution_cost(const IndexedGraph& c, const IndexedGraph& g, int i, int j,
                         const EditCostModel& costs) {
    bool same = c.graph->nodes[i].kind == g.graph->nodes[j].kind && c.labels[i] == g.labels[j];
    return same ? 0.0 : costs.node_substitute;
}

// Builds the edit script for a complete candidate->gold node map (-1 =
// deleted) and returns it with the summed distance.
EditDistanceResult script_from_mapping(const IndexedGraph& c, const IndexedGraph& g,
                                       const std::vector<int>& mapping,
                                       const EditCostModel& costs) {
    EditDistanceResult result;
    const ProcessGraph& cand = *c.graph;
    const ProcessGraph& gold = *g.graph;

    std::vector<bool> used(gold.nodes.size(), false);
    for (int i = 0; i < c.node_count(); ++i) {
        if (mapping[i] >= 0 && substitution_cost(c, g, i, mapping[i], costs) > 0.0)
            result.script.push_back({EditOpKind::NodeSubstitute, cand.nodes[i].id,
                                     gold.nodes[mapping[i]].id, costs.node_substitute});
        if (mapping[i] >= 0) used[mapping[i]] = true;
    }
    for (int i = 0; i < c.node_count(); ++i)
        if (mapping[i] < 0)
            result.script.push_back({EditOpKind::NodeDelete, cand.nodes[i].id, "",
                                     costs.node_delete});
    for (int j = 0; j < g.node_count(); ++j)
        if (!used[j])
            result.script.push_back({EditOpKind::NodeInsert, gold.nodes[j].id, "",
                                     costs.node_insert});

    // Per edge group, min(candidate, gold multiplicity) instances survive;
    // the earliest instances in document order count as kept.
    std::map<std::pair<int, int>, int> kept_cand, kept_gold;
    for (const auto& [pair, count] : c.edge_groups) {
        auto [a, b] = pair;
        if (mapping[a] >= 0 && mapping[b] >= 0) {
            int k = std::min(count, g.count(mapping[a], mapping[b]));
            kept_cand[pair] = k;
            kept_gold[{mapping[a], mapping[b]}] = k;
        }
    }
    std::unordered_map<std::string_view, int> cand_index, gold_index;
    for (std::size_t i = 0; i < cand.nodes.size(); ++i) cand_index.emplace(cand.nodes[i].id, i);
    for (std::size_t j = 0; j < gold.nodes.size(); ++j) gold_index.emplace(gold.nodes[j].id, j);

    for (const SequenceFlow& flow : cand.flows) {
        std::pair<int, int> key{cand_index.at(flow.source), cand_index.at(flow.target)};
        auto it = kept_cand.find(key);
        if (it != kept_cand.end() && it->second > 0) {
            --it->second;
            continue;
        }
        result.script.push_back({EditOpKind::EdgeDelete, flow.source, flow.target,
                                 costs.edge_delete});
    }
    for (const SequenceFlow& flow : gold.flows) {
        std::pair<int, int> key{gold_index.at(flow.source), gold_index.at(flow.target)};
        auto it = kept_gold.find(key);
        if (it != kept_gold.end() && it->second > 0) {
            --it->second;
            continue;
        }
        result.script.push_back({EditOpKind::EdgeInsert, flow.source, flow.target,
                                 costs.edge_insert});
    }

    for (const EditOp& op : result.script) result.distance += op.cost;
    return result;
}

struct SearchState {
    double f = 0.0;
    double g = 0.0;
    std::uint32_t used = 0;
    std::vector<int> mapping;  // gold index per processed candidate, -1 = deleted
};

struct StateWorse {
    bool operator()(const SearchState& a, const SearchState& b) const {
        if (a.f != b.f) return a.f > b.f;
        if (a.mapping.size() != b.mapping.size()) return a.mapping.size() < b.mapping.size();
        return a.mapping > b.mapping;
    }
};

}  // namespace

std::string_view to_string(EditOpKind kind) {
    switch (kind) {
        case EditOpKind::NodeInsert: return "node_insert";
        case EditOpKind::NodeDelete: return "node_delete";
        case EditOpKind::NodeSubstitute: return "node_substitute";
        case EditOpKind::EdgeInsert: return "edge_insert";
        case EditOpKind::EdgeDelete: return "edge_delete";
    }
    return "node_insert";
}

PrecisionRecall concept_precision_recall(const NodeMatching& matching,
                                         const ProcessGraph& candidate,
                                         const ProcessGraph& gold) {
    PrecisionRecall pr;
    double matched = static_cast<double>(matching.pairs.size());
    pr.precision = candidate.nodes.empty() ? 0.0 : matched / candidate.nodes.size();
    pr.recall = gold.nodes.empty() ? 0.0 : matched / gold.nodes.size();
    pr.f1 = pr.precision + pr.recall == 0.0
                ? 0.0
                : 2.0 * pr.precision * pr.recall / (pr.precision + pr.recall);
    return pr;
}

EditDistanceResult ged_exact(const ProcessGraph& candidate, const ProcessGraph& gold,
                             const EditCostModel& costs, int node_budget) {
    if (static_cast<int>(candidate.nodes.size() + gold.nodes.size()) > node_budget)
        throw BudgetExceeded("graphs too large for exact edit distance: " +
                             std::to_string(candidate.nodes.size()) + " + " +
                             std::to_string(gold.nodes.size()) + " nodes exceed budget " +
                             std::to_string(node_budget));

    IndexedGraph c(candidate), g(gold);
    const int n = c.node_count(), m = g.node_count();

    auto heuristic = [&](int processed, std::uint32_t used) {
        int rc = n - processed;
        int rg = m - std::popcount(used);
        return std::max(rc - rg, 0) * costs.node_delete +
               std::max(rg - rc, 0) * costs.node_insert;
    };

    // Cost of inserting all unused gold nodes and every gold edge group that
    // was never paired (a group pairs iff both endpoints are images).
    auto finalize_cost = [&](std::uint32_t used) {
        double total = 0.0;
        for (int j = 0; j < m; ++j)
            if (!(used & (1u << j))) total += costs.node_insert;
        for (const auto& [pair, count] : g.edge_groups) {
            bool both_images = (used & (1u << pair.first)) && (used & (1u << pair.second));
            if (!both_images) total += count * costs.edge_insert;
        }
        return total;
    };

    std::priority_queue<SearchState, std::vector<SearchState>, StateWorse> frontier;
    auto push = [&](SearchState state) {
        if (static_cast<int>(state.mapping.size()) == n) state.g += finalize_cost(state.used);
        state.f = state.g + (static_cast<int>(state.mapping.size()) == n
                                 ? 0.0
                                 : heuristic(static_cast<int>(state.mapping.size()), state.used));
        frontier.push(std::move(state));
    };
    push(SearchState{});

    while (!frontier.empty()) {
        SearchState state = frontier.top();
        frontier.pop();
        int i = static_cast<int>(state.mapping.size());
        if (i == n) {
            EditDistanceResult result = script_from_mapping(c, g, state.mapping, costs);
            result.exact = true;
            return result;
        }

        // Delete candidate node i: all its edges to processed nodes go too.
        {
            SearchState child = state;
            child.g += costs.node_delete + c.count(i, i) * costs.edge_delete;
            for (int k = 0; k < i; ++k)
                child.g += (c.count(i, k) + c.count(k, i)) * costs.edge_delete;
            child.mapping.push_back(-1);
            push(std::move(child));
        }

        for (int j = 0; j < m; ++j) {
            if (state.used & (1u << j)) continue;
            SearchState child = state;
            double delta = substitution_cost(c, g, i, j, costs);
            {
                int cc = c.count(i, i), gg = g.count(j, j), k = std::min(cc, gg);
                delta += (cc - k) * costs.edge_delete + (gg - k) * costs.edge_insert;
            }
            for (int k = 0; k < i; ++k) {
                int mk = state.mapping[k];
                if (mk < 0) {
                    delta += (c.count(i, k) + c.count(k, i)) * costs.edge_delete;
                    continue;
                }
                int cc = c.count(i, k), gg = g.count(j, mk), kk = std::min(cc, gg);
                delta += (cc - kk) * costs.edge_delete + (gg - kk) * costs.edge_insert;
                cc = c.count(k, i);
                gg = g.count(mk, j);
                kk = std::min(cc, gg);
                delta += (cc - kk) * costs.edge_delete + (gg - kk) * costs.edge_insert;
            }
            child.g += delta;
            child.used |= 1u << j;
            child.mapping.push_back(j);
            push(std::move(child));
        }
    }
    // Unreachable: a terminal state always exists (delete all, insert all).
    throw std::logic_error("edit distance search exhausted without a terminal state");
}

EditDistanceResult ged_approx(const ProcessGraph& candidate, const ProcessGraph& gold,
                              const EditCostModel& costs, const NodeMatching& matching) {
    IndexedGraph c(candidate), g(gold);
    std::unordered_map<std::string_view, int> gold_index;
    for (std::size_t j = 0; j < gold.nodes.size(); ++j) gold_index.emplace(gold.nodes[j].id, j);

    std::vector<int> mapping(candidate.nodes.size(), -1);
    for (std::size_t i = 0; i < candidate.nodes.size(); ++i) {
        const MatchPair* pair = matching.for_candidate(candidate.nodes[i].id);
        if (pair == nullptr) continue;
        auto it = gold_index.find(pair->gold_id);
        if (it != gold_index.end()) mapping[i] = it->second;
    }

    EditDistanceResult result = script_from_mapping(c, g, mapping, costs);
    result.exact = false;
    return result;
}

double ged_similarity(const EditDistanceResult& result, const ProcessGraph& candidate,
                      const ProcessGraph& gold, const EditCostModel& costs) {
    double worst = candidate.nodes.size() * costs.node_delete +
                   candidate.flows.size() * costs.edge_delete +
                   gold.nodes.size() * costs.node_insert +
                   gold.flows.size() * costs.edge_insert;
    if (worst == 0.0) return 1.0;
    return std::clamp(1.0 - result.distance / worst, 0.0, 1.0);
}

void validate(const QualityWeights& weights) {
    if (weights.pr < 0.0 || weights.ged < 0.0 || weights.behavior < 0.0)
        throw std::invalid_argument("quality weights must be non-negative");
    if (std::abs(weights.pr + weights.ged + weights.behavior - 1.0) > 1e-9)
        throw std::invalid_argument("quality weights must sum to 1");
}

double quality_score(const PrecisionRecall& pr, double ged_sim, double behavior_f1,
                     const QualityWeights& weights) {
    validate(weights);
    return weights.pr * pr.f1 + weights.ged * ged_sim + weights.behavior * behavior_f1;
}

}  // namespace bpmneval
