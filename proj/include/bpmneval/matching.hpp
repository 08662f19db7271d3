#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bpmneval/bpmn.hpp"

namespace bpmneval {

struct MatchPair {
    std::string candidate_id;
    std::string gold_id;
    double score = 0.0;  // in [0,1], >= threshold
};

/// Partial injective correspondence between candidate and gold nodes.
/// Pairs are sorted by candidate id.
struct NodeMatching {
    std::vector<MatchPair> pairs;
    double threshold = 0.5;

    double total_score() const;
    const MatchPair* for_candidate(std::string_view candidate_id) const;
    const MatchPair* for_gold(std::string_view gold_id) const;
};

/// max(Jaccard over token sets, 1 - Levenshtein/max length) on normalized
/// labels; two empty strings score 0 (empty labels never match by text).
/// Symmetric. Pre: inputs already passed through normalize_label.
double label_similarity(std::string_view a, std::string_view b);

/// Optimal injective partial matching restricted to kind-compatible pairs
/// with similarity >= threshold (and > 0), maximizing total similarity via
/// optimal assignment. Unlabeled start/start and end/end pairs score 1.0
/// when each side has exactly one such node. Ties between equal-total
/// matchings break lexicographically by (candidate id, gold id).
NodeMatching compute_node_matching(const ProcessGraph& candidate, const ProcessGraph& gold,
                                   double threshold);

/// Matching of a graph onto itself: (id, id, 1.0) for every node.
NodeMatching identity_matching(const ProcessGraph& graph);

}  // namespace bpmneval
