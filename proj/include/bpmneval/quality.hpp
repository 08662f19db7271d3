#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bpmneval/bpmn.hpp"
#include "bpmneval/matching.hpp"

namespace bpmneval {

struct PrecisionRecall {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// precision = matched / candidate nodes, recall = matched / gold nodes;
/// empty sides yield 0 (worst quality rather than undefined).
PrecisionRecall concept_precision_recall(const NodeMatching& matching,
                                         const ProcessGraph& candidate,
                                         const ProcessGraph& gold);

struct EditCostModel {
    double node_insert = 1.0;
    double node_delete = 1.0;
    double node_substitute = 1.0;
    double edge_insert = 1.0;
    double edge_delete = 1.0;
};

enum class EditOpKind { NodeInsert, NodeDelete, NodeSubstitute, EdgeInsert, EdgeDelete };

std::string_view to_string(EditOpKind kind);

struct EditOp {
    EditOpKind kind;
    // Node ops: first = node id (substitute: candidate id, second = gold id).
    // Edge ops: first = source node id, second = target node id.
    std::string first;
    std::string second;
    double cost = 0.0;
};

struct EditDistanceResult {
    double distance = 0.0;
    std::vector<EditOp> script;  // zero-cost keeps omitted; distance == sum of costs
    bool exact = false;
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact minimum-cost edit distance via A* over partial node assignments
/// (admissible unmatched-node lower bound). Substitution cost applies when
/// matched nodes differ in kind or normalized label; edge operations follow
/// from the node assignment. Throws BudgetExceeded when the combined node
/// count exceeds node_budget.
EditDistanceResult ged_exact(const ProcessGraph& candidate, const ProcessGraph& gold,
                             const EditCostModel& costs, int node_budget = 12);

/// Upper bound induced by a node matching: matched pairs with differing
/// label/kind become substitutions, unmatched candidate nodes deletions,
/// unmatched gold nodes insertions, edges reconciled under the induced map.
EditDistanceResult ged_approx(const ProcessGraph& candidate, const ProcessGraph& gold,
                              const EditCostModel& costs, const NodeMatching& matching);

/// 1 - distance / worst_case where worst_case deletes the whole candidate
/// and inserts the whole gold model; 1.0 for two empty graphs. Clamped to
/// [0,1].
double ged_similarity(const EditDistanceResult& result, const ProcessGraph& candidate,
                      const ProcessGraph& gold, const EditCostModel& costs);

struct QualityWeights {
    double pr = 1.0 / 3.0;
    double ged = 1.0 / 3.0;
    double behavior = 1.0 / 3.0;
};

/// Throws std::invalid_argument unless weights are non-negative and sum to 1
/// within 1e-9.
void validate(const QualityWeights& weights);

/// Weighted sum of the three quality components, each in [0,1].
double quality_score(const PrecisionRecall& pr, double ged_sim, double behavior_f1,
                     const QualityWeights& weights);

}  // namespace bpmneval
