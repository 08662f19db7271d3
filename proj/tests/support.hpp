#pragma once

#include <random>
#include <string>
#include <vector>

#include "bpmneval/bpmn.hpp"

namespace bpmneval::test {

struct NodeSpec {
    std::string id;
    NodeKind kind;
    std::string label;
};

struct FlowSpec {
    std::string source;
    std::string target;
};

ProcessGraph make_graph(const std::vector<NodeSpec>& nodes, const std::vector<FlowSpec>& flows);

/// Random graph with up to max_nodes nodes, labels drawn from a small pool,
/// random directed edges (self-loops allowed). Not necessarily well-formed
/// BPMN — start/end/gateway placement is random.
ProcessGraph random_graph(std::mt19937& rng, int max_nodes, const std::string& id_prefix);

/// Random structurally sound model: start -> random series/XOR/AND body ->
/// end. Always has >= 1 start and >= 1 end and completes.
ProcessGraph random_workflow(std::mt19937& rng, int max_tasks);

/// All sequence/XOR/AND compositions of depth <= max_depth over fresh task
/// labels, rendered as start -> body -> end graphs.
std::vector<ProcessGraph> structured_family(int max_depth);

}  // namespace bpmneval::test
