#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bpmneval {

enum class NodeKind { StartEvent, EndEvent, Task, ExclusiveGateway, ParallelGateway };

std::string_view to_string(NodeKind kind);

inline bool is_gateway(NodeKind kind) {
    return kind == NodeKind::ExclusiveGateway || kind == NodeKind::ParallelGateway;
}

struct Node {
    std::string id;
    NodeKind kind = NodeKind::Task;
    std::string label;  // may be empty
};

struct SequenceFlow {
    std::string id;
    std::string source;  // node id
    std::string target;  // node id
};

/// Directed attributed graph of BPMN flow nodes and sequence flows.
/// Parsing guarantees: node/flow ids unique, flow endpoints resolve to nodes,
/// document order preserved in `nodes` and `flows`.
struct ProcessGraph {
    std::string id;
    std::vector<Node> nodes;
    std::vector<SequenceFlow> flows;

    std::optional<std::size_t> node_index(std::string_view node_id) const;
    const Node* find_node(std::string_view node_id) const;
};

class ParseError : public std::runtime_error {
public:
    enum class Kind { MalformedXml, UnsupportedElement, DanglingReference, DuplicateId };

    ParseError(Kind kind, std::string subject, const std::string& message)
        : std::runtime_error(message), kind_(kind), subject_(std::move(subject)) {}

    Kind kind() const noexcept { return kind_; }
    const std::string& subject() const noexcept { return subject_; }

private:
    Kind kind_;
    std::string subject_;
};

enum class ViolationKind {
    NoStartEvent,
    NoEndEvent,
    UnreachableNode,
    DeadEndNode,
    GatewayDegenerate,
    StartHasIncoming,
    EndHasOutgoing,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::string subject;  // node or flow id; graph id for graph-level rules
    std::string message;
};

struct SyntaxReport {
    std::vector<Violation> violations;

    std::size_t deficit_count() const { return violations.size(); }
};

/// Parses the supported BPMN 2.0 XML subset (start/end events, tasks,
/// exclusive/parallel gateways, sequence flows inside a single process).
/// Namespace-tolerant: elements and attributes match on local names.
/// Diagram-interchange sections are ignored. Throws ParseError.
ProcessGraph parse_bpmn(std::string_view xml_text);

/// Counts syntactic deficits. Never fails; one violation per rule breach,
/// graph-level rules first, then per-node rules in document order.
SyntaxReport validate_syntax(const ProcessGraph& graph);

/// Lowercases, NFC-normalizes, strips punctuation to spaces, collapses
/// whitespace, trims. Idempotent.
std::string normalize_label(std::string_view raw);

/// Canonical serializer for the same subset: elements sorted by id,
/// two-space indentation. parse(serialize(g)) preserves the node
/// (id, kind, label) set and flow (source, target) multiset.
std::string serialize_bpmn(const ProcessGraph& graph);

}  // namespace bpmneval
