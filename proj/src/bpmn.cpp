#include "bpmneval/bpmn.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "bpmneval/xml.hpp"

namespace bpmneval {

namespace {

const std::map<std::string_view, NodeKind> kNodeElements = {
    {"startEvent", NodeKind::StartEvent},
    {"endEvent", NodeKind::EndEvent},
    {"task", NodeKind::Task},
    {"exclusiveGateway", NodeKind::ExclusiveGateway},
    {"parallelGateway", NodeKind::ParallelGateway},
};

// Child elements of supported nodes/flows that carry no control-flow
// information; they are skipped rather than rejected.
bool is_ignorable_child(std::string_view local) {
    return local == "incoming" || local == "outgoing" || local == "documentation";
}

[[noreturn]] void malformed(const std::string& subject, const std::string& message) {
    throw ParseError(ParseError::Kind::MalformedXml, subject, message);
}

[[noreturn]] void unsupported(const std::string& name) {
    throw ParseError(ParseError::Kind::UnsupportedElement, name,
                     "unsupported element '" + name + "'");
}

std::string required_attribute(const xml::Element& element, std::string_view attr) {
    const std::string* value = element.attribute(attr);
    std::string local(xml::local_name(element.name));
    if (value == nullptr || value->empty())
        malformed(local, "element '" + local + "' missing required attribute '" +
                             std::string(attr) + "'");
    return *value;
}

void parse_process(const xml::Element& process, ProcessGraph& graph,
                   std::set<std::string>& seen_ids) {
    if (const std::string* pid = process.attribute("id")) graph.id = *pid;

    auto claim_id = [&seen_ids](const std::string& id) {
        if (!seen_ids.insert(id).second)
            throw ParseError(ParseError::Kind::DuplicateId, id, "duplicate id '" + id + "'");
    };

    for (const xml::Element& child : process.children) {
        std::string local(xml::local_name(child.name));
        if (is_ignorable_child(local)) continue;

        if (auto it = kNodeElements.find(local); it != kNodeElements.end()) {
            for (const xml::Element& inner : child.children)
                if (!is_ignorable_child(xml::local_name(inner.name)))
                    unsupported(std::string(xml::local_name(inner.name)));
            Node node;
            node.id = required_attribute(child, "id");
            node.kind = it->second;
            if (const std::string* name = child.attribute("name")) node.label = *name;
            claim_id(node.id);
            graph.nodes.push_back(std::move(node));
        } else if (local == "sequenceFlow") {
            for (const xml::Element& inner : child.children)
                if (xml::local_name(inner.name) != "documentation")
                    unsupported(std::string(xml::local_name(inner.name)));
            SequenceFlow flow;
            flow.id = required_attribute(child, "id");
            flow.source = required_attribute(child, "sourceRef");
            flow.target = required_attribute(child, "targetRef");
            claim_id(flow.id);
            graph.flows.push_back(std::move(flow));
        } else {
            unsupported(local);
        }
    }
}

}  // namespace

std::string_view to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::StartEvent: return "startEvent";
        case NodeKind::EndEvent: return "endEvent";
        case NodeKind::Task: return "task";
        case NodeKind::ExclusiveGateway: return "exclusiveGateway";
        case NodeKind::ParallelGateway: return "parallelGateway";
    }
    return "task";
}

std::string_view to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::NoStartEvent: return "NoStartEvent";
        case ViolationKind::NoEndEvent: return "NoEndEvent";
        case ViolationKind::UnreachableNode: return "UnreachableNode";
        case ViolationKind::DeadEndNode: return "DeadEndNode";
        case ViolationKind::GatewayDegenerate: return "GatewayDegenerate";
        case ViolationKind::StartHasIncoming: return "StartHasIncoming";
        case ViolationKind::EndHasOutgoing: return "EndHasOutgoing";
    }
    return "UnreachableNode";
}

std::optional<std::size_t> ProcessGraph::node_index(std::string_view node_id) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].id == node_id) return i;
    return std::nullopt;
}

const Node* ProcessGraph::find_node(std::string_view node_id) const {
    auto index = node_index(node_id);
    return index ? &nodes[*index] : nullptr;
}

ProcessGraph parse_bpmn(std::string_view xml_text) {
    xml::Element root;
    try {
        root = xml::parse_document(xml_text);
    } catch (const xml::XmlError& e) {
        malformed("document", e.what());
    }

    ProcessGraph graph;
    std::set<std::string> seen_ids;
    std::string root_local(xml::local_name(root.name));

    if (root_local == "process") {
        parse_process(root, graph, seen_ids);
    } else if (root_local == "definitions") {
        const xml::Element* process = nullptr;
        for (const xml::Element& child : root.children) {
            std::string local(xml::local_name(child.name));
            if (local == "BPMNDiagram") continue;  // layout, ignored by design
            if (local == "process") {
                if (process != nullptr)
                    unsupported("process");  // the subset allows exactly one
                process = &child;
                continue;
            }
            unsupported(local);
        }
        if (process == nullptr)
            malformed("definitions", "definitions element contains no process");
        parse_process(*process, graph, seen_ids);
    } else {
        unsupported(root_local);
    }

    for (const SequenceFlow& flow : graph.flows) {
        for (const std::string* endpoint : {&flow.source, &flow.target}) {
            if (!graph.node_index(*endpoint))
                throw ParseError(ParseError::Kind::DanglingReference, *endpoint,
                                 "flow '" + flow.id + "' references unknown node '" +
                                     *endpoint + "'");
        }
    }
    return graph;
}

SyntaxReport validate_syntax(const ProcessGraph& graph) {
    SyntaxReport report;
    auto add = [&report](ViolationKind kind, const std::string& subject,
                         std::string message) {
        report.violations.push_back({kind, subject, std::move(message)});
    };

    std::size_t n = graph.nodes.size();
    std::vector<int> in_degree(n, 0), out_degree(n, 0);
    std::vector<std::vector<std::size_t>> successors(n);
    for (const SequenceFlow& flow : graph.flows) {
        auto s = graph.node_index(flow.source);
        auto t = graph.node_index(flow.target);
        ++out_degree[*s];
        ++in_degree[*t];
        successors[*s].push_back(*t);
    }

    bool has_start = false, has_end = false;
    std::deque<std::size_t> frontier;
    std::vector<bool> reachable(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (graph.nodes[i].kind == NodeKind::StartEvent) {
            has_start = true;
            reachable[i] = true;
            frontier.push_back(i);
        }
        has_end = has_end || graph.nodes[i].kind == NodeKind::EndEvent;
    }
    while (!frontier.empty()) {
        std::size_t at = frontier.front();
        frontier.pop_front();
        for (std::size_t next : successors[at]) {
            if (!reachable[next]) {
                reachable[next] = true;
                frontier.push_back(next);
            }
        }
    }

    if (!has_start) add(ViolationKind::NoStartEvent, graph.id, "model has no start event");
    if (!has_end) add(ViolationKind::NoEndEvent, graph.id, "model has no end event");

    for (std::size_t i = 0; i < n; ++i) {
        const Node& node = graph.nodes[i];
        if (!reachable[i])
            add(ViolationKind::UnreachableNode, node.id,
                "node '" + node.id + "' is not reachable from any start event");
        if (node.kind != NodeKind::EndEvent && out_degree[i] == 0)
            add(ViolationKind::DeadEndNode, node.id,
                "non-end node '" + node.id + "' has no outgoing flow");
        if (is_gateway(node.kind) && in_degree[i] <= 1 && out_degree[i] <= 1)
            add(ViolationKind::GatewayDegenerate, node.id,
                "gateway '" + node.id + "' neither splits nor joins");
        if (node.kind == NodeKind::StartEvent && in_degree[i] > 0)
            add(ViolationKind::StartHasIncoming, node.id,
                "start event '" + node.id + "' has incoming flow");
        if (node.kind == NodeKind::EndEvent && out_degree[i] > 0)
            add(ViolationKind::EndHasOutgoing, node.id,
                "end event '" + node.id + "' has outgoing flow");
    }
    return report;
}

std::string normalize_label(std::string_view raw) {
    if (raw.empty()) return {};

    icu::UnicodeString text =
        icu::UnicodeString::fromUTF8(icu::StringPiece(raw.data(), static_cast<int>(raw.size())));

    icu::UnicodeString cleaned;
    bool pending_space = false;
    for (int32_t i = 0; i < text.length();) {
        UChar32 cp = text.char32At(i);
        i += U16_LENGTH(cp);
        bool punct = u_ispunct(cp) || (cp < 0x80 && std::ispunct(static_cast<int>(cp)));
        if (punct || u_isUWhiteSpace(cp) || u_isspace(cp)) {
            pending_space = !cleaned.isEmpty();
            continue;
        }
        if (pending_space) {
            cleaned.append(static_cast<UChar32>(' '));
            pending_space = false;
        }
        cleaned.append(u_tolower(cp));
    }

    // NFC last so removals cannot leave decomposed sequences behind; the
    // result is then a fixed point of the whole pipeline.
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
    if (U_SUCCESS(status)) {
        icu::UnicodeString composed = nfc->normalize(cleaned, status);
        if (U_SUCCESS(status)) cleaned = composed;
    }

    std::string out;
    cleaned.toUTF8String(out);
    return out;
}

namespace {

void append_xml_escaped(std::string& out, std::string_view value) {
    for (char c : value) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
}

}  // namespace

std::string serialize_bpmn(const ProcessGraph& graph) {
    std::vector<const Node*> nodes;
    nodes.reserve(graph.nodes.size());
    for (const Node& node : graph.nodes) nodes.push_back(&node);
    std::sort(nodes.begin(), nodes.end(),
              [](const Node* a, const Node* b) { return a->id < b->id; });

    std::vector<const SequenceFlow*> flows;
    flows.reserve(graph.flows.size());
    for (const SequenceFlow& flow : graph.flows) flows.push_back(&flow);
    std::sort(flows.begin(), flows.end(),
              [](const SequenceFlow* a, const SequenceFlow* b) { return a->id < b->id; });

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<definitions xmlns=\"http://www.omg.org/spec/BPMN/20100524/MODEL\">\n";
    out += "  <process";
    if (!graph.id.empty()) {
        out += " id=\"";
        append_xml_escaped(out, graph.id);
        out += "\"";
    }
    out += ">\n";
    for (const Node* node : nodes) {
        out += "    <";
        out += to_string(node->kind);
        out += " id=\"";
        append_xml_escaped(out, node->id);
        out += "\"";
        if (!node->label.empty()) {
            out += " name=\"";
            append_xml_escaped(out, node->label);
            out += "\"";
        }
        out += "/>\n";
    }
    for (const SequenceFlow* flow : flows) {
        out += "    <sequenceFlow id=\"";
        append_xml_escaped(out, flow->id);
        out += "\" sourceRef=\"";
        append_xml_escaped(out, flow->source);
        out += "\" targetRef=\"";
        append_xml_escaped(out, flow->target);
        out += "\"/>\n";
    }
    out += "  </process>\n";
    out += "</definitions>\n";
    return out;
}

}  // namespace bpmneval
