#include "bpmneval/behavior.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace bpmneval {

namespace {

struct Net {
    const ProcessGraph* graph;
    std::vector<std::string> task_labels;             // normalized, per node
    std::vector<std::vector<int>> incoming, outgoing;  // flow indices per node

    explicit Net(const ProcessGraph& g) : graph(&g) {
        std::unordered_map<std::string_view, int> index;
        for (std::size_t i = 0; i < g.nodes.size(); ++i) index.emplace(g.nodes[i].id, i);
        task_labels.resize(g.nodes.size());
        for (std::size_t i = 0; i < g.nodes.size(); ++i)
            if (g.nodes[i].kind == NodeKind::Task)
                task_labels[i] = normalize_label(g.nodes[i].label);
        incoming.resize(g.nodes.size());
        outgoing.resize(g.nodes.size());
        for (std::size_t f = 0; f < g.flows.size(); ++f) {
            outgoing[index.at(g.flows[f].source)].push_back(static_cast<int>(f));
            incoming[index.at(g.flows[f].target)].push_back(static_cast<int>(f));
        }
    }
};

struct RunState {
    std::vector<int> marking;      // token count per flow index
    std::vector<int> fire_counts;  // per node
    Trace trace;
    int tokens = 0;
    bool end_consumed = false;
};

class Enumerator {
public:
    Enumerator(const Net& net, const TraceBounds& bounds) : net_(net), bounds_(bounds) {}

    TraceSet run() {
        const ProcessGraph& g = *net_.graph;
        RunState initial;
        initial.marking.assign(g.flows.size(), 0);
        initial.fire_counts.assign(g.nodes.size(), 0);
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
            if (g.nodes[i].kind != NodeKind::StartEvent) continue;
            initial.fire_counts[i] = 1;
            for (int f : net_.outgoing[i]) {
                ++initial.marking[f];
                ++initial.tokens;
            }
        }
        explore(initial);
        return std::move(result_);
    }

private:
    void explore(const RunState& state) {
        if (stopped_) return;
        if (state.tokens == 0) {
            if (state.end_consumed)
                record(state.trace);
            else
                ++result_.deadlocks;
            return;
        }

        bool any_move = false;
        const ProcessGraph& g = *net_.graph;
        for (std::size_t node = 0; node < g.nodes.size() && !stopped_; ++node) {
            if (state.fire_counts[node] > bounds_.loop_bound) continue;
            switch (g.nodes[node].kind) {
                case NodeKind::StartEvent:
                    break;  // fires only at run start
                case NodeKind::EndEvent:
                case NodeKind::Task:
                case NodeKind::ExclusiveGateway:
                    // One token from any one marked incoming flow.
                    for (int f : net_.incoming[node]) {
                        if (state.marking[f] == 0) continue;
                        any_move = true;
                        fire(state, node, {f});
                        if (stopped_) return;
                    }
                    break;
                case NodeKind::ParallelGateway: {
                    if (net_.incoming[node].empty()) break;
                    bool enabled = std::all_of(
                        net_.incoming[node].begin(), net_.incoming[node].end(),
                        [&state](int f) { return state.marking[f] > 0; });
                    if (!enabled) break;
                    any_move = true;
                    fire(state, node, net_.incoming[node]);
                    break;
                }
            }
        }
        if (!any_move && !stopped_) ++result_.deadlocks;
    }

    void fire(const RunState& state, std::size_t node, const std::vector<int>& consume) {
        const ProcessGraph& g = *net_.graph;
        NodeKind kind = g.nodes[node].kind;

        if (kind == NodeKind::Task &&
            static_cast<int>(state.trace.size()) >= bounds_.max_len) {
            result_.truncated = true;
            return;
        }

        RunState next = state;
        for (int f : consume) {
            --next.marking[f];
            --next.tokens;
        }
        ++next.fire_counts[node];

        if (kind == NodeKind::Task) next.trace.push_back(net_.task_labels[node]);
        if (kind == NodeKind::EndEvent) next.end_consumed = true;

        if (kind == NodeKind::ExclusiveGateway) {
            if (net_.outgoing[node].empty()) {
                explore(next);
                return;
            }
            for (int f : net_.outgoing[node]) {
                if (stopped_) return;
                RunState branch = next;
                ++branch.marking[f];
                ++branch.tokens;
                if (branch.tokens > bounds_.token_cap) {
                    result_.truncated = true;
                    continue;
                }
                explore(branch);
            }
            return;
        }

        if (kind != NodeKind::EndEvent) {
            for (int f : net_.outgoing[node]) {
                ++next.marking[f];
                ++next.tokens;
            }
        }
        if (next.tokens > bounds_.token_cap) {
            result_.truncated = true;
            return;
        }
        explore(next);
    }

    void record(const Trace& trace) {
        auto [_, inserted] = result_.traces.insert(trace);
        if (inserted && static_cast<int>(result_.traces.size()) >= bounds_.max_traces) {
            result_.truncated = true;
            stopped_ = true;
        }
    }

    const Net& net_;
    const TraceBounds& bounds_;
    TraceSet result_;
    bool stopped_ = false;
};

}  // namespace

TraceSet enumerate_traces(const ProcessGraph& graph, const TraceBounds& bounds) {
    if (bounds.loop_bound < 0 || bounds.max_traces < 1 || bounds.max_len < 1)
        throw std::invalid_argument("invalid trace enumeration bounds");
    bool has_start = std::any_of(graph.nodes.begin(), graph.nodes.end(), [](const Node& n) {
        return n.kind == NodeKind::StartEvent;
    });
    if (!has_start)
        throw NoStartEvent("model '" + graph.id + "' has no start event");

    Net net(graph);
    return Enumerator(net, bounds).run();
}

std::map<std::string, std::string> trace_rewrite_map(const NodeMatching& matching,
                                                     const ProcessGraph& candidate,
                                                     const ProcessGraph& gold) {
    std::map<std::string, std::string> rewrite;
    for (const MatchPair& pair : matching.pairs) {  // already sorted by candidate id
        const Node* cn = candidate.find_node(pair.candidate_id);
        const Node* gn = gold.find_node(pair.gold_id);
        if (cn == nullptr || gn == nullptr) continue;
        if (cn->kind != NodeKind::Task || gn->kind != NodeKind::Task) continue;
        rewrite.emplace(normalize_label(cn->label), normalize_label(gn->label));
    }
    return rewrite;
}

namespace {

std::set<Trace> rewritten(const TraceSet& traces,
                          const std::map<std::string, std::string>& rewrite) {
    std::set<Trace> out;
    for (const Trace& trace : traces.traces) {
        Trace mapped;
        mapped.reserve(trace.size());
        for (const std::string& label : trace) {
            auto it = rewrite.find(label);
            mapped.push_back(it == rewrite.end() ? label : it->second);
        }
        out.insert(std::move(mapped));
    }
    return out;
}

std::size_t intersection_size(const std::set<Trace>& a, const std::set<Trace>& b) {
    std::size_t count = 0;
    for (const Trace& t : a) count += b.count(t);
    return count;
}

}  // namespace

double behavioral_recall(const TraceSet& candidate_traces, const TraceSet& gold_traces,
                         const std::map<std::string, std::string>& rewrite) {
    if (gold_traces.traces.empty()) return 1.0;
    std::set<Trace> mapped = rewritten(candidate_traces, rewrite);
    return static_cast<double>(intersection_size(gold_traces.traces, mapped)) /
           gold_traces.traces.size();
}

double behavioral_precision(const TraceSet& candidate_traces, const TraceSet& gold_traces,
                            const std::map<std::string, std::string>& rewrite) {
    if (candidate_traces.traces.empty()) return 0.0;
    std::set<Trace> mapped = rewritten(candidate_traces, rewrite);
    return static_cast<double>(intersection_size(gold_traces.traces, mapped)) /
           candidate_traces.traces.size();
}

double behavioral_f1(double recall, double precision) {
    if (recall + precision == 0.0) return 0.0;
    return 2.0 * recall * precision / (recall + precision);
}

}  // namespace bpmneval
