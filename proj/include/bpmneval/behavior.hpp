#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bpmneval/bpmn.hpp"
#include "bpmneval/matching.hpp"

namespace bpmneval {

/// Sequence of normalized task labels observed in one completed run;
/// events and gateways are silent.
using Trace = std::vector<std::string>;

struct TraceSet {
    std::set<Trace> traces;
    bool truncated = false;  // some bound cut the enumeration short
    int deadlocks = 0;       // runs discarded because no transition was enabled
};

struct TraceBounds {
    int loop_bound = 1;      // each node fires at most loop_bound+1 times per run
    int max_traces = 10000;
    int max_len = 64;
    int token_cap = 64;
};

class NoStartEvent : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exhaustive depth-first exploration of the token game. Start events emit
/// one token per outgoing flow; tasks consume one token and produce one per
/// outgoing flow (>1 outgoing acts as implicit parallel split); exclusive
/// gateways route one token along one chosen outgoing flow; parallel
/// gateways fire when every incoming flow holds a token. A run completes
/// when no tokens remain and at least one end event consumed one. Deadlocked
/// runs are tallied, not returned. Throws NoStartEvent.
TraceSet enumerate_traces(const ProcessGraph& graph, const TraceBounds& bounds = {});

/// Maps normalized candidate task labels to normalized gold task labels
/// through the matching's Task pairs (candidate-id order, first mapping
/// wins for a repeated label).
std::map<std::string, std::string> trace_rewrite_map(const NodeMatching& matching,
                                                     const ProcessGraph& candidate,
                                                     const ProcessGraph& gold);

/// |gold ∩ rewritten candidate| / |gold|; 1.0 for an empty gold set.
double behavioral_recall(const TraceSet& candidate_traces, const TraceSet& gold_traces,
                         const std::map<std::string, std::string>& rewrite);

/// |gold ∩ rewritten candidate| / |candidate|; 0.0 for an empty candidate set.
double behavioral_precision(const TraceSet& candidate_traces, const TraceSet& gold_traces,
                            const std::map<std::string, std::string>& rewrite);

/// Harmonic mean; 0 when both inputs are 0.
double behavioral_f1(double recall, double precision);

}  // namespace bpmneval
