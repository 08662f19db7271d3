#include <random>

#include <doctest.h>

#include "bpmneval/behavior.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace bpmneval;
using test::make_graph;

namespace {

const std::map<std::string, std::string> kNoRewrite;

Trace trace_of(std::initializer_list<const char*> labels) {
    Trace t;
    for (const char* l : labels) t.emplace_back(l);
    return t;
}

}  // namespace

TEST_CASE("a plain sequence yields one trace") {
    ProcessGraph g = make_graph(
        {{"s", NodeKind::StartEvent, ""},
         {"a", NodeKind::Task, "A"},
         {"b", NodeKind::Task, "B"},
         {"e", NodeKind::EndEvent, ""}},
        {{"s", "a"}, {"a", "b"}, {"b", "e"}});
    TraceSet traces = enumerate_traces(g);
    CHECK_FALSE(traces.truncated);
    CHECK(traces.deadlocks == 0);
    REQUIRE(traces.traces.size() == 1);
    CHECK(*traces.traces.begin() == trace_of({"a", "b"}));
}

TEST_CASE("exclusive gateways choose one branch") {
    ProcessGraph g = make_graph(
        {{"s", NodeKind::StartEvent, ""},
         {"split", NodeKind::ExclusiveGateway, ""},
         {"a", NodeKind::Task, "A"},
         {"b", NodeKind::Task, "B"},
         {"join", NodeKind::ExclusiveGateway, ""},
         {"e", NodeKind::EndEvent, ""}},
        {{"s", "split"}, {"split", "a"}, {"split", "b"}, {"a", "join"}, {"b", "join"},
         {"join", "e"}});
    TraceSet traces = enumerate_traces(g);
    CHECK(traces.traces == std::set<Trace>{trace_of({"a"}), trace_of({"b"})});
}

TEST_CASE("parallel gateways interleave both branches") {
    ProcessGraph g = make_graph(
        {{"s", NodeKind::StartEvent, ""},
         {"split", NodeKind::ParallelGateway, ""},
         {"a", NodeKind::Task, "A"},
         {"b", NodeKind::Task, "B"},
         {"join", NodeKind::ParallelGateway, ""},
         {"e", NodeKind::EndEvent, ""}},
        {{"s", "split"}, {"split", "a"}, {"split", "b"}, {"a", "join"}, {"b", "join"},
         {"join", "e"}});
    TraceSet traces = enumerate_traces(g);
    CHECK(traces.traces == std::set<Trace>{trace_of({"a", "b"}), trace_of({"b", "a"})});
    CHECK(traces.traces == test::bfs_trace_oracle(g, TraceBounds{}).traces);
}

TEST_CASE("a missing start event is an error") {
    ProcessGraph g = make_graph({{"a", NodeKind::Task, "A"}}, {});
    CHECK_THROWS_AS(enumerate_traces(g), NoStartEvent);
}

TEST_CASE("an unsatisfiable parallel join deadlocks and is tallied") {
    ProcessGraph g = make_graph(
        {{"s", NodeKind::StartEvent, ""},
         {"a", NodeKind::Task, "A"},
         {"join", NodeKind::ParallelGateway, ""},
         {"e", NodeKind::EndEvent, ""}},
        {{"s", "a"}, {"a", "join"}, {"join", "e"}});
    // second join input is never fed
    g.nodes.push_back({"x", NodeKind::Task, "X"});
    g.flows.push_back({"fx", "x", "join"});
    TraceSet traces = enumerate_traces(g);
    CHECK(traces.traces.empty());
    CHECK(traces.deadlocks > 0);
}

TEST_CASE("loops unroll up to the firing bound") {
    // s -> a -> g; g -> a (back edge); g -> e
    ProcessGraph g = make_graph(
        {{"s", NodeKind::StartEvent, ""},
         {"a", NodeKind::Task, "A"},
         {"g", NodeKind::ExclusiveGateway, ""},
         {"e", NodeKind::EndEvent, ""}},
        {{"s", "a"}, {"a", "g"}, {"g", "a"}, {"g", "e"}});

    TraceBounds tight;
    tight.loop_bound = 0;
    TraceSet bound0 = enumerate_traces(g, tight);
    CHECK(bound0.traces == std::set<Trace>{trace_of({"a"})});

    TraceBounds once;
    once.loop_bound = 1;
    TraceSet bound1 = enumerate_traces(g, once);
    CHECK(bound1.traces == std::set<Trace>{trace_of({"a"}), trace_of({"a", "a"})});
}

TEST_CASE("loop bound growth only adds traces") {
    std::mt19937 rng(31);
    ProcessGraph g = make_graph(
        {{"s", NodeKind::StartEvent, ""},
         {"a", NodeKind::Task, "A"},
         {"g", NodeKind::ExclusiveGateway, ""},
         {"b", NodeKind::Task, "B"},
         {"e", NodeKind::EndEvent, ""}},
        {{"s", "a"}, {"a", "g"}, {"g", "b"}, {"b", "g"}, {"g", "e"}});
    for (int k = 0; k < 4; ++k) {
        TraceBounds lower, higher;
        lower.loop_bound = k;
        higher.loop_bound = k + 1;
        TraceSet small = enumerate_traces(g, lower);
        TraceSet large = enumerate_traces(g, higher);
        for (const Trace& t : small.traces) CHECK(large.traces.count(t) == 1);
    }
}

TEST_CASE("enumeration bounds set the truncated flag") {
    ProcessGraph g = make_graph(
        {{"s", NodeKind::StartEvent, ""},
         {"split", NodeKind::ParallelGateway, ""},
         {"a", NodeKind::Task, "A"},
         {"b", NodeKind::Task, "B"},
         {"c", NodeKind::Task, "C"},
         {"join", NodeKind::ParallelGateway, ""},
         {"e", NodeKind::EndEvent, ""}},
        {{"s", "split"}, {"split", "a"}, {"split", "b"}, {"split", "c"}, {"a", "join"},
         {"b", "join"}, {"c", "join"}, {"join", "e"}});

    TraceBounds few;
    few.max_traces = 2;
    TraceSet capped = enumerate_traces(g, few);
    CHECK(capped.truncated);
    CHECK(capped.traces.size() == 2);

    TraceBounds short_traces;
    short_traces.max_len = 2;
    TraceSet shortened = enumerate_traces(g, short_traces);
    CHECK(shortened.truncated);
    CHECK(shortened.traces.empty());

    TraceBounds one_token;
    one_token.token_cap = 1;
    TraceSet starved = enumerate_traces(g, one_token);
    CHECK(starved.truncated);
}

TEST_CASE("enumeration matches the breadth-first oracle on the structured family") {
    for (const ProcessGraph& g : test::structured_family(2)) {
        TraceSet mine = enumerate_traces(g);
        TraceSet oracle = test::bfs_trace_oracle(g, TraceBounds{});
        REQUIRE_FALSE(mine.truncated);
        CHECK(mine.traces == oracle.traces);
    }
}

TEST_CASE("enumeration matches the oracle on random workflows") {
    std::mt19937 rng(42);
    for (int i = 0; i < 80; ++i) {
        ProcessGraph g = test::random_workflow(rng, 5);
        TraceSet mine = enumerate_traces(g);
        TraceSet oracle = test::bfs_trace_oracle(g, TraceBounds{});
        CHECK(mine.traces == oracle.traces);
        CHECK(mine.deadlocks == oracle.deadlocks);
    }
}

TEST_CASE("enumeration is deterministic") {
    std::mt19937 rng(43);
    for (int i = 0; i < 20; ++i) {
        ProcessGraph g = test::random_workflow(rng, 6);
        TraceSet a = enumerate_traces(g), b = enumerate_traces(g);
        CHECK(a.traces == b.traces);
        CHECK(a.truncated == b.truncated);
        CHECK(a.deadlocks == b.deadlocks);
    }
}

TEST_CASE("recall and precision count shared traces") {
    TraceSet gold, cand;
    gold.traces = {trace_of({"a"}), trace_of({"b"})};
    cand.traces = {trace_of({"a"})};
    CHECK(behavioral_recall(cand, gold, kNoRewrite) == doctest::Approx(0.5));
    CHECK(behavioral_precision(cand, gold, kNoRewrite) == doctest::Approx(1.0));

    TraceSet noisy;
    noisy.traces = {trace_of({"a"}), trace_of({"c"})};
    TraceSet single;
    single.traces = {trace_of({"a"})};
    CHECK(behavioral_precision(noisy, single, kNoRewrite) == doctest::Approx(0.5));

    CHECK(behavioral_recall(cand, cand, kNoRewrite) == doctest::Approx(1.0));
    CHECK(behavioral_precision(cand, cand, kNoRewrite) == doctest::Approx(1.0));

    TraceSet empty;
    CHECK(behavioral_recall(cand, empty, kNoRewrite) == doctest::Approx(1.0));
    CHECK(behavioral_precision(empty, gold, kNoRewrite) == doctest::Approx(0.0));
}

TEST_CASE("matched labels rewrite candidate traces onto gold vocabulary") {
    ProcessGraph candidate = make_graph(
        {{"s", NodeKind::StartEvent, ""},
         {"t", NodeKind::Task, "Verify invoice"},
         {"e", NodeKind::EndEvent, ""}},
        {{"s", "t"}, {"t", "e"}});
    ProcessGraph gold = make_graph(
        {{"s2", NodeKind::StartEvent, ""},
         {"t2", NodeKind::Task, "Check invoice"},
         {"e2", NodeKind::EndEvent, ""}},
        {{"s2", "t2"}, {"t2", "e2"}});

    NodeMatching m = compute_node_matching(candidate, gold, 0.4);
    REQUIRE(m.for_candidate("t") != nullptr);
    CHECK(m.for_candidate("t")->gold_id == "t2");

    auto rewrite = trace_rewrite_map(m, candidate, gold);
    TraceSet ct = enumerate_traces(candidate), gt = enumerate_traces(gold);
    CHECK(behavioral_recall(ct, gt, rewrite) == doctest::Approx(1.0));
    CHECK(behavioral_precision(ct, gt, rewrite) == doctest::Approx(1.0));
}

TEST_CASE("extra interleavings hurt precision while recall stays perfect") {
    // gold runs A then B; the candidate runs them in parallel
    ProcessGraph gold = make_graph(
        {{"s", NodeKind::StartEvent, ""},
         {"a", NodeKind::Task, "A"},
         {"b", NodeKind::Task, "B"},
         {"e", NodeKind::EndEvent, ""}},
        {{"s", "a"}, {"a", "b"}, {"b", "e"}});
    ProcessGraph candidate = make_graph(
        {{"s", NodeKind::StartEvent, ""},
         {"split", NodeKind::ParallelGateway, ""},
         {"a", NodeKind::Task, "A"},
         {"b", NodeKind::Task, "B"},
         {"join", NodeKind::ParallelGateway, ""},
         {"e", NodeKind::EndEvent, ""}},
        {{"s", "split"}, {"split", "a"}, {"split", "b"}, {"a", "join"}, {"b", "join"},
         {"join", "e"}});
    TraceSet ct = enumerate_traces(candidate), gt = enumerate_traces(gold);
    CHECK(ct.traces == test::bfs_trace_oracle(candidate, TraceBounds{}).traces);
    CHECK(behavioral_recall(ct, gt, kNoRewrite) == doctest::Approx(1.0));
    CHECK(behavioral_precision(ct, gt, kNoRewrite) == doctest::Approx(0.5));
}

TEST_CASE("self comparison is perfect for completing, untruncated models") {
    std::mt19937 rng(44);
    for (int i = 0; i < 60; ++i) {
        ProcessGraph g = test::random_workflow(rng, 5);
        TraceSet t = enumerate_traces(g);
        REQUIRE_FALSE(t.truncated);
        if (t.traces.empty()) continue;
        CHECK(behavioral_recall(t, t, kNoRewrite) == doctest::Approx(1.0));
        CHECK(behavioral_precision(t, t, kNoRewrite) == doctest::Approx(1.0));
    }
}

TEST_CASE("harmonic mean of the two directions") {
    CHECK(behavioral_f1(1.0, 1.0) == doctest::Approx(1.0));
    CHECK(behavioral_f1(0.0, 0.0) == doctest::Approx(0.0));
    CHECK(behavioral_f1(0.5, 1.0) == doctest::Approx(2.0 / 3.0));
}
