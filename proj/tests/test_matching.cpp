#include <random>

#include <doctest.h>

#include "bpmneval/matching.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace bpmneval;
using test::make_graph;

TEST_CASE("label similarity basics") {
    CHECK(label_similarity("check invoice", "check invoice") == doctest::Approx(1.0));
    // token sets are equal, so the Jaccard term is 2/2
    CHECK(label_similarity("check invoice", "invoice check") == doctest::Approx(1.0));
    CHECK(label_similarity("", "anything") == 0.0);
    CHECK(label_similarity("", "") == 0.0);
    CHECK(label_similarity("check invoice", "check invoices") > 0.8);
}

TEST_CASE("label similarity is symmetric") {
    std::vector<std::string> pool = {"",
                                     "check invoice",
                                     "invoice check",
                                     "pay supplier",
                                     "approve claim quickly",
                                     "zzz"};
    for (const std::string& a : pool)
        for (const std::string& b : pool)
            CHECK(label_similarity(a, b) == doctest::Approx(label_similarity(b, a)));
}

TEST_CASE("identical graphs match one to one with score 1") {
    ProcessGraph g = make_graph(
        {{"s", NodeKind::StartEvent, ""},
         {"a", NodeKind::Task, "Check invoice"},
         {"b", NodeKind::Task, "Pay invoice"},
         {"e", NodeKind::EndEvent, ""}},
        {{"s", "a"}, {"a", "b"}, {"b", "e"}});
    NodeMatching m = compute_node_matching(g, g, 0.5);
    REQUIRE(m.pairs.size() == g.nodes.size());
    for (const MatchPair& p : m.pairs) {
        CHECK(p.candidate_id == p.gold_id);
        CHECK(p.score == doctest::Approx(1.0));
    }
}

TEST_CASE("nothing above threshold yields an empty matching") {
    ProcessGraph c = make_graph({{"a", NodeKind::Task, "alpha beta"}}, {});
    ProcessGraph g = make_graph({{"x", NodeKind::Task, "gamma delta"}}, {});
    CHECK(compute_node_matching(c, g, 0.5).pairs.empty());
}

TEST_CASE("kind blocking prevents cross-kind matches") {
    ProcessGraph c = make_graph({{"a", NodeKind::Task, "decide"}}, {});
    ProcessGraph g = make_graph({{"x", NodeKind::ExclusiveGateway, "decide"}}, {});
    CHECK(compute_node_matching(c, g, 0.1).pairs.empty());
}

TEST_CASE("assignment beats greedy best-first") {
    // Greedy grabs (c1,g1) = 1.0 and strands c2 (its only other admissible
    // partner is below threshold); the optimal assignment crosses over.
    ProcessGraph c = make_graph({{"c1", NodeKind::Task, "alpha beta gamma"},
                                 {"c2", NodeKind::Task, "alpha beta"}},
                                {});
    ProcessGraph g = make_graph({{"g1", NodeKind::Task, "alpha beta gamma"},
                                 {"g2", NodeKind::Task, "alpha beta gamma delta"}},
                                {});
    NodeMatching m = compute_node_matching(c, g, 0.6);
    REQUIRE(m.pairs.size() == 2);
    CHECK(m.pairs[0].candidate_id == "c1");
    CHECK(m.pairs[0].gold_id == "g2");
    CHECK(m.pairs[1].candidate_id == "c2");
    CHECK(m.pairs[1].gold_id == "g1");
    CHECK(m.total_score() == doctest::Approx(0.75 + 2.0 / 3.0));
}

TEST_CASE("unique unlabeled start and end events anchor structurally") {
    ProcessGraph c = make_graph(
        {{"s", NodeKind::StartEvent, ""}, {"e", NodeKind::EndEvent, ""}}, {});
    ProcessGraph g = make_graph(
        {{"s2", NodeKind::StartEvent, ""}, {"e2", NodeKind::EndEvent, ""}}, {});
    NodeMatching m = compute_node_matching(c, g, 0.5);
    REQUIRE(m.pairs.size() == 2);
    CHECK(m.pairs[0].score == doctest::Approx(1.0));

    // Two unlabeled starts on one side: the anchor is ambiguous, no match.
    ProcessGraph c2 = make_graph(
        {{"s", NodeKind::StartEvent, ""}, {"s3", NodeKind::StartEvent, ""}}, {});
    CHECK(compute_node_matching(c2, g, 0.5).pairs.empty());
}

TEST_CASE("ties break lexicographically by candidate then gold id") {
    ProcessGraph c = make_graph(
        {{"cb", NodeKind::Task, "same label"}, {"ca", NodeKind::Task, "same label"}}, {});
    ProcessGraph g = make_graph(
        {{"gb", NodeKind::Task, "same label"}, {"ga", NodeKind::Task, "same label"}}, {});
    NodeMatching m = compute_node_matching(c, g, 0.5);
    REQUIRE(m.pairs.size() == 2);
    CHECK(m.pairs[0].candidate_id == "ca");
    CHECK(m.pairs[0].gold_id == "ga");
    CHECK(m.pairs[1].candidate_id == "cb");
    CHECK(m.pairs[1].gold_id == "gb");
}

TEST_CASE("matching total equals exhaustive enumeration on small graphs") {
    std::mt19937 rng(101);
    for (int i = 0; i < 120; ++i) {
        ProcessGraph c = test::random_graph(rng, 5, "c");
        ProcessGraph g = test::random_graph(rng, 5, "g");
        double threshold = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        NodeMatching m = compute_node_matching(c, g, threshold);
        double oracle = test::brute_force_matching_total(c, g, threshold);
        CHECK(m.total_score() == doctest::Approx(oracle).epsilon(1e-9));
        for (const MatchPair& p : m.pairs) CHECK(p.score >= threshold);
    }
}

TEST_CASE("swapping sides mirrors the matching score") {
    std::mt19937 rng(202);
    for (int i = 0; i < 60; ++i) {
        ProcessGraph c = test::random_graph(rng, 6, "c");
        ProcessGraph g = test::random_graph(rng, 6, "g");
        NodeMatching forward = compute_node_matching(c, g, 0.4);
        NodeMatching backward = compute_node_matching(g, c, 0.4);
        CHECK(forward.total_score() == doctest::Approx(backward.total_score()));
    }
}

TEST_CASE("raising the threshold never increases the total") {
    std::mt19937 rng(303);
    for (int i = 0; i < 60; ++i) {
        ProcessGraph c = test::random_graph(rng, 6, "c");
        ProcessGraph g = test::random_graph(rng, 6, "g");
        double previous = compute_node_matching(c, g, 0.0).total_score();
        for (double t : {0.25, 0.5, 0.75, 1.0}) {
            double current = compute_node_matching(c, g, t).total_score();
            CHECK(current <= previous + 1e-9);
            previous = current;
        }
    }
}

TEST_CASE("matching is injective both ways") {
    std::mt19937 rng(404);
    for (int i = 0; i < 60; ++i) {
        ProcessGraph c = test::random_graph(rng, 7, "c");
        ProcessGraph g = test::random_graph(rng, 7, "g");
        NodeMatching m = compute_node_matching(c, g, 0.3);
        std::set<std::string> cands, golds;
        for (const MatchPair& p : m.pairs) {
            CHECK(cands.insert(p.candidate_id).second);
            CHECK(golds.insert(p.gold_id).second);
        }
    }
}
