#include <algorithm>
#include <cmath>
#include <random>

#include <doctest.h>

#include "bpmneval/economics.hpp"

using namespace bpmneval;

TEST_CASE("token pricing arithmetic") {
    PricingEntry free{"m", 0, 0, 0};
    CHECK(compute_cost(TokenUsage{0, 0, 0}, free) == doctest::Approx(0.0));

    PricingEntry tiered{"m", 3.0, 15.0, 0.0};
    CHECK(compute_cost(TokenUsage{1'000'000, 1'000'000, 1}, tiered) == doctest::Approx(18.0));

    PricingEntry per_call{"m", 0.0, 0.0, 0.01};
    CHECK(compute_cost(TokenUsage{0, 0, 2}, per_call) == doctest::Approx(0.02));
}

TEST_CASE("cost is linear in usage when per-call pricing is off") {
    std::mt19937 rng(9);
    for (int i = 0; i < 100; ++i) {
        PricingEntry pricing{"m",
                             std::uniform_real_distribution<double>(0, 20)(rng),
                             std::uniform_real_distribution<double>(0, 20)(rng), 0.0};
        TokenUsage usage{std::uniform_int_distribution<std::int64_t>(0, 100000)(rng),
                         std::uniform_int_distribution<std::int64_t>(0, 100000)(rng), 1};
        int k = std::uniform_int_distribution<int>(1, 7)(rng);
        TokenUsage scaled{usage.input_tokens * k, usage.output_tokens * k, usage.api_calls};
        CHECK(compute_cost(scaled, pricing) ==
              doctest::Approx(k * compute_cost(usage, pricing)).epsilon(1e-12));
    }
}

TEST_CASE("aggregation over repeated runs") {
    MetricPoint p{0.5, 2.0, 0.001};
    RunStats single = aggregate_runs({p});
    CHECK(single.n == 1);
    CHECK(single.quality.mean == doctest::Approx(0.5));
    CHECK(single.quality.std == 0.0);
    CHECK(single.time_seconds.min == doctest::Approx(2.0));
    CHECK(single.time_seconds.max == doctest::Approx(2.0));

    RunStats two = aggregate_runs({MetricPoint{0, 1.0, 0}, MetricPoint{0, 3.0, 0}});
    CHECK(two.time_seconds.mean == doctest::Approx(2.0));
    CHECK(two.time_seconds.std == doctest::Approx(std::sqrt(2.0)));
    CHECK(two.time_seconds.min == doctest::Approx(1.0));
    CHECK(two.time_seconds.max == doctest::Approx(3.0));

    CHECK_THROWS_AS(aggregate_runs({}), EmptySample);
}

TEST_CASE("aggregation is permutation invariant") {
    std::mt19937 rng(10);
    std::vector<MetricPoint> points;
    for (int i = 0; i < 12; ++i)
        points.push_back({std::uniform_real_distribution<double>(0, 1)(rng),
                          std::uniform_real_distribution<double>(0.1, 60)(rng),
                          std::uniform_real_distribution<double>(0, 2)(rng)});
    RunStats base = aggregate_runs(points);
    for (int round = 0; round < 10; ++round) {
        std::shuffle(points.begin(), points.end(), rng);
        RunStats shuffled = aggregate_runs(points);
        CHECK(shuffled.quality.mean == doctest::Approx(base.quality.mean));
        CHECK(shuffled.quality.std == doctest::Approx(base.quality.std));
        CHECK(shuffled.cost_usd.min == doctest::Approx(base.cost_usd.min));
        CHECK(shuffled.time_seconds.max == doctest::Approx(base.time_seconds.max));
    }
}

TEST_CASE("constant samples have zero spread") {
    std::vector<MetricPoint> constant(5, MetricPoint{0.7, 1.5, 0.02});
    RunStats stats = aggregate_runs(constant);
    CHECK(stats.quality.std == doctest::Approx(0.0));
    CHECK(stats.quality.mean == doctest::Approx(0.7));
    CHECK(stats.cost_usd.min == stats.cost_usd.max);
}
