#include <catch2/catch_amalgamated.hpp>

#include "flexband/harness.hpp"
#include "support/example_cases.hpp"

using namespace flexband;

TEST_CASE("trajectory sampling is deterministic and stays in the band") {
    FlexBand band;
    band.lower = {-1.0, 0.0, 0.5};
    band.upper = {1.0, 0.0, 2.0};
    for (TrajectoryMode mode :
         {TrajectoryMode::Uniform, TrajectoryMode::Vertex, TrajectoryMode::Adversarial}) {
        std::vector<double> a = sample_trajectory(band, 9, mode);
        std::vector<double> b = sample_trajectory(band, 9, mode);
        CHECK(a == b);
        REQUIRE(a.size() == 3);
        for (int t = 0; t < 3; ++t) {
            CHECK(a[t] >= band.lower[t]);
            CHECK(a[t] <= band.upper[t]);
        }
        CHECK(a[1] == 0.0); // zero-width period has a unique setpoint
    }
    // vertex mode only emits endpoints
    std::vector<double> v = sample_trajectory(band, 4, TrajectoryMode::Vertex);
    for (int t = 0; t < 3; ++t) CHECK((v[t] == band.lower[t] || v[t] == band.upper[t]));
}

TEST_CASE("zero-width band yields the unique trajectory in all modes") {
    FlexBand band;
    band.lower = {0.25, -0.5};
    band.upper = {0.25, -0.5};
    for (TrajectoryMode mode :
         {TrajectoryMode::Uniform, TrajectoryMode::Vertex, TrajectoryMode::Adversarial})
        CHECK(sample_trajectory(band, 123, mode) == std::vector<double>{0.25, -0.5});
}

TEST_CASE("uniform sampling has the right per-period mean") {
    FlexBand band;
    band.lower = {0.0, 0.0};
    band.upper = {1.0, 1.0};
    std::vector<double> sum(2, 0.0);
    const int n = 10000;
    for (int k = 0; k < n; ++k) {
        std::vector<double> traj = sample_trajectory(band, 1000 + k, TrajectoryMode::Uniform);
        for (int t = 0; t < 2; ++t) sum[t] += traj[t];
    }
    for (int t = 0; t < 2; ++t) {
        CHECK(sum[t] / n >= 0.48);
        CHECK(sum[t] / n <= 0.52);
    }
}

TEST_CASE("comparison report re-asserts the ordering chain and scores strategies") {
    const Case c = fixtures::example3();
    ComparisonReport rep = run_comparison(
        c, {"envelope", "single-ess", "rectangular", "enumeration", "two-stage", "outer"},
        {"envelope", "rectangular", "enumeration"}, 20, 7);

    REQUIRE(rep.models.size() == 6);
    auto objective = [&](const char* model) {
        for (const auto& m : rep.models)
            if (m.model == model) return m.objective;
        FAIL("model missing from report");
        return 0.0;
    };
    CHECK(objective("envelope") == Catch::Approx(4.0).margin(1e-6));
    CHECK(objective("single-ess") == Catch::Approx(5.0).margin(1e-6));
    CHECK(objective("rectangular") == Catch::Approx(5.0).margin(1e-6));
    CHECK(objective("enumeration") == Catch::Approx(5.0).margin(1e-6));
    CHECK(objective("two-stage") == Catch::Approx(6.0).margin(1e-6));
    CHECK(objective("outer") == Catch::Approx(6.0).margin(1e-6));

    // every nonanticipative strategy completes all trajectories off its own band
    REQUIRE(rep.strategies.size() == 3);
    for (const auto& s : rep.strategies) {
        CHECK(s.trajectories == 20);
        CHECK(s.feasibility_rate == 1.0);
        CHECK(s.avg_cost <= s.avg_baseline_cost + 1e-9);
    }

    // the sample band is the per-period intersection of the inner bands
    for (int t = 0; t < c.periods; ++t)
        CHECK(rep.sample_band.lower[t] <= rep.sample_band.upper[t] + 1e-9);
}

TEST_CASE("aggregation-only report skips trajectory scoring") {
    ComparisonReport rep = run_comparison(fixtures::example2(), {"enumeration"}, {}, 0, 1);
    REQUIRE(rep.models.size() == 1);
    CHECK(rep.strategies.empty());
}

TEST_CASE("unknown model and strategy names are rejected") {
    CHECK_THROWS_AS(solve_model(fixtures::example1(), "inner"), ValidationError);
    CHECK_THROWS_AS(strategy_from_name("cheapest"), ValidationError);
}
