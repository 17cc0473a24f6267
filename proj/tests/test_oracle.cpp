#include <catch2/catch_amalgamated.hpp>

#include "flexband/aggregation.hpp"
#include "flexband/oracle.hpp"
#include "support/example_cases.hpp"
#include "support/random_cases.hpp"

using namespace flexband;

namespace {
GridSpec grid() { return GridSpec{0.05, 0.05}; }
} // namespace

TEST_CASE("sound bands pass the backward SoC-set recursion") {
    for (const Case& c : {fixtures::example1(), fixtures::example2(), fixtures::example3()}) {
        AggregationResult enm = solve_enumeration(c);
        CHECK(verify_band(c, enm.band, grid(), Rounding::Optimistic));
        AggregationResult env = solve_envelope(c);
        CHECK(verify_band(c, env.band, grid(), Rounding::Optimistic));
    }
}

TEST_CASE("anticipative bands are rejected") {
    const Case c2 = fixtures::example2();
    AggregationResult two = solve_two_stage(c2);
    CHECK_FALSE(verify_band(c2, two.band, grid(), Rounding::Optimistic));

    // widening a sound band beyond the feasible range must also fail
    const Case c3 = fixtures::example3();
    AggregationResult enm = solve_enumeration(c3);
    FlexBand wide = enm.band;
    for (int t = 0; t < c3.periods; ++t) wide.upper[t] += 1.0;
    CHECK_FALSE(verify_band(c3, wide, grid(), Rounding::Optimistic));
}

TEST_CASE("rounding directions bracket the truth") {
    const Case c = fixtures::example3();
    AggregationResult enm = solve_enumeration(c);
    // conservative acceptance implies optimistic acceptance
    if (verify_band(c, enm.band, grid(), Rounding::Conservative))
        CHECK(verify_band(c, enm.band, grid(), Rounding::Optimistic));
}

TEST_CASE("grid band search brackets the multistage optimum") {
    for (const Case& c : {fixtures::example1(), fixtures::example3()}) {
        const double exact = solve_enumeration(c).objective;
        GridSearchResult r = grid_band_search(c, c.weights, grid());
        CHECK(r.conservative <= exact + r.error_bound);
        CHECK(r.optimistic >= exact - r.error_bound);
        CHECK(std::abs(exact - r.conservative) <= r.error_bound);
        // the conservative maximizer is itself a certified band
        CHECK(verify_band(c, r.band, grid(), Rounding::Optimistic));
    }
}

TEST_CASE("grid band search agrees on random tiny cases") {
    for (std::uint64_t seed = 300; seed < 305; ++seed) {
        const Case c = fixtures::random_tiny_case(seed);
        const double exact = solve_enumeration(c).objective;
        GridSearchResult r = grid_band_search(c, c.weights, grid());
        INFO("seed " << seed);
        CHECK(std::abs(exact - r.conservative) <= r.error_bound);
    }
}

TEST_CASE("oracle preconditions are enforced") {
    Case c = fixtures::example3();
    FlexBand band = solve_enumeration(c).band;
    GridSpec g = grid();
    g.soc_step = 0.0;
    CHECK_THROWS_AS(backward_soc_sets(c, band, g), ValidationError);

    CHECK_THROWS_AS(grid_band_search(fixtures::example2(), {1.0}, grid()), ValidationError);

    Case many = fixtures::example1();
    many.esses.push_back(many.esses[0]);
    many.esses.push_back(many.esses[0]);
    CHECK_THROWS_AS(backward_soc_sets(many, band, grid()), ValidationError);
}
