#include <catch2/catch_amalgamated.hpp>

#include "flexband/case.hpp"
#include "support/example_cases.hpp"
#include "support/random_cases.hpp"

using namespace flexband;

TEST_CASE("shipped example fixtures validate") {
    CHECK_NOTHROW(validate_case(fixtures::example1()));
    CHECK_NOTHROW(validate_case(fixtures::example2()));
    CHECK_NOTHROW(validate_case(fixtures::example3()));
}

TEST_CASE("validation names the offending field") {
    Case c = fixtures::example2();

    SECTION("bad horizon") {
        c.periods = 0;
        CHECK_THROWS_MATCHES(validate_case(c), ValidationError,
                             Catch::Matchers::MessageMatches(
                                 Catch::Matchers::ContainsSubstring("periods")));
    }
    SECTION("weight count must match periods") {
        c.weights.pop_back();
        CHECK_THROWS_AS(validate_case(c), ValidationError);
    }
    SECTION("negative weight") {
        c.weights[0] = -1.0;
        CHECK_THROWS_MATCHES(validate_case(c), ValidationError,
                             Catch::Matchers::MessageMatches(
                                 Catch::Matchers::ContainsSubstring("weights[1]")));
    }
    SECTION("device on a nonexistent node") {
        c.gens[0].node = 9;
        CHECK_THROWS_MATCHES(validate_case(c), ValidationError,
                             Catch::Matchers::MessageMatches(
                                 Catch::Matchers::ContainsSubstring("gens[0]")));
    }
    SECTION("line self-loop") {
        c.lines[0].to = 1;
        CHECK_THROWS_AS(validate_case(c), ValidationError);
    }
    SECTION("crossed load bounds") {
        c.loads[0].p_min[1] = 1.0;
        CHECK_THROWS_MATCHES(validate_case(c), ValidationError,
                             Catch::Matchers::MessageMatches(
                                 Catch::Matchers::ContainsSubstring("period 2")));
    }
    SECTION("ESS efficiency outside (0, 1]") {
        c.esses[0].eta_d = 1.5;
        CHECK_THROWS_MATCHES(validate_case(c), ValidationError,
                             Catch::Matchers::MessageMatches(
                                 Catch::Matchers::ContainsSubstring("eta_d")));
    }
    SECTION("initial energy outside the capacity window") {
        c.esses[0].e0 = 2.0;
        CHECK_THROWS_AS(validate_case(c), ValidationError);
    }
}

TEST_CASE("random case generator emits valid cases in the advertised ranges") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        Case c = fixtures::random_case(seed);
        CHECK(c.periods >= 2);
        CHECK(c.periods <= 6);
        CHECK(c.node_count >= 1);
        CHECK(c.node_count <= 5);
        CHECK(!c.esses.empty());
        CHECK(c.esses.size() <= 3);
        CHECK_NOTHROW(validate_case(c));
    }
}
