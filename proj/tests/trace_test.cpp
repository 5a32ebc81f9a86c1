#include "doctest.h"

#include "fixtures.hpp"
#include "tracelab/errors.hpp"
#include "tracelab/trace.hpp"

using namespace tracelab;

TEST_SUITE_BEGIN("trace");

TEST_CASE("t1 interning is lexicographic and input-order independent") {
    const Trace a = fixtures::t1();
    auto shuffled = fixtures::t1_records();
    std::swap(shuffled[0], shuffled[4]);
    std::swap(shuffled[1], shuffled[3]);
    const Trace b = Trace::build(shuffled);

    REQUIRE(a.node_count() == 3);
    REQUIRE(a.location_count() == 2);
    CHECK(a.node_name(0) == "A");
    CHECK(a.node_name(1) == "B");
    CHECK(a.node_name(2) == "C");
    CHECK(a.location_name(0) == "X");
    CHECK(a.location_name(1) == "Y");
    for (std::uint32_t n = 0; n < 3; ++n)
        CHECK(a.timeline(n).stays() == b.timeline(n).stays());
}

TEST_CASE("t1 timelines, sessions, accounting") {
    const Trace trace = fixtures::t1();
    const auto& a = trace.timeline(0);
    REQUIRE(a.stays().size() == 3);
    CHECK(a.stays()[0] == Stay{0, {0, 100}});
    CHECK(a.stays()[1] == Stay{1, {100, 200}});
    CHECK(a.stays()[2] == Stay{0, {300, 400}});
    CHECK(a.total_online() == 300);
    CHECK(a.existence() == 400);

    const auto sessions = derive_sessions(a);
    REQUIRE(sessions.size() == 2);
    CHECK(sessions[0].interval == Interval{0, 200});
    CHECK(sessions[0].handoffs() == 1);
    CHECK(sessions[1].interval == Interval{300, 400});
    CHECK(sessions[1].handoffs() == 0);

    const NodeAccounting acc = account(sessions);
    CHECK(acc.total_online == 300);
    CHECK(acc.existence == 400);
    CHECK(acc.session_count == 2);
    CHECK(acc.handoff_total == 1);
    CHECK(acc.online_fraction() == doctest::Approx(0.75).epsilon(1e-12));

    CHECK(trace.span() == Interval{0, 600});
    CHECK(trace.visited_locations(0) == std::vector<std::uint32_t>{0, 1});
    CHECK(trace.visited_locations(1) == std::vector<std::uint32_t>{0});
}

TEST_CASE("same-location overlap merges, adjacency chains") {
    const Trace t = Trace::build({
        {"A", "X", {0, 60}},
        {"A", "X", {30, 90}},   // overlap, same location: union
        {"A", "X", {90, 120}},  // adjacent: merged
    });
    REQUIRE(t.timeline(0).stays().size() == 1);
    CHECK(t.timeline(0).stays()[0].interval == Interval{0, 120});
}

TEST_CASE("cross-location overlap rejected") {
    CHECK_THROWS_AS(Trace::build({{"A", "X", {0, 60}}, {"A", "Y", {59, 90}}}),
                    ConflictingAssociation);
    // touching is fine: a handoff
    CHECK_NOTHROW(Trace::build({{"A", "X", {0, 60}}, {"A", "Y", {60, 90}}}));
}

TEST_CASE("invalid records rejected") {
    CHECK_THROWS_AS(Trace::build({{"A", "X", {10, 10}}}), NegativeDuration);
    CHECK_THROWS_AS(Trace::build({{"A", "X", {10, 5}}}), NegativeDuration);
    CHECK_THROWS_AS(Trace::build({{"", "X", {0, 5}}}), MalformedLine);
    CHECK_THROWS_AS(Trace::build({{"A", "", {0, 5}}}), MalformedLine);
}

TEST_CASE("location_at is end-exclusive") {
    const Trace t = fixtures::t1();
    const auto& a = t.timeline(0);
    CHECK(a.location_at(0) == 0u);
    CHECK(a.location_at(99) == 0u);
    CHECK(a.location_at(100) == 1u);  // handoff instant belongs to the new stay
    CHECK(a.location_at(199) == 1u);
    CHECK_FALSE(a.location_at(200).has_value());
    CHECK_FALSE(a.location_at(250).has_value());
    CHECK(a.location_at(300) == 0u);
    CHECK_FALSE(a.location_at(400).has_value());
}

TEST_CASE("to_records round trip") {
    const Trace t = fixtures::t1();
    const Trace again = Trace::build(t.to_records());
    for (std::uint32_t n = 0; n < t.node_count(); ++n)
        CHECK(t.timeline(n).stays() == again.timeline(n).stays());
}

TEST_CASE("empty sessions account rejected") {
    CHECK_THROWS_AS(account({}), EmptyInput);
}

TEST_CASE("random traces always build") {
    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        auto records = fixtures::random_records(rng, 6, 4, 5000, 8);
        CHECK_NOTHROW(Trace::build(records));
    }
}

TEST_SUITE_END();
