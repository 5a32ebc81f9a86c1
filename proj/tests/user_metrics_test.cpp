#include "doctest.h"

#include "fixtures.hpp"
#include "tracelab/errors.hpp"
#include "tracelab/user_metrics.hpp"

using namespace tracelab;

TEST_SUITE_BEGIN("user_metrics");

TEST_CASE("t1 per-user metrics") {
    const Trace trace = fixtures::t1();
    const auto rows = compute_user_metrics(trace, derive_all_sessions(trace));
    REQUIRE(rows.size() == 3);

    CHECK(rows[0].node == 0);
    CHECK(rows[0].online_fraction == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(rows[0].session_count == 2);
    CHECK(rows[0].coverage == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rows[0].handoff_total == 1);
    CHECK(rows[0].handoffs_per_session == doctest::Approx(0.5).epsilon(1e-12));

    CHECK(rows[1].online_fraction == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rows[1].coverage == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rows[1].session_count == 1);
    CHECK(rows[1].handoff_total == 0);

    CHECK(rows[2].coverage == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("empty trace rejected") {
    const Trace empty = Trace::build({});
    CHECK_THROWS_AS(compute_user_metrics(empty, derive_all_sessions(empty)), EmptyTrace);
}

TEST_CASE("prevalence: single node, two locations") {
    // A alone: 2/3 of online time at X, 1/3 at Y.
    const Trace t = Trace::build({
        {"A", "X", {0, 100}}, {"A", "Y", {100, 200}}, {"A", "X", {300, 400}},
    });
    const auto curve = prevalence_curve(t, 3);
    REQUIRE(curve.size() == 3);
    CHECK(curve[0].rank == 1);
    CHECK(curve[0].mean_fraction == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(curve[0].node_count == 1);
    CHECK(curve[1].mean_fraction == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(curve[1].node_count == 1);
    CHECK(curve[2].mean_fraction == doctest::Approx(0.0));
    CHECK(curve[2].node_count == 0);
}

TEST_CASE("prevalence fractions sum to one per rank sweep") {
    Rng rng(3);
    const Trace t = Trace::build(fixtures::random_records(rng, 6, 5, 4000, 6));
    const auto curve = prevalence_curve(t, 8);
    double total = 0.0;
    for (const auto& p : curve) total += p.mean_fraction;
    // zero-padded means over all nodes: ranks sum to exactly 1 per node
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("ccdf of a small sample") {
    const std::vector<double> values{1.0, 1.0, 2.0};
    const auto table = ccdf(values);
    REQUIRE(table.points.size() == 2);
    CHECK(table.points[0].x == 1.0);
    CHECK(table.points[0].prob == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(table.points[1].x == 2.0);
    CHECK(table.points[1].prob == 0.0);
}

TEST_CASE("ccdf rejects empty input and is monotone") {
    CHECK_THROWS_AS(ccdf({}), EmptyInput);
    Rng rng(5);
    std::vector<double> values;
    for (int i = 0; i < 200; ++i) values.push_back(static_cast<double>(rng.uniform_int(0, 20)));
    const auto table = ccdf(values);
    for (std::size_t i = 1; i < table.points.size(); ++i) {
        CHECK(table.points[i].x > table.points[i - 1].x);
        CHECK(table.points[i].prob < table.points[i - 1].prob);
    }
    CHECK(table.points.back().prob == 0.0);
}

TEST_SUITE_END();
