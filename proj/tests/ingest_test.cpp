#include <sstream>

#include "doctest.h"

#include "fixtures.hpp"
#include "tracelab/errors.hpp"
#include "tracelab/ingest.hpp"

using namespace tracelab;

TEST_SUITE_BEGIN("ingest");

TEST_CASE("event trace parse and write round trip") {
    std::ostringstream out;
    const auto records = fixtures::t1_records();
    write_event_trace(out, records);
    std::istringstream in(out.str());
    const auto back = parse_event_trace(in);
    REQUIRE(back.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(back[i].node == records[i].node);
        CHECK(back[i].location == records[i].location);
        CHECK(back[i].interval == records[i].interval);
    }
}

TEST_CASE("event trace parse errors carry line numbers") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return parse_event_trace(in);
    };
    CHECK_THROWS_AS(parse("bogus\n"), MalformedLine);
    CHECK_THROWS_AS(parse("node,location,start,end\nA,X,zero,100\n"), MalformedLine);
    CHECK_THROWS_AS(parse("node,location,start,end\nA,X,5\n"), MalformedLine);
    CHECK_THROWS_AS(parse("node,location,start,end\nA,X,100,100\n"), NegativeDuration);
    CHECK_THROWS_WITH_AS(parse("node,location,start,end\nA,X,0,50\nB,Y,9,bad\n"),
                         doctest::Contains("line 3"), MalformedLine);
    // CRLF and blank lines tolerated
    CHECK(parse("node,location,start,end\r\nA,X,0,50\r\n\r\n").size() == 1);
}

TEST_CASE("poll trace parse sorts, dedupes, rejects conflicts") {
    std::istringstream in("time,node,location\n600,A,X\n0,A,X\n0,A,X\n300,B,Y\n");
    const auto samples = parse_poll_trace(in);
    REQUIRE(samples.size() == 3);
    CHECK(samples[0] == PollSample{0, "A", "X"});
    CHECK(samples[1] == PollSample{600, "A", "X"});
    CHECK(samples[2] == PollSample{300, "B", "Y"});

    std::istringstream bad("time,node,location\n0,A,X\n0,A,Y\n");
    CHECK_THROWS_AS(parse_poll_trace(bad), ConflictingAssociation);
    std::istringstream neg("time,node,location\n-5,A,X\n");
    CHECK_THROWS_AS(parse_poll_trace(neg), MalformedLine);
}

TEST_CASE("reconstruction: conservative holds one interval") {
    // samples at 0 and 60 with interval 60: one merged stay [0,120)
    const std::vector<PollSample> samples{{0, "A", "X"}, {60, "A", "X"}};
    const auto records = reconstruct_from_polls(samples, PollingPolicy::conservative(60));
    REQUIRE(records.size() == 1);
    CHECK(records[0].location == "X");
    CHECK(records[0].interval == Interval{0, 120});
}

TEST_CASE("reconstruction: relaxed holds four intervals") {
    const std::vector<PollSample> samples{{0, "A", "X"}, {60, "A", "X"}};
    const auto records = reconstruct_from_polls(samples, PollingPolicy::relaxed(60));
    REQUIRE(records.size() == 1);
    CHECK(records[0].interval == Interval{0, 300});  // 60 + 4*60
}

TEST_CASE("reconstruction truncates at the next sample") {
    const std::vector<PollSample> samples{{0, "A", "X"}, {60, "A", "Y"}};
    const auto records = reconstruct_from_polls(samples, PollingPolicy::relaxed(60));
    REQUIRE(records.size() == 2);
    CHECK(records[0].location == "X");
    CHECK(records[0].interval == Interval{0, 60});
    CHECK(records[1].location == "Y");
    CHECK(records[1].interval == Interval{60, 300});
}

TEST_CASE("reconstruction validates policy") {
    CHECK_THROWS_AS(reconstruct_from_polls({}, PollingPolicy{0, 1}), UsageError);
    CHECK_THROWS_AS(reconstruct_from_polls({}, PollingPolicy{60, 0}), UsageError);
}

TEST_CASE("emulate-polling samples end-exclusive epochs") {
    const std::vector<AssociationRecord> records{{"A", "X", {0, 100}}};
    const auto samples = emulate_polling(records, 60);
    REQUIRE(samples.size() == 2);
    CHECK(samples[0].time == 0);
    CHECK(samples[1].time == 60);

    const std::vector<AssociationRecord> exact{{"A", "X", {0, 60}}};
    const auto only_one = emulate_polling(exact, 60);
    REQUIRE(only_one.size() == 1);  // stay ends exactly on the epoch
    CHECK(only_one[0].time == 0);
}

TEST_CASE("emulate-polling epochs are anchored at zero") {
    const std::vector<AssociationRecord> records{{"A", "X", {90, 200}}};
    const auto samples = emulate_polling(records, 60);
    REQUIRE(samples.size() == 2);
    CHECK(samples[0].time == 120);
    CHECK(samples[1].time == 180);
}

TEST_CASE("relaxed online time dominates conservative; coverage identical") {
    Rng rng(11);
    for (int iter = 0; iter < 200; ++iter) {
        // random poll stream on a grid: per node increasing times
        std::vector<PollSample> samples;
        const int nodes = static_cast<int>(rng.uniform_int(1, 4));
        for (int n = 0; n < nodes; ++n) {
            TimePoint t = rng.uniform_int(0, 5) * 300;
            const int k = static_cast<int>(rng.uniform_int(1, 12));
            for (int i = 0; i < k; ++i) {
                samples.push_back({t, "n" + std::to_string(n),
                                   "L" + std::to_string(rng.uniform_int(0, 3))});
                t += rng.uniform_int(1, 6) * 300;
            }
        }
        const auto cons = Trace::build(reconstruct_from_polls(samples, PollingPolicy::conservative(300)));
        const auto rel = Trace::build(reconstruct_from_polls(samples, PollingPolicy::relaxed(300)));
        REQUIRE(cons.node_count() == rel.node_count());
        for (std::uint32_t n = 0; n < cons.node_count(); ++n) {
            CHECK(rel.timeline(n).total_online() >= cons.timeline(n).total_online());
            CHECK(cons.visited_locations(n) == rel.visited_locations(n));
        }
    }
}

TEST_SUITE_END();
