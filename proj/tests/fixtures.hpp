#pragma once

#include <string>
#include <vector>

#include "tracelab/rng.hpp"
#include "tracelab/trace.hpp"

namespace fixtures {

// Three nodes, two locations. A and B overlap at X for [50,100); C is alone
// at Y much later. Interned ids: A=0, B=1, C=2; X=0, Y=1.
inline std::vector<tracelab::AssociationRecord> t1_records() {
    return {
        {"A", "X", {0, 100}},  {"A", "Y", {100, 200}}, {"A", "X", {300, 400}},
        {"B", "X", {50, 150}}, {"C", "Y", {500, 600}},
    };
}

inline tracelab::Trace t1() { return tracelab::Trace::build(t1_records()); }

// Valid-by-construction random trace: per node a forward walk of stays with
// non-negative gaps, so no node ever sits at two locations at once.
inline std::vector<tracelab::AssociationRecord> random_records(tracelab::Rng& rng,
                                                               int node_count, int loc_count,
                                                               tracelab::TimePoint horizon,
                                                               int max_stays) {
    std::vector<tracelab::AssociationRecord> records;
    for (int n = 0; n < node_count; ++n) {
        const std::string node = "n" + std::to_string(n);
        tracelab::TimePoint t = rng.uniform_int(0, horizon / 4);
        const int stays = static_cast<int>(rng.uniform_int(0, max_stays));
        for (int s = 0; s < stays && t < horizon; ++s) {
            const tracelab::TimePoint len = rng.uniform_int(1, horizon / 8 + 1);
            const tracelab::TimePoint end = std::min<tracelab::TimePoint>(t + len, horizon);
            const std::string loc = "L" + std::to_string(rng.uniform_int(0, loc_count - 1));
            records.push_back({node, loc, {t, end}});
            t = end;
            if (rng.bernoulli(0.5)) t += rng.uniform_int(1, horizon / 8 + 1);  // gap or handoff
        }
    }
    return records;
}

}  // namespace fixtures
