#pragma once

#include <vector>

#include "tracelab/trace.hpp"

namespace tracelab {

// Campus model: every node has a Zipf-weighted home location and a daily
// on-period template (wake offset + duration) repeated with jitter. Heavy
// users stay online far longer than light ones and skip fewer days. A day
// may include short excursions; each node keeps a fixed set of excursion
// venues and a preferred visit hour all term, and the excursions' total
// share of the on-period is (1 - home_weight).
struct CampusSpec {
    std::uint32_t node_count = 1000;
    std::uint32_t location_count = 100;
    std::uint32_t days = 30;
    TimePoint step = 60;       // schedule quantum, seconds
    double heavy_mix = 0.3;    // fraction of heavy users
    double home_weight = 0.8;  // share of daily online time spent at home
    TimePoint jitter = 600;    // uniform schedule jitter, seconds
    double zipf_exponent = 1.0;
    double skip_day_heavy = 0.05;
    double skip_day_light = 0.35;
    double secondary_visit_prob = 0.6;  // chance a day has excursions at all
    bool always_on = false;  // degenerate mode: home location around the clock
    std::uint64_t seed = 1;
};

// Deterministic for a given spec; records come out node-major, time
// ascending, and always satisfy the trace model. Throws InvalidSpec.
std::vector<AssociationRecord> generate(const CampusSpec& spec);

}  // namespace tracelab
