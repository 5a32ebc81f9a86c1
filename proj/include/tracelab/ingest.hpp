#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tracelab/trace.hpp"

namespace tracelab {

// One periodic observation: node was associated with location at this instant.
struct PollSample {
    TimePoint time = 0;
    std::string node;
    std::string location;

    friend bool operator==(const PollSample&, const PollSample&) = default;
};

// How long a poll observation is assumed to hold. Conservative keeps a node
// with the AP only until the next expected epoch; relaxed keeps it for four
// polling intervals unless a later sample says otherwise.
struct PollingPolicy {
    TimePoint interval = 300;
    int hold_multiplier = 1;

    static PollingPolicy conservative(TimePoint interval) { return {interval, 1}; }
    static PollingPolicy relaxed(TimePoint interval) { return {interval, 4}; }
};

// Event trace CSV: header "node,location,start,end", integer seconds.
// Throws MalformedLine / NegativeDuration with the offending line number.
std::vector<AssociationRecord> parse_event_trace(std::istream& in);
void write_event_trace(std::ostream& out, std::span<const AssociationRecord> records);

// Poll trace CSV: header "time,node,location". Output is sorted by
// (node, time) with exact duplicates removed; a node observed at two
// locations in the same epoch is a ConflictingAssociation.
std::vector<PollSample> parse_poll_trace(std::istream& in);
void write_poll_trace(std::ostream& out, std::span<const PollSample> samples);

// Expands each sample into a provisional stay of hold_multiplier x interval
// seconds, truncated at the node's next sample, then merges same-location
// overlap/adjacency.
std::vector<AssociationRecord> reconstruct_from_polls(std::span<const PollSample> samples,
                                                      const PollingPolicy& policy);

// Observes an event trace at epochs 0, interval, 2*interval, ... and emits
// what a polling collector would have recorded. Stays are end-exclusive, so
// a stay ending exactly on an epoch is not sampled there.
std::vector<PollSample> emulate_polling(const std::vector<AssociationRecord>& records,
                                        TimePoint interval);

}  // namespace tracelab
