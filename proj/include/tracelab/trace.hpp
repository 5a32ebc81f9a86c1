#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tracelab/time_types.hpp"

namespace tracelab {

// One row of the canonical event-format trace: node n sat at location l for
// [start, end). Names are opaque tokens (anonymized MACs, AP names, ports).
struct AssociationRecord {
    std::string node;
    std::string location;
    Interval interval;
};

// A stay inside an interned timeline.
struct Stay {
    std::uint32_t location = 0;
    Interval interval;

    friend bool operator==(const Stay&, const Stay&) = default;
};

// Per-node view of the trace: stays sorted by start, pairwise disjoint,
// adjacent same-location stays merged at construction.
class Timeline {
public:
    const std::vector<Stay>& stays() const { return stays_; }
    bool empty() const { return stays_.empty(); }
    TimePoint first_online() const { return stays_.front().interval.start; }
    TimePoint last_offline() const { return stays_.back().interval.end; }
    TimePoint existence() const { return last_offline() - first_online(); }
    TimePoint total_online() const;
    // Location index at instant t (end-exclusive), or nullopt when offline.
    std::optional<std::uint32_t> location_at(TimePoint t) const;

private:
    friend class Trace;
    std::vector<Stay> stays_;
};

// Maximal gap-free run of stays: an online event, any number of handoffs,
// then an offline event.
struct Session {
    Interval interval;
    std::uint32_t first_stay = 0;  // index into the owning timeline's stays
    std::uint32_t stay_count = 0;
    std::uint32_t handoffs() const { return stay_count - 1; }
};

struct NodeAccounting {
    TimePoint total_online = 0;
    TimePoint existence = 0;
    std::uint32_t session_count = 0;
    std::uint32_t handoff_total = 0;
    double online_fraction() const {
        return static_cast<double>(total_online) / static_cast<double>(existence);
    }
};

// Interned, immutable trace. Node and location indexes are assigned in
// lexicographic name order, so the in-memory form is independent of record
// input order.
class Trace {
public:
    // build_timelines: validates records, merges same-location overlap and
    // adjacency, rejects one node at two locations at the same instant.
    // Throws ConflictingAssociation, NegativeDuration.
    static Trace build(const std::vector<AssociationRecord>& records);

    std::size_t node_count() const { return node_names_.size(); }
    std::size_t location_count() const { return location_names_.size(); }
    const std::string& node_name(std::uint32_t id) const { return node_names_[id]; }
    const std::string& location_name(std::uint32_t id) const { return location_names_[id]; }
    std::optional<std::uint32_t> find_node(std::string_view name) const;
    const Timeline& timeline(std::uint32_t node) const { return timelines_[node]; }
    const std::vector<Timeline>& timelines() const { return timelines_; }

    // [earliest stay start, latest stay end); {0,0} for an empty trace.
    Interval span() const;
    // Distinct locations a node visits, sorted.
    std::vector<std::uint32_t> visited_locations(std::uint32_t node) const;
    // Round-trips the trace back to records (sorted by node, start).
    std::vector<AssociationRecord> to_records() const;

private:
    std::vector<std::string> node_names_;
    std::vector<std::string> location_names_;
    std::vector<Timeline> timelines_;
};

// Splits a timeline into sessions at positive time gaps.
std::vector<Session> derive_sessions(const Timeline& timeline);

// Sums one node's sessions. Throws EmptyInput when there are none.
NodeAccounting account(const std::vector<Session>& sessions);

// Sessions for every node of a trace, indexed by node id.
std::vector<std::vector<Session>> derive_all_sessions(const Trace& trace);

}  // namespace tracelab
