#pragma once

#include <span>
#include <vector>

#include "tracelab/trace.hpp"

namespace tracelab {

// Maximal interval during which two nodes sat at the same location
// simultaneously. Canonical order a < b; a pair that hands off together
// produces one event per location.
struct EncounterEvent {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    std::uint32_t location = 0;
    Interval interval;

    friend bool operator==(const EncounterEvent&, const EncounterEvent&) = default;
};

// Sweep over per-location stay lists. Output sorted by
// (start, end, a, b, location).
std::vector<EncounterEvent> extract_encounters(const Trace& trace);

// Events whose intersection with the window is positive, clipped to it.
std::vector<EncounterEvent> clip_events(std::span<const EncounterEvent> events,
                                        Interval window);
// Node ids whose timeline overlaps the window, sorted.
std::vector<std::uint32_t> nodes_in_window(const Trace& trace, Interval window);

struct PairAggregate {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    std::uint64_t event_count = 0;
    TimePoint total_duration = 0;
    std::vector<std::uint32_t> locations;  // distinct, sorted
};

struct NodeEncounterStats {
    std::uint32_t node = 0;
    std::uint32_t unique_count = 0;
    std::uint64_t total_count = 0;
    double unique_fraction = 0.0;  // unique / (population - 1)
};

struct EncounterSummary {
    std::vector<PairAggregate> pairs;       // sorted by (a, b)
    std::vector<NodeEncounterStats> nodes;  // one per population node
    std::uint32_t population = 0;
};

EncounterSummary aggregate_pairs(std::span<const EncounterEvent> events,
                                 std::span<const std::uint32_t> population_nodes);

// Directional friendship indexes for an ordered pair that encountered at
// least once: shared time over the observer's online time, sessions with a
// shared event over the observer's session count, shared locations over the
// locations the observer visits.
struct FriendshipRow {
    std::uint32_t from = 0;
    std::uint32_t to = 0;
    double frd_t = 0.0;
    double frd_c = 0.0;
    double frd_l = 0.0;
};

std::vector<FriendshipRow> friendship(std::span<const EncounterEvent> events,
                                      const Trace& trace,
                                      const std::vector<std::vector<Session>>& sessions_per_node);

struct AsymmetryResult {
    double r_time = 0.0;
    double r_count = 0.0;
    double r_location = 0.0;
    std::uint32_t pair_count = 0;  // unordered pairs entering the correlation
};

// Pearson correlation between the two directions of each friendship
// dimension over unordered pairs. Throws DegenerateVariance on a constant
// vector and UsageError when fewer than two pairs are available.
AsymmetryResult friendship_asymmetry(std::span<const FriendshipRow> rows);

}  // namespace tracelab
