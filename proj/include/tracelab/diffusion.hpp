#pragma once

#include <span>
#include <vector>

#include "tracelab/encounters.hpp"
#include "tracelab/trace.hpp"

namespace tracelab {

// Window-restricted contact structure shared by every run over the same
// window: clipped events, population (nodes online at some point in the
// window), and each node's first online instant.
struct DiffusionContext {
    Interval window;
    std::vector<std::uint32_t> population;   // sorted trace node ids
    std::vector<TimePoint> first_online;     // parallel to population
    struct Contact {
        std::uint32_t peer;  // dense index
        Interval when;
    };
    std::vector<std::vector<Contact>> contacts;  // dense -> contacts

    static DiffusionContext build(const Trace& trace,
                                  std::span<const EncounterEvent> events,
                                  Interval window);
    std::size_t dense_of(std::uint32_t node) const;  // throws UnknownSource
};

struct DiffusionResult {
    std::uint32_t source = 0;
    std::vector<std::uint32_t> delivered;   // sorted node ids, includes source
    std::vector<TimePoint> infected_at;     // parallel to delivered
    std::uint32_t population = 0;
    double receive_ratio = 0.0;
    double mean_delay = 0.0;  // over delivered non-source nodes, from the source's start
};

// Epidemic spread: the source is infected at its first online instant; an
// infected endpoint passes the message at max(contact start, its own
// infection time) when that instant still lies inside the contact and the
// endpoint forwards (the source always forwards its own message; selfish
// nodes receive but never relay). selfish_sorted holds trace node ids.
DiffusionResult run_epidemic(const DiffusionContext& ctx, std::uint32_t source,
                             std::span<const std::uint32_t> selfish_sorted);

struct SweepRow {
    TimePoint window_length = 0;
    double selfish_fraction = 0.0;
    double mean_receive_ratio = 0.0;
    double mean_delay = 0.0;  // mean over sources that delivered to anyone
    std::uint32_t source_count = 0;
    std::uint32_t population = 0;
};

struct RunRow {
    TimePoint window_length = 0;
    double selfish_fraction = 0.0;
    std::uint32_t source = 0;
    double receive_ratio = 0.0;
    double mean_delay = 0.0;
};

struct SweepDetail {
    std::vector<SweepRow> summary;  // one row per (window, fraction)
    std::vector<RunRow> runs;       // one row per (window, fraction, source)
};

// For each prefix window and selfish fraction: sources are the
// earliest-appearing source_fraction of the window population (at least
// one); the selfish set is the top fraction by unique encounter count, ties
// by node id.
SweepDetail sweep_selfish_detailed(const Trace& trace,
                                   std::span<const EncounterEvent> events,
                                   std::span<const TimePoint> window_lengths,
                                   std::span<const double> selfish_fractions,
                                   double source_fraction = 0.30);

std::vector<SweepRow> sweep_selfish(const Trace& trace,
                                    std::span<const EncounterEvent> events,
                                    std::span<const TimePoint> window_lengths,
                                    std::span<const double> selfish_fractions,
                                    double source_fraction = 0.30);

}  // namespace tracelab
