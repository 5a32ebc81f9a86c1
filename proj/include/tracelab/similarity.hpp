#pragma once

#include <span>
#include <vector>

#include "tracelab/trace.hpp"

namespace tracelab {

inline constexpr std::int32_t kOffline = -1;

// Periodic snapshots of one node's association, spanning its existence time.
// Cell i holds the location index at instant origin + i*step, or kOffline.
struct SnapshotGrid {
    TimePoint origin = 0;
    TimePoint step = 60;
    std::vector<std::int32_t> cells;
};

// Grids for every node; nodes without stays get empty grids.
std::vector<SnapshotGrid> build_grids(const Trace& trace, TimePoint step);
SnapshotGrid build_grid(const Timeline& timeline, TimePoint step);

// Fraction of snapshot pairs (i, i+gap/step) where the node sits at the same
// location in both; pairs with an offline cell count in the denominator but
// never match. Throws GapTooLarge when the gap leaves no pairs.
double location_similarity(const SnapshotGrid& grid, TimePoint gap);

struct NsiPoint {
    TimePoint gap = 0;
    double nsi = 0.0;
    std::uint32_t node_count = 0;   // nodes admitting this gap
    std::uint64_t pair_count = 0;   // total snapshot pairs across those nodes
};

// Unweighted mean of location_similarity over every node whose grid admits
// the gap.
std::vector<NsiPoint> nsi(std::span<const SnapshotGrid> grids,
                          std::span<const TimePoint> gaps);

}  // namespace tracelab
