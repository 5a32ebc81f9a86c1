#include "tracelab/similarity.hpp"

#include <string>

#include "tracelab/errors.hpp"
#include "tracelab/kernels.hpp"
#include "tracelab/parallel.hpp"

namespace tracelab {

SnapshotGrid build_grid(const Timeline& timeline, TimePoint step) {
    if (step <= 0) throw UsageError("snapshot step must be positive");
    SnapshotGrid grid;
    grid.step = step;
    if (timeline.empty()) return grid;

    grid.origin = timeline.first_online();
    const TimePoint existence = timeline.existence();
    // Instants origin + i*step strictly inside [first_online, last_offline);
    // the instant at last_offline itself is offline by definition.
    const std::size_t cell_count = static_cast<std::size_t>((existence + step - 1) / step);
    grid.cells.assign(cell_count, kOffline);

    const auto& stays = timeline.stays();
    std::size_t stay_idx = 0;
    for (std::size_t i = 0; i < cell_count; ++i) {
        TimePoint t = grid.origin + static_cast<TimePoint>(i) * step;
        while (stay_idx < stays.size() && stays[stay_idx].interval.end <= t) ++stay_idx;
        if (stay_idx < stays.size() && stays[stay_idx].interval.contains(t)) {
            grid.cells[i] = static_cast<std::int32_t>(stays[stay_idx].location);
        }
    }
    return grid;
}

std::vector<SnapshotGrid> build_grids(const Trace& trace, TimePoint step) {
    std::vector<SnapshotGrid> grids(trace.node_count());
    parallel::parallel_for(trace.node_count(), [&](std::size_t n) {
        grids[n] = build_grid(trace.timeline(static_cast<std::uint32_t>(n)), step);
    });
    return grids;
}

double location_similarity(const SnapshotGrid& grid, TimePoint gap) {
    if (gap <= 0 || gap % grid.step != 0) {
        throw UsageError("gap must be a positive multiple of the snapshot step");
    }
    const std::size_t k = static_cast<std::size_t>(gap / grid.step);
    if (k >= grid.cells.size()) {
        throw GapTooLarge("gap " + std::to_string(gap) + "s leaves no snapshot pairs");
    }
    const std::size_t pairs = grid.cells.size() - k;
    std::size_t matches = kernels::count_colocated(
        std::span(grid.cells.data(), pairs), std::span(grid.cells.data() + k, pairs));
    return static_cast<double>(matches) / static_cast<double>(pairs);
}

std::vector<NsiPoint> nsi(std::span<const SnapshotGrid> grids,
                          std::span<const TimePoint> gaps) {
    std::vector<NsiPoint> points(gaps.size());
    parallel::parallel_for(gaps.size(), [&](std::size_t g) {
        NsiPoint& point = points[g];
        point.gap = gaps[g];
        double total = 0.0;
        for (const SnapshotGrid& grid : grids) {
            if (grid.step <= 0 || point.gap % grid.step != 0) continue;
            const std::size_t k = static_cast<std::size_t>(point.gap / grid.step);
            if (k == 0 || k >= grid.cells.size()) continue;
            total += location_similarity(grid, point.gap);
            ++point.node_count;
            point.pair_count += grid.cells.size() - k;
        }
        if (point.node_count > 0) total /= static_cast<double>(point.node_count);
        point.nsi = total;
    });
    return points;
}

}  // namespace tracelab
