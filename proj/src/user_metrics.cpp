#include "tracelab/user_metrics.hpp"

#include <algorithm>

#include "tracelab/errors.hpp"

namespace tracelab {

std::vector<UserMetricRow> compute_user_metrics(
    const Trace& trace, const std::vector<std::vector<Session>>& sessions_per_node) {
    if (trace.node_count() == 0) throw EmptyTrace("no nodes in trace");

    const double universe = static_cast<double>(trace.location_count());
    std::vector<UserMetricRow> rows;
    rows.reserve(trace.node_count());
    for (std::uint32_t n = 0; n < trace.node_count(); ++n) {
        if (sessions_per_node[n].empty()) continue;
        NodeAccounting acc = account(sessions_per_node[n]);
        UserMetricRow row;
        row.node = n;
        row.online_fraction = acc.online_fraction();
        row.session_count = acc.session_count;
        row.coverage = static_cast<double>(trace.visited_locations(n).size()) / universe;
        row.handoff_total = acc.handoff_total;
        row.handoffs_per_session =
            static_cast<double>(acc.handoff_total) / static_cast<double>(acc.session_count);
        rows.push_back(row);
    }
    if (rows.empty()) throw EmptyTrace("no node has any session");
    return rows;
}

std::vector<PrevalencePoint> prevalence_curve(const Trace& trace, std::uint32_t max_rank) {
    std::vector<PrevalencePoint> points(max_rank);
    for (std::uint32_t r = 0; r < max_rank; ++r) points[r].rank = r + 1;

    std::size_t node_total = 0;
    for (std::uint32_t n = 0; n < trace.node_count(); ++n) {
        const Timeline& tl = trace.timeline(n);
        if (tl.empty()) continue;
        ++node_total;

        std::vector<TimePoint> per_location(trace.location_count(), 0);
        for (const Stay& s : tl.stays()) per_location[s.location] += s.interval.length();
        std::vector<double> fractions;
        const double online = static_cast<double>(tl.total_online());
        for (TimePoint t : per_location) {
            if (t > 0) fractions.push_back(static_cast<double>(t) / online);
        }
        std::sort(fractions.begin(), fractions.end(), std::greater<>());

        for (std::uint32_t r = 0; r < max_rank && r < fractions.size(); ++r) {
            points[r].mean_fraction += fractions[r];
            ++points[r].node_count;
        }
    }
    if (node_total > 0) {
        for (auto& p : points) p.mean_fraction /= static_cast<double>(node_total);
    }
    return points;
}

CcdfTable ccdf(std::span<const double> values) {
    if (values.empty()) throw EmptyInput("ccdf of an empty sample");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    CcdfTable table;
    const double n = static_cast<double>(sorted.size());
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        table.points.push_back(
            {sorted[i], static_cast<double>(sorted.size() - j) / n});
        i = j;
    }
    return table;
}

}  // namespace tracelab
