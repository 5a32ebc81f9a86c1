#pragma once

#include <span>
#include <vector>

#include "tracelab/trace.hpp"

namespace tracelab {

struct UserMetricRow {
    std::uint32_t node = 0;
    double online_fraction = 0.0;
    std::uint32_t session_count = 0;
    double coverage = 0.0;
    std::uint32_t handoff_total = 0;
    double handoffs_per_session = 0.0;
};

// One row per node: online-time fraction, session count, coverage over the
// trace's location universe, handoff totals. Throws EmptyTrace.
std::vector<UserMetricRow> compute_user_metrics(
    const Trace& trace, const std::vector<std::vector<Session>>& sessions_per_node);

struct PrevalencePoint {
    std::uint32_t rank = 0;       // 1-based
    double mean_fraction = 0.0;   // mean over all nodes, zero-padded
    std::uint32_t node_count = 0; // nodes with at least `rank` locations
};

// Per node, online-time fractions per location sorted descending; the k-th
// output is the mean of the k-th fraction over all nodes (0 when a node has
// fewer than k locations).
std::vector<PrevalencePoint> prevalence_curve(const Trace& trace, std::uint32_t max_rank);

struct CcdfPoint {
    double x = 0.0;
    double prob = 0.0;  // P(value > x)
};

struct CcdfTable {
    std::vector<CcdfPoint> points;  // ascending x, one per distinct value
};

// Empirical complementary CDF evaluated at each distinct value. Throws
// EmptyInput.
CcdfTable ccdf(std::span<const double> values);

}  // namespace tracelab
