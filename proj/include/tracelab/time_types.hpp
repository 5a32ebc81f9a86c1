#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>

namespace tracelab {

// Seconds since the trace epoch. Integer on purpose: all interval logic is
// exact arithmetic.
using TimePoint = std::int64_t;

// Half-open [start, end). Valid intervals have start < end.
struct Interval {
    TimePoint start = 0;
    TimePoint end = 0;

    TimePoint length() const { return end - start; }
    bool valid() const { return start < end; }
    // End-exclusive instant membership.
    bool contains(TimePoint t) const { return t >= start && t < end; }
    bool overlaps(const Interval& o) const { return start < o.end && o.start < end; }

    friend auto operator<=>(const Interval&, const Interval&) = default;
};

// Intersection; result has length() <= 0 when the inputs do not overlap.
inline Interval intersect(const Interval& a, const Interval& b) {
    return Interval{std::max(a.start, b.start), std::min(a.end, b.end)};
}

}  // namespace tracelab
