#include "tracelab/encounters.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tracelab/errors.hpp"
#include "tracelab/kernels.hpp"
#include "tracelab/parallel.hpp"

namespace tracelab {

namespace {

struct LocStay {
    std::uint32_t node;
    Interval interval;
};

}  // namespace

std::vector<EncounterEvent> extract_encounters(const Trace& trace) {
    std::vector<std::vector<LocStay>> by_location(trace.location_count());
    for (std::uint32_t n = 0; n < trace.node_count(); ++n) {
        for (const Stay& s : trace.timeline(n).stays())
            by_location[s.location].push_back({n, s.interval});
    }

    std::vector<std::vector<EncounterEvent>> slots(by_location.size());
    parallel::parallel_for(by_location.size(), [&](std::size_t loc) {
        auto& stays = by_location[loc];
        std::sort(stays.begin(), stays.end(), [](const LocStay& x, const LocStay& y) {
            if (x.interval.start != y.interval.start) return x.interval.start < y.interval.start;
            if (x.interval.end != y.interval.end) return x.interval.end < y.interval.end;
            return x.node < y.node;
        });
        auto& out = slots[loc];
        std::vector<LocStay> active;
        for (const LocStay& s : stays) {
            std::erase_if(active, [&](const LocStay& t) { return t.interval.end <= s.interval.start; });
            for (const LocStay& t : active) {
                // Same-location stays of one node never overlap, so t.node != s.node.
                Interval ov{s.interval.start, std::min(s.interval.end, t.interval.end)};
                EncounterEvent ev;
                ev.a = std::min(s.node, t.node);
                ev.b = std::max(s.node, t.node);
                ev.location = static_cast<std::uint32_t>(loc);
                ev.interval = ov;
                out.push_back(ev);
            }
            active.push_back(s);
        }
    });

    std::size_t total = 0;
    for (const auto& v : slots) total += v.size();
    std::vector<EncounterEvent> events;
    events.reserve(total);
    for (auto& v : slots) events.insert(events.end(), v.begin(), v.end());

    std::sort(events.begin(), events.end(), [](const EncounterEvent& x, const EncounterEvent& y) {
        if (x.interval.start != y.interval.start) return x.interval.start < y.interval.start;
        if (x.interval.end != y.interval.end) return x.interval.end < y.interval.end;
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        return x.location < y.location;
    });
    return events;
}

std::vector<EncounterEvent> clip_events(std::span<const EncounterEvent> events,
                                        Interval window) {
    std::vector<EncounterEvent> out;
    for (const EncounterEvent& ev : events) {
        Interval ov = intersect(ev.interval, window);
        if (ov.length() <= 0) continue;
        EncounterEvent clipped = ev;
        clipped.interval = ov;
        out.push_back(clipped);
    }
    return out;
}

std::vector<std::uint32_t> nodes_in_window(const Trace& trace, Interval window) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t n = 0; n < trace.node_count(); ++n) {
        for (const Stay& s : trace.timeline(n).stays()) {
            if (s.interval.overlaps(window)) {
                out.push_back(n);
                break;
            }
            if (s.interval.start >= window.end) break;
        }
    }
    return out;
}

namespace {

// Sort order for grouping: pair first, then time.
std::vector<std::uint32_t> pair_order(std::span<const EncounterEvent> events) {
    std::vector<std::uint32_t> idx(events.size());
    std::iota(idx.begin(), idx.end(), 0u);
    std::sort(idx.begin(), idx.end(), [&](std::uint32_t i, std::uint32_t j) {
        const EncounterEvent& x = events[i];
        const EncounterEvent& y = events[j];
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        if (x.interval.start != y.interval.start) return x.interval.start < y.interval.start;
        return x.interval.end < y.interval.end;
    });
    return idx;
}

}  // namespace

EncounterSummary aggregate_pairs(std::span<const EncounterEvent> events,
                                 std::span<const std::uint32_t> population_nodes) {
    EncounterSummary summary;
    summary.population = static_cast<std::uint32_t>(population_nodes.size());
    summary.nodes.resize(population_nodes.size());
    for (std::size_t i = 0; i < population_nodes.size(); ++i)
        summary.nodes[i].node = population_nodes[i];

    auto stat_of = [&](std::uint32_t node) -> NodeEncounterStats* {
        auto it = std::lower_bound(population_nodes.begin(), population_nodes.end(), node);
        if (it == population_nodes.end() || *it != node) return nullptr;
        return &summary.nodes[static_cast<std::size_t>(it - population_nodes.begin())];
    };

    auto idx = pair_order(events);
    std::size_t i = 0;
    while (i < idx.size()) {
        const EncounterEvent& head = events[idx[i]];
        PairAggregate agg;
        agg.a = head.a;
        agg.b = head.b;
        std::size_t j = i;
        while (j < idx.size() && events[idx[j]].a == head.a && events[idx[j]].b == head.b) {
            const EncounterEvent& ev = events[idx[j]];
            ++agg.event_count;
            agg.total_duration += ev.interval.length();
            agg.locations.push_back(ev.location);
            ++j;
        }
        std::sort(agg.locations.begin(), agg.locations.end());
        agg.locations.erase(std::unique(agg.locations.begin(), agg.locations.end()),
                            agg.locations.end());
        for (std::uint32_t node : {agg.a, agg.b}) {
            if (NodeEncounterStats* st = stat_of(node)) {
                st->unique_count += 1;
                st->total_count += agg.event_count;
            }
        }
        summary.pairs.push_back(std::move(agg));
        i = j;
    }

    const double denom = population_nodes.size() > 1
                             ? static_cast<double>(population_nodes.size() - 1)
                             : 0.0;
    for (auto& st : summary.nodes)
        st.unique_fraction = denom > 0.0 ? static_cast<double>(st.unique_count) / denom : 0.0;
    return summary;
}

namespace {

// Index of the session that contains time t, assuming t falls inside one.
std::size_t session_index(const std::vector<Session>& sessions, TimePoint t) {
    auto it = std::upper_bound(sessions.begin(), sessions.end(), t,
                               [](TimePoint v, const Session& s) { return v < s.interval.start; });
    return static_cast<std::size_t>(it - sessions.begin()) - 1;
}

}  // namespace

std::vector<FriendshipRow> friendship(std::span<const EncounterEvent> events,
                                      const Trace& trace,
                                      const std::vector<std::vector<Session>>& sessions_per_node) {
    std::vector<TimePoint> online(trace.node_count(), 0);
    std::vector<std::size_t> session_count(trace.node_count(), 0);
    std::vector<std::size_t> visited(trace.node_count(), 0);
    for (std::uint32_t n = 0; n < trace.node_count(); ++n) {
        online[n] = trace.timeline(n).total_online();
        session_count[n] = sessions_per_node[n].size();
        visited[n] = trace.visited_locations(n).size();
    }

    std::vector<FriendshipRow> rows;
    auto idx = pair_order(events);
    std::size_t i = 0;
    while (i < idx.size()) {
        const EncounterEvent& head = events[idx[i]];
        const std::uint32_t a = head.a;
        const std::uint32_t b = head.b;
        TimePoint shared = 0;
        std::vector<std::uint32_t> locs;
        std::vector<std::size_t> sess_a;
        std::vector<std::size_t> sess_b;
        std::size_t j = i;
        while (j < idx.size() && events[idx[j]].a == a && events[idx[j]].b == b) {
            const EncounterEvent& ev = events[idx[j]];
            shared += ev.interval.length();
            locs.push_back(ev.location);
            sess_a.push_back(session_index(sessions_per_node[a], ev.interval.start));
            sess_b.push_back(session_index(sessions_per_node[b], ev.interval.start));
            ++j;
        }
        auto uniq = [](std::vector<std::size_t>& v) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        };
        std::sort(locs.begin(), locs.end());
        locs.erase(std::unique(locs.begin(), locs.end()), locs.end());
        uniq(sess_a);
        uniq(sess_b);

        auto row = [&](std::uint32_t from, std::uint32_t to, std::size_t shared_sessions) {
            FriendshipRow r;
            r.from = from;
            r.to = to;
            r.frd_t = online[from] > 0 ? static_cast<double>(shared) / static_cast<double>(online[from]) : 0.0;
            r.frd_c = session_count[from] > 0
                          ? static_cast<double>(shared_sessions) / static_cast<double>(session_count[from])
                          : 0.0;
            r.frd_l = visited[from] > 0
                          ? static_cast<double>(locs.size()) / static_cast<double>(visited[from])
                          : 0.0;
            return r;
        };
        rows.push_back(row(a, b, sess_a.size()));
        rows.push_back(row(b, a, sess_b.size()));
        i = j;
    }

    std::sort(rows.begin(), rows.end(), [](const FriendshipRow& x, const FriendshipRow& y) {
        if (x.from != y.from) return x.from < y.from;
        return x.to < y.to;
    });
    return rows;
}

namespace {

double pearson(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    const double nf = static_cast<double>(n);
    const double mx = kernels::sum(x) / nf;
    const double my = kernels::sum(y) / nf;
    std::vector<double> cx(n);
    std::vector<double> cy(n);
    for (std::size_t i = 0; i < n; ++i) {
        cx[i] = x[i] - mx;
        cy[i] = y[i] - my;
    }
    const double vx = kernels::dot(cx, cx);
    const double vy = kernels::dot(cy, cy);
    const double guard_x = 1e-24 * nf * (1.0 + mx * mx);
    const double guard_y = 1e-24 * nf * (1.0 + my * my);
    if (vx <= guard_x || vy <= guard_y)
        throw DegenerateVariance("friendship asymmetry: constant index vector");
    return kernels::dot(cx, cy) / std::sqrt(vx * vy);
}

}  // namespace

AsymmetryResult friendship_asymmetry(std::span<const FriendshipRow> rows) {
    struct Pair {
        double ft_fwd, ft_rev;
        double fc_fwd, fc_rev;
        double fl_fwd, fl_rev;
    };
    // friendship() emits both directions of a pair; match them up.
    std::vector<FriendshipRow> sorted(rows.begin(), rows.end());
    std::sort(sorted.begin(), sorted.end(), [](const FriendshipRow& x, const FriendshipRow& y) {
        const auto kx = std::minmax(x.from, x.to);
        const auto ky = std::minmax(y.from, y.to);
        if (kx != ky) return kx < ky;
        return x.from < y.from;
    });

    std::vector<Pair> pairs;
    for (std::size_t i = 0; i + 1 < sorted.size(); i += 2) {
        const FriendshipRow& fwd = sorted[i];      // from < to
        const FriendshipRow& rev = sorted[i + 1];  // from > to
        if (fwd.from != rev.to || fwd.to != rev.from)
            throw UsageError("friendship asymmetry: rows are not paired");
        pairs.push_back({fwd.frd_t, rev.frd_t, fwd.frd_c, rev.frd_c, fwd.frd_l, rev.frd_l});
    }
    if (sorted.size() % 2 != 0)
        throw UsageError("friendship asymmetry: rows are not paired");
    if (pairs.size() < 2)
        throw UsageError("friendship asymmetry: need at least two pairs");

    const std::size_t n = pairs.size();
    std::vector<double> xs(n);
    std::vector<double> ys(n);
    AsymmetryResult res;
    res.pair_count = static_cast<std::uint32_t>(n);
    auto corr = [&](auto fwd_of, auto rev_of) {
        for (std::size_t i = 0; i < n; ++i) {
            xs[i] = fwd_of(pairs[i]);
            ys[i] = rev_of(pairs[i]);
        }
        return pearson(xs, ys);
    };
    res.r_time = corr([](const Pair& p) { return p.ft_fwd; }, [](const Pair& p) { return p.ft_rev; });
    res.r_count = corr([](const Pair& p) { return p.fc_fwd; }, [](const Pair& p) { return p.fc_rev; });
    res.r_location = corr([](const Pair& p) { return p.fl_fwd; }, [](const Pair& p) { return p.fl_rev; });
    return res;
}

}  // namespace tracelab
