#include "tracelab/trace.hpp"

#include <algorithm>
#include <map>

#include "tracelab/errors.hpp"

namespace tracelab {

TimePoint Timeline::total_online() const {
    TimePoint total = 0;
    for (const Stay& s : stays_) total += s.interval.length();
    return total;
}

std::optional<std::uint32_t> Timeline::location_at(TimePoint t) const {
    // First stay with start > t, then check its predecessor.
    auto it = std::upper_bound(stays_.begin(), stays_.end(), t,
                               [](TimePoint v, const Stay& s) { return v < s.interval.start; });
    if (it == stays_.begin()) return std::nullopt;
    --it;
    if (it->interval.contains(t)) return it->location;
    return std::nullopt;
}

Trace Trace::build(const std::vector<AssociationRecord>& records) {
    Trace trace;

    std::map<std::string, std::uint32_t, std::less<>> node_ids;
    std::map<std::string, std::uint32_t, std::less<>> location_ids;
    for (const AssociationRecord& r : records) {
        if (r.node.empty() || r.location.empty()) {
            throw MalformedLine("empty node or location token");
        }
        if (!r.interval.valid()) {
            throw NegativeDuration("record " + r.node + "@" + r.location +
                                   " has non-positive duration");
        }
        node_ids.emplace(r.node, 0);
        location_ids.emplace(r.location, 0);
    }
    // Lexicographic id assignment makes the interned form input-order
    // independent.
    for (auto& [name, id] : node_ids) {
        id = static_cast<std::uint32_t>(trace.node_names_.size());
        trace.node_names_.push_back(name);
    }
    for (auto& [name, id] : location_ids) {
        id = static_cast<std::uint32_t>(trace.location_names_.size());
        trace.location_names_.push_back(name);
    }

    std::vector<std::vector<Stay>> per_node(trace.node_names_.size());
    for (const AssociationRecord& r : records) {
        per_node[node_ids.find(r.node)->second].push_back(
            Stay{location_ids.find(r.location)->second, r.interval});
    }

    trace.timelines_.resize(per_node.size());
    for (std::size_t n = 0; n < per_node.size(); ++n) {
        auto& stays = per_node[n];
        std::sort(stays.begin(), stays.end(), [](const Stay& a, const Stay& b) {
            if (a.interval.start != b.interval.start) return a.interval.start < b.interval.start;
            if (a.interval.end != b.interval.end) return a.interval.end < b.interval.end;
            return a.location < b.location;
        });
        std::vector<Stay>& merged = trace.timelines_[n].stays_;
        for (const Stay& s : stays) {
            if (merged.empty()) {
                merged.push_back(s);
                continue;
            }
            Stay& last = merged.back();
            if (s.interval.start < last.interval.end) {
                if (s.location != last.location) {
                    throw ConflictingAssociation(
                        "node " + trace.node_names_[n] + " at " +
                        trace.location_names_[last.location] + " and " +
                        trace.location_names_[s.location] + " during overlapping intervals");
                }
                last.interval.end = std::max(last.interval.end, s.interval.end);
            } else if (s.interval.start == last.interval.end && s.location == last.location) {
                last.interval.end = s.interval.end;
            } else {
                merged.push_back(s);
            }
        }
    }
    return trace;
}

std::optional<std::uint32_t> Trace::find_node(std::string_view name) const {
    auto it = std::lower_bound(node_names_.begin(), node_names_.end(), name);
    if (it == node_names_.end() || *it != name) return std::nullopt;
    return static_cast<std::uint32_t>(it - node_names_.begin());
}

Interval Trace::span() const {
    bool any = false;
    Interval span{0, 0};
    for (const Timeline& t : timelines_) {
        if (t.empty()) continue;
        if (!any) {
            span = {t.first_online(), t.last_offline()};
            any = true;
        } else {
            span.start = std::min(span.start, t.first_online());
            span.end = std::max(span.end, t.last_offline());
        }
    }
    return span;
}

std::vector<std::uint32_t> Trace::visited_locations(std::uint32_t node) const {
    std::vector<std::uint32_t> locs;
    for (const Stay& s : timelines_[node].stays()) locs.push_back(s.location);
    std::sort(locs.begin(), locs.end());
    locs.erase(std::unique(locs.begin(), locs.end()), locs.end());
    return locs;
}

std::vector<AssociationRecord> Trace::to_records() const {
    std::vector<AssociationRecord> records;
    for (std::uint32_t n = 0; n < timelines_.size(); ++n) {
        for (const Stay& s : timelines_[n].stays()) {
            records.push_back({node_names_[n], location_names_[s.location], s.interval});
        }
    }
    return records;
}

std::vector<Session> derive_sessions(const Timeline& timeline) {
    std::vector<Session> sessions;
    const auto& stays = timeline.stays();
    for (std::uint32_t i = 0; i < stays.size();) {
        Session session;
        session.first_stay = i;
        session.interval.start = stays[i].interval.start;
        std::uint32_t j = i;
        while (j + 1 < stays.size() &&
               stays[j + 1].interval.start == stays[j].interval.end) {
            ++j;
        }
        session.interval.end = stays[j].interval.end;
        session.stay_count = j - i + 1;
        sessions.push_back(session);
        i = j + 1;
    }
    return sessions;
}

NodeAccounting account(const std::vector<Session>& sessions) {
    if (sessions.empty()) throw EmptyInput("account() needs at least one session");
    NodeAccounting acc;
    for (const Session& s : sessions) {
        acc.total_online += s.interval.length();
        acc.handoff_total += s.handoffs();
    }
    acc.session_count = static_cast<std::uint32_t>(sessions.size());
    acc.existence = sessions.back().interval.end - sessions.front().interval.start;
    return acc;
}

std::vector<std::vector<Session>> derive_all_sessions(const Trace& trace) {
    std::vector<std::vector<Session>> all(trace.node_count());
    for (std::uint32_t n = 0; n < trace.node_count(); ++n) {
        all[n] = derive_sessions(trace.timeline(n));
    }
    return all;
}

}  // namespace tracelab
