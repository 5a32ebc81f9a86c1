#include "tracelab/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <string_view>

#include "tracelab/errors.hpp"

namespace tracelab {

namespace {

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = line.find(',', pos);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(pos));
            return fields;
        }
        fields.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
}

TimePoint parse_time(std::string_view field, std::size_t line_no) {
    TimePoint value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw MalformedLine("line " + std::to_string(line_no) + ": '" +
                            std::string(field) + "' is not an integer time");
    }
    return value;
}

std::string parse_token(std::string_view field, std::size_t line_no) {
    if (field.empty()) {
        throw MalformedLine("line " + std::to_string(line_no) + ": empty token");
    }
    for (char c : field) {
        if (c == '"' || c == '\r' || c == '\n') {
            throw MalformedLine("line " + std::to_string(line_no) +
                                ": token contains a forbidden character");
        }
    }
    return std::string(field);
}

// Strips a trailing \r so CRLF input parses the same as LF.
bool read_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

}  // namespace

std::vector<AssociationRecord> parse_event_trace(std::istream& in) {
    std::string line;
    if (!read_line(in, line) || line != "node,location,start,end") {
        throw MalformedLine("line 1: expected header 'node,location,start,end'");
    }
    std::vector<AssociationRecord> records;
    std::size_t line_no = 1;
    while (read_line(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() != 4) {
            throw MalformedLine("line " + std::to_string(line_no) + ": expected 4 fields, got " +
                                std::to_string(fields.size()));
        }
        AssociationRecord r;
        r.node = parse_token(fields[0], line_no);
        r.location = parse_token(fields[1], line_no);
        r.interval.start = parse_time(fields[2], line_no);
        r.interval.end = parse_time(fields[3], line_no);
        if (!r.interval.valid()) {
            throw NegativeDuration("line " + std::to_string(line_no) +
                                   ": start must precede end");
        }
        records.push_back(std::move(r));
    }
    return records;
}

void write_event_trace(std::ostream& out, std::span<const AssociationRecord> records) {
    out << "node,location,start,end\n";
    for (const AssociationRecord& r : records) {
        out << r.node << ',' << r.location << ',' << r.interval.start << ','
            << r.interval.end << '\n';
    }
}

std::vector<PollSample> parse_poll_trace(std::istream& in) {
    std::string line;
    if (!read_line(in, line) || line != "time,node,location") {
        throw MalformedLine("line 1: expected header 'time,node,location'");
    }
    std::vector<PollSample> samples;
    std::size_t line_no = 1;
    while (read_line(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() != 3) {
            throw MalformedLine("line " + std::to_string(line_no) + ": expected 3 fields, got " +
                                std::to_string(fields.size()));
        }
        PollSample s;
        s.time = parse_time(fields[0], line_no);
        if (s.time < 0) {
            throw MalformedLine("line " + std::to_string(line_no) + ": negative poll time");
        }
        s.node = parse_token(fields[1], line_no);
        s.location = parse_token(fields[2], line_no);
        samples.push_back(std::move(s));
    }

    std::sort(samples.begin(), samples.end(), [](const PollSample& a, const PollSample& b) {
        if (a.node != b.node) return a.node < b.node;
        if (a.time != b.time) return a.time < b.time;
        return a.location < b.location;
    });
    samples.erase(std::unique(samples.begin(), samples.end()), samples.end());
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (samples[i].node == samples[i - 1].node && samples[i].time == samples[i - 1].time) {
            throw ConflictingAssociation("node " + samples[i].node + " polled at " +
                                         samples[i - 1].location + " and " + samples[i].location +
                                         " at t=" + std::to_string(samples[i].time));
        }
    }
    return samples;
}

void write_poll_trace(std::ostream& out, std::span<const PollSample> samples) {
    out << "time,node,location\n";
    for (const PollSample& s : samples) {
        out << s.time << ',' << s.node << ',' << s.location << '\n';
    }
}

std::vector<AssociationRecord> reconstruct_from_polls(std::span<const PollSample> samples,
                                                      const PollingPolicy& policy) {
    if (policy.interval <= 0) throw UsageError("polling interval must be positive");
    if (policy.hold_multiplier < 1) throw UsageError("hold multiplier must be >= 1");
    const TimePoint hold = policy.interval * policy.hold_multiplier;

    std::vector<AssociationRecord> records;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const PollSample& s = samples[i];
        TimePoint end = s.time + hold;
        // Any later sample for the same node truncates the provisional hold,
        // whether it confirms the same location or a different one.
        if (i + 1 < samples.size() && samples[i + 1].node == s.node) {
            end = std::min(end, samples[i + 1].time);
        }
        if (!records.empty()) {
            AssociationRecord& last = records.back();
            if (last.node == s.node && last.location == s.location &&
                s.time <= last.interval.end) {
                last.interval.end = std::max(last.interval.end, end);
                continue;
            }
        }
        records.push_back({s.node, s.location, {s.time, end}});
    }
    return records;
}

std::vector<PollSample> emulate_polling(const std::vector<AssociationRecord>& records,
                                        TimePoint interval) {
    if (interval <= 0) throw UsageError("polling interval must be positive");
    Trace trace = Trace::build(records);

    std::vector<PollSample> samples;
    for (std::uint32_t n = 0; n < trace.node_count(); ++n) {
        for (const Stay& stay : trace.timeline(n).stays()) {
            // First epoch at or after the stay start; epochs are anchored at
            // the trace epoch (t = 0), not at the node's first appearance.
            TimePoint first = ((stay.interval.start + interval - 1) / interval) * interval;
            if (stay.interval.start < 0) {
                first = (stay.interval.start / interval) * interval;
                if (first < stay.interval.start) first += interval;
            }
            for (TimePoint t = first; t < stay.interval.end; t += interval) {
                samples.push_back({t, trace.node_name(n), trace.location_name(stay.location)});
            }
        }
    }
    std::sort(samples.begin(), samples.end(), [](const PollSample& a, const PollSample& b) {
        if (a.node != b.node) return a.node < b.node;
        return a.time < b.time;
    });
    return samples;
}

}  // namespace tracelab
