#include "tracelab/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tracelab/errors.hpp"
#include "tracelab/rng.hpp"

namespace tracelab {

namespace {

constexpr TimePoint kDay = 86400;

void validate(const CampusSpec& s) {
    if (s.node_count == 0 || s.location_count == 0 || s.days == 0)
        throw InvalidSpec("counts must be positive");
    if (s.step <= 0 || s.step > kDay) throw InvalidSpec("step must be in (0, 86400]");
    if (s.jitter < 0) throw InvalidSpec("jitter must be non-negative");
    for (double p : {s.heavy_mix, s.home_weight, s.skip_day_heavy, s.skip_day_light,
                     s.secondary_visit_prob}) {
        if (!(p >= 0.0 && p <= 1.0)) throw InvalidSpec("ratios must lie in [0,1]");
    }
    if (!(s.zipf_exponent > 0.0)) throw InvalidSpec("zipf exponent must be positive");
}

std::string padded(const char* prefix, std::uint32_t i, std::uint32_t count) {
    std::uint32_t width = 1;
    for (std::uint32_t c = count - 1; c >= 10; c /= 10) ++width;
    std::string digits = std::to_string(i);
    return prefix + std::string(width > digits.size() ? width - digits.size() : 0, '0') + digits;
}

TimePoint quantize(TimePoint t, TimePoint step) { return t - (t % step + step) % step; }

}  // namespace

std::vector<AssociationRecord> generate(const CampusSpec& spec) {
    validate(spec);
    std::vector<std::string> node_names(spec.node_count);
    std::vector<std::string> loc_names(spec.location_count);
    for (std::uint32_t i = 0; i < spec.node_count; ++i)
        node_names[i] = padded("u", i, spec.node_count);
    for (std::uint32_t i = 0; i < spec.location_count; ++i)
        loc_names[i] = padded("ap", i, spec.location_count);

    const ZipfSampler popularity(spec.location_count, spec.zipf_exponent);
    std::vector<AssociationRecord> records;

    for (std::uint32_t i = 0; i < spec.node_count; ++i) {
        Rng rng(splitmix64(spec.seed + 0x9e3779b97f4a7c15ULL * (i + 1)));
        const std::size_t home = popularity.draw(rng);
        const bool heavy = rng.uniform_real() < spec.heavy_mix;

        auto draw_span = [&](TimePoint lo, TimePoint hi) {
            return quantize(rng.uniform_int(lo, hi), spec.step);
        };
        const TimePoint wake = draw_span(7 * 3600, 10 * 3600);
        const TimePoint duration = heavy ? draw_span(8 * 3600, 12 * 3600)
                                         : draw_span(2 * 3600, 5 * 3600);
        const double skip_prob = heavy ? spec.skip_day_heavy : spec.skip_day_light;

        // Fixed itinerary: a node keeps the same few excursion venues and
        // roughly the same visit hour all term, so its contact circle stays
        // bounded instead of resampling a fresh crowd every day.
        std::vector<std::size_t> venues;
        if (spec.location_count > 1) {
            const std::size_t want = heavy ? static_cast<std::size_t>(rng.uniform_int(2, 3)) : 1;
            for (int attempt = 0; attempt < 64 && venues.size() < want; ++attempt) {
                const std::size_t cand = popularity.draw(rng);
                if (cand == home) continue;
                if (std::find(venues.begin(), venues.end(), cand) == venues.end())
                    venues.push_back(cand);
            }
        }
        const double slot = rng.uniform_real();  // visit position within the block

        auto emit = [&](std::size_t loc, Interval iv) {
            if (iv.length() <= 0) return;
            records.push_back({node_names[i], loc_names[loc], iv});
        };

        for (std::uint32_t day = 0; day < spec.days; ++day) {
            const TimePoint day_start = static_cast<TimePoint>(day) * kDay;
            if (spec.always_on) {
                emit(home, {day_start, day_start + kDay});
                continue;
            }
            if (rng.bernoulli(skip_prob)) continue;

            TimePoint start = day_start + wake;
            if (spec.jitter >= spec.step) {
                const TimePoint j = spec.jitter / spec.step;
                start += rng.uniform_int(-j, j) * spec.step;
            }
            start = std::clamp(start, day_start, day_start + kDay - spec.step);
            const TimePoint end = std::min(start + duration, day_start + kDay);
            if (end <= start) continue;

            // Excursions: split (1 - home_weight) of the block across one or
            // two visits to other locations.
            struct Visit {
                TimePoint start, end;
                std::size_t loc;
            };
            std::vector<Visit> visits;
            if (!venues.empty() && spec.secondary_visit_prob > 0.0 &&
                rng.bernoulli(spec.secondary_visit_prob)) {
                const auto total = quantize(
                    static_cast<TimePoint>(std::llround((1.0 - spec.home_weight) *
                                                        static_cast<double>(end - start))),
                    spec.step);
                const int count = heavy && total >= 2 * spec.step && rng.bernoulli(0.5) ? 2 : 1;
                const TimePoint each = quantize(total / count, spec.step);
                if (each >= spec.step) {
                    for (int v = 0; v < count; ++v) {
                        const TimePoint lo = start;
                        const TimePoint hi = end - each;
                        if (hi < lo) break;
                        TimePoint vs = quantize(
                            lo + static_cast<TimePoint>(std::llround(
                                     slot * static_cast<double>(hi - lo))),
                            spec.step);
                        vs += rng.uniform_int(-2, 2) * spec.step;  // slight daily drift
                        vs = std::clamp(vs, lo, std::max(lo, quantize(hi, spec.step)));
                        const std::size_t loc =
                            venues[static_cast<std::size_t>(rng.uniform_int(
                                0, static_cast<std::int64_t>(venues.size()) - 1))];
                        visits.push_back({vs, vs + each, loc});
                    }
                    std::sort(visits.begin(), visits.end(),
                              [](const Visit& a, const Visit& b) { return a.start < b.start; });
                    TimePoint prev_end = start;
                    for (auto& v : visits) {  // push overlapping visits forward
                        if (v.start < prev_end) {
                            const TimePoint len = v.end - v.start;
                            v.start = prev_end;
                            v.end = v.start + len;
                        }
                        v.end = std::min(v.end, end);
                        prev_end = std::max(prev_end, v.end);
                    }
                }
            }

            TimePoint cursor = start;
            for (const Visit& v : visits) {
                if (v.end <= v.start) continue;
                emit(home, {cursor, v.start});
                emit(v.loc, {v.start, v.end});
                cursor = v.end;
            }
            emit(home, {cursor, end});
        }
    }
    return records;
}

}  // namespace tracelab
