#include "tracelab/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "tracelab/errors.hpp"
#include "tracelab/parallel.hpp"

namespace tracelab {

DiffusionContext DiffusionContext::build(const Trace& trace,
                                         std::span<const EncounterEvent> events,
                                         Interval window) {
    DiffusionContext ctx;
    ctx.window = window;
    ctx.population = nodes_in_window(trace, window);
    ctx.first_online.reserve(ctx.population.size());
    for (std::uint32_t node : ctx.population) {
        TimePoint first = window.end;
        for (const Stay& s : trace.timeline(node).stays()) {
            if (s.interval.overlaps(window)) {
                first = std::max(s.interval.start, window.start);
                break;
            }
        }
        ctx.first_online.push_back(first);
    }
    ctx.contacts.resize(ctx.population.size());
    for (const EncounterEvent& ev : events) {
        const Interval ov = intersect(ev.interval, window);
        if (ov.length() <= 0) continue;
        const auto a = static_cast<std::uint32_t>(ctx.dense_of(ev.a));
        const auto b = static_cast<std::uint32_t>(ctx.dense_of(ev.b));
        ctx.contacts[a].push_back({b, ov});
        ctx.contacts[b].push_back({a, ov});
    }
    return ctx;
}

std::size_t DiffusionContext::dense_of(std::uint32_t node) const {
    auto it = std::lower_bound(population.begin(), population.end(), node);
    if (it == population.end() || *it != node)
        throw UnknownSource("node does not appear in the window");
    return static_cast<std::size_t>(it - population.begin());
}

DiffusionResult run_epidemic(const DiffusionContext& ctx, std::uint32_t source,
                             std::span<const std::uint32_t> selfish_sorted) {
    const std::size_t src = ctx.dense_of(source);
    const std::size_t n = ctx.population.size();
    constexpr TimePoint kNever = std::numeric_limits<TimePoint>::max();
    std::vector<TimePoint> infected(n, kNever);
    infected[src] = ctx.first_online[src];

    auto is_selfish = [&](std::uint32_t node) {
        return std::binary_search(selfish_sorted.begin(), selfish_sorted.end(), node);
    };

    using Entry = std::pair<TimePoint, std::uint32_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    heap.push({infected[src], static_cast<std::uint32_t>(src)});
    while (!heap.empty()) {
        const auto [t, u] = heap.top();
        heap.pop();
        if (t != infected[u]) continue;
        if (u != src && is_selfish(ctx.population[u])) continue;  // receives, never relays
        for (const auto& c : ctx.contacts[u]) {
            if (t >= c.when.end) continue;
            const TimePoint at = std::max(t, c.when.start);
            if (at < infected[c.peer]) {
                infected[c.peer] = at;
                heap.push({at, c.peer});
            }
        }
    }

    DiffusionResult res;
    res.source = source;
    res.population = static_cast<std::uint32_t>(n);
    TimePoint delay_sum = 0;
    std::size_t delayed = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (infected[i] == kNever) continue;
        res.delivered.push_back(ctx.population[i]);
        res.infected_at.push_back(infected[i]);
        if (i != src) {
            delay_sum += infected[i] - infected[src];
            ++delayed;
        }
    }
    res.receive_ratio = n > 0 ? static_cast<double>(res.delivered.size()) / static_cast<double>(n)
                              : 0.0;
    res.mean_delay = delayed > 0 ? static_cast<double>(delay_sum) / static_cast<double>(delayed)
                                 : 0.0;
    return res;
}

SweepDetail sweep_selfish_detailed(const Trace& trace,
                                   std::span<const EncounterEvent> events,
                                   std::span<const TimePoint> window_lengths,
                                   std::span<const double> selfish_fractions,
                                   double source_fraction) {
    std::vector<double> fractions(selfish_fractions.begin(), selfish_fractions.end());
    std::sort(fractions.begin(), fractions.end());
    const Interval span = trace.span();

    SweepDetail detail;
    std::vector<SweepRow>& rows = detail.summary;
    for (TimePoint len : window_lengths) {
        const Interval window{span.start, span.start + len};
        const DiffusionContext ctx = DiffusionContext::build(trace, events, window);
        const std::size_t pop = ctx.population.size();
        if (pop == 0) {
            for (double f : fractions)
                rows.push_back({len, f, 0.0, 0.0, 0, 0});
            continue;
        }

        // Earliest-appearing sources, ties by node id.
        std::vector<std::size_t> order(pop);
        for (std::size_t i = 0; i < pop; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (ctx.first_online[a] != ctx.first_online[b])
                return ctx.first_online[a] < ctx.first_online[b];
            return ctx.population[a] < ctx.population[b];
        });
        const auto source_count = static_cast<std::size_t>(
            std::max<std::int64_t>(1, std::llround(source_fraction * static_cast<double>(pop))));
        std::vector<std::uint32_t> sources;
        for (std::size_t i = 0; i < std::min(source_count, pop); ++i)
            sources.push_back(ctx.population[order[i]]);

        // Selfish ranking: unique encounter partners in this window, descending.
        auto clipped = clip_events(events, window);
        auto summary = aggregate_pairs(clipped, ctx.population);
        std::vector<std::size_t> rank(pop);
        for (std::size_t i = 0; i < pop; ++i) rank[i] = i;
        std::sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t b) {
            if (summary.nodes[a].unique_count != summary.nodes[b].unique_count)
                return summary.nodes[a].unique_count > summary.nodes[b].unique_count;
            return summary.nodes[a].node < summary.nodes[b].node;
        });

        for (double f : fractions) {
            const auto k = static_cast<std::size_t>(std::min<std::int64_t>(
                static_cast<std::int64_t>(pop),
                std::max<std::int64_t>(0, std::llround(f * static_cast<double>(pop)))));
            std::vector<std::uint32_t> selfish;
            selfish.reserve(k);
            for (std::size_t i = 0; i < k; ++i) selfish.push_back(summary.nodes[rank[i]].node);
            std::sort(selfish.begin(), selfish.end());

            std::vector<DiffusionResult> runs(sources.size());
            parallel::parallel_for(sources.size(), [&](std::size_t i) {
                runs[i] = run_epidemic(ctx, sources[i], selfish);
            });
            for (const DiffusionResult& r : runs)
                detail.runs.push_back({len, f, r.source, r.receive_ratio, r.mean_delay});

            SweepRow row;
            row.window_length = len;
            row.selfish_fraction = f;
            row.source_count = static_cast<std::uint32_t>(sources.size());
            row.population = static_cast<std::uint32_t>(pop);
            double ratio_sum = 0.0;
            double delay_sum = 0.0;
            std::size_t delivering = 0;
            for (const DiffusionResult& r : runs) {
                ratio_sum += r.receive_ratio;
                if (r.delivered.size() > 1) {
                    delay_sum += r.mean_delay;
                    ++delivering;
                }
            }
            row.mean_receive_ratio = ratio_sum / static_cast<double>(runs.size());
            row.mean_delay = delivering > 0 ? delay_sum / static_cast<double>(delivering) : 0.0;
            rows.push_back(row);
        }
    }
    return detail;
}

std::vector<SweepRow> sweep_selfish(const Trace& trace,
                                    std::span<const EncounterEvent> events,
                                    std::span<const TimePoint> window_lengths,
                                    std::span<const double> selfish_fractions,
                                    double source_fraction) {
    return sweep_selfish_detailed(trace, events, window_lengths, selfish_fractions,
                                  source_fraction)
        .summary;
}

}  // namespace tracelab
