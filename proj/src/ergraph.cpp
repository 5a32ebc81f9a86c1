#include "tracelab/ergraph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "tracelab/errors.hpp"
#include "tracelab/parallel.hpp"
#include "tracelab/rng.hpp"

namespace tracelab {

ERGraph::ERGraph(std::uint32_t n, bool directed)
    : n_(n), directed_(directed), words_((static_cast<std::size_t>(n) + 63) / 64),
      bits_(static_cast<std::size_t>(n) * words_, 0), ids_(n) {
    std::iota(ids_.begin(), ids_.end(), 0u);
}

void ERGraph::add_edge(std::uint32_t a, std::uint32_t b) {
    if (a == b || a >= n_ || b >= n_) return;
    bits_[a * words_ + b / 64] |= std::uint64_t{1} << (b % 64);
    if (!directed_) bits_[b * words_ + a / 64] |= std::uint64_t{1} << (a % 64);
}

bool ERGraph::has_edge(std::uint32_t a, std::uint32_t b) const {
    if (a >= n_ || b >= n_) return false;
    return (bits_[a * words_ + b / 64] >> (b % 64)) & 1;
}

std::span<const std::uint64_t> ERGraph::row(std::uint32_t i) const {
    return {bits_.data() + i * words_, words_};
}

std::uint32_t ERGraph::out_degree(std::uint32_t i) const {
    std::uint32_t d = 0;
    for (std::uint64_t w : row(i)) d += static_cast<std::uint32_t>(std::popcount(w));
    return d;
}

std::vector<std::uint32_t> ERGraph::out_neighbors(std::uint32_t i) const {
    std::vector<std::uint32_t> out;
    auto r = row(i);
    for (std::size_t w = 0; w < r.size(); ++w) {
        std::uint64_t bits = r[w];
        while (bits) {
            const int tz = std::countr_zero(bits);
            out.push_back(static_cast<std::uint32_t>(w * 64 + tz));
            bits &= bits - 1;
        }
    }
    return out;
}

std::uint64_t ERGraph::arc_count() const {
    std::uint64_t arcs = 0;
    for (std::uint64_t w : bits_) arcs += static_cast<std::uint64_t>(std::popcount(w));
    return arcs;
}

double ERGraph::mean_degree() const {
    // Undirected rows are symmetric, so arcs = 2E and arcs/n = 2E/n.
    if (n_ == 0) return 0.0;
    return static_cast<double>(arc_count()) / static_cast<double>(n_);
}

namespace {

std::uint64_t intersect_count(std::span<const std::uint64_t> x,
                              std::span<const std::uint64_t> y) {
    std::uint64_t c = 0;
    for (std::size_t w = 0; w < x.size(); ++w)
        c += static_cast<std::uint64_t>(std::popcount(x[w] & y[w]));
    return c;
}

// Ordered pairs (A,B) of i's out-neighborhood with B -> A present. For
// undirected graphs this is twice the triangle count at i.
double node_cc(const ERGraph& g, std::uint32_t i) {
    const std::uint32_t d = g.out_degree(i);
    if (d < 2) return 0.0;
    std::uint64_t count = 0;
    for (std::uint32_t v : g.out_neighbors(i)) count += intersect_count(g.row(i), g.row(v));
    return static_cast<double>(count) / static_cast<double>(std::uint64_t{d} * (d - 1));
}

struct ReachSlot {
    std::uint64_t hop_sum = 0;
    std::uint64_t reached = 0;  // excluding the source itself
};

ReachSlot bfs_from(const ERGraph& g, std::uint32_t s) {
    const std::size_t words = g.words_per_row();
    std::vector<std::uint64_t> visited(words, 0);
    std::vector<std::uint64_t> frontier(words, 0);
    std::vector<std::uint64_t> next(words, 0);
    visited[s / 64] |= std::uint64_t{1} << (s % 64);
    frontier[s / 64] |= std::uint64_t{1} << (s % 64);

    ReachSlot slot;
    std::uint64_t hop = 0;
    bool any = true;
    while (any) {
        std::fill(next.begin(), next.end(), 0);
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t bits = frontier[w];
            while (bits) {
                const int tz = std::countr_zero(bits);
                const auto v = static_cast<std::uint32_t>(w * 64 + tz);
                auto r = g.row(v);
                for (std::size_t k = 0; k < words; ++k) next[k] |= r[k];
                bits &= bits - 1;
            }
        }
        ++hop;
        any = false;
        std::uint64_t found = 0;
        for (std::size_t w = 0; w < words; ++w) {
            next[w] &= ~visited[w];
            found += static_cast<std::uint64_t>(std::popcount(next[w]));
            visited[w] |= next[w];
        }
        if (found) {
            slot.hop_sum += hop * found;
            slot.reached += found;
            any = true;
            frontier.swap(next);
        }
    }
    return slot;
}

}  // namespace

double clustering_coefficient(const ERGraph& g) {
    const std::uint32_t n = g.node_count();
    if (n == 0) return 0.0;
    std::vector<double> cc(n);
    parallel::parallel_for(n, [&](std::size_t i) { cc[i] = node_cc(g, static_cast<std::uint32_t>(i)); });
    double sum = 0.0;
    for (double v : cc) sum += v;
    return sum / static_cast<double>(n);
}

double disconnected_ratio(const ERGraph& g) {
    return compute_metrics(g, 0.0).dr;
}

GraphMetrics compute_metrics(const ERGraph& g, double pl_disc) {
    const std::uint32_t n = g.node_count();
    GraphMetrics m;
    m.node_count = n;
    m.mean_degree = g.mean_degree();
    m.cc = clustering_coefficient(g);
    if (n < 2) return m;

    std::vector<ReachSlot> slots(n);
    parallel::parallel_for(n, [&](std::size_t i) { slots[i] = bfs_from(g, static_cast<std::uint32_t>(i)); });
    std::uint64_t hop_sum = 0;
    std::uint64_t reachable = 0;
    for (const ReachSlot& s : slots) {
        hop_sum += s.hop_sum;
        reachable += s.reached;
    }
    const std::uint64_t pairs = std::uint64_t{n} * (n - 1);
    m.dr = static_cast<double>(pairs - reachable) / static_cast<double>(pairs);
    m.pl_con = reachable > 0 ? static_cast<double>(hop_sum) / static_cast<double>(reachable) : 0.0;
    m.pl = (1.0 - m.dr) * m.pl_con + m.dr * pl_disc;
    return m;
}

ERGraph make_reference(ReferenceKind kind, std::uint32_t n, std::uint32_t d,
                       std::uint64_t seed) {
    if (d >= n) throw InvalidDegree("reference degree must be below node count");
    ERGraph g(n, false);
    if (kind == ReferenceKind::Regular) {
        if (d % 2 != 0) throw InvalidDegree("ring lattice degree must be even");
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = 1; j <= d / 2; ++j) g.add_edge(i, (i + j) % n);
        return g;
    }
    Rng rng(seed);
    std::vector<std::uint32_t> candidates(n > 0 ? n - 1 : 0);
    for (std::uint32_t i = 0; i < n; ++i) {
        std::uint32_t w = 0;
        for (std::uint32_t v = 0; v < n; ++v)
            if (v != i) candidates[w++] = v;
        for (std::uint32_t j = 0; j < d; ++j) {
            const auto k = static_cast<std::uint32_t>(
                rng.uniform_int(j, static_cast<std::int64_t>(n) - 2));
            std::swap(candidates[j], candidates[k]);
            g.add_edge(i, candidates[j]);
        }
    }
    return g;
}

NormalizedMetrics normalize(const GraphMetrics& raw, const GraphMetrics& reg,
                            const GraphMetrics& rand) {
    if (reg.cc == rand.cc || reg.pl == rand.pl)
        throw DegenerateReference("reference graphs give equal metric values");
    NormalizedMetrics out;
    out.cc_norm = (raw.cc - rand.cc) / (reg.cc - rand.cc) * 0.99 + 0.01;
    out.pl_norm = (raw.pl - rand.pl) / (reg.pl - rand.pl) * 0.99 + 0.01;
    return out;
}

namespace {

std::uint32_t dense_index(std::span<const std::uint32_t> population, std::uint32_t node) {
    auto it = std::lower_bound(population.begin(), population.end(), node);
    if (it == population.end() || *it != node)
        throw InternalError("graph build: node missing from population");
    return static_cast<std::uint32_t>(it - population.begin());
}

}  // namespace

ERGraph build_er_graph(const EncounterSummary& summary,
                       std::span<const std::uint32_t> population_nodes) {
    ERGraph g(static_cast<std::uint32_t>(population_nodes.size()), false);
    g.ids().assign(population_nodes.begin(), population_nodes.end());
    for (const PairAggregate& p : summary.pairs)
        g.add_edge(dense_index(population_nodes, p.a), dense_index(population_nodes, p.b));
    return g;
}

ERGraph build_friend_graph(std::span<const FriendshipRow> rows,
                           FriendDimension dimension, FriendSegment segment,
                           double fraction,
                           std::span<const std::uint32_t> population_nodes) {
    if (!(fraction > 0.0) || fraction > 1.0)
        throw UsageError("friend graph fraction must be in (0,1]");
    auto score = [dimension](const FriendshipRow& r) {
        switch (dimension) {
            case FriendDimension::Time: return r.frd_t;
            case FriendDimension::Count: return r.frd_c;
            default: return r.frd_l;
        }
    };

    ERGraph g(static_cast<std::uint32_t>(population_nodes.size()), true);
    g.ids().assign(population_nodes.begin(), population_nodes.end());

    std::vector<FriendshipRow> sorted(rows.begin(), rows.end());
    std::stable_sort(sorted.begin(), sorted.end(), [&](const FriendshipRow& x, const FriendshipRow& y) {
        if (x.from != y.from) return x.from < y.from;
        const double sx = score(x);
        const double sy = score(y);
        if (sx != sy) return sx > sy;
        return x.to < y.to;
    });

    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j].from == sorted[i].from) ++j;
        const std::size_t len = j - i;
        auto m = static_cast<std::size_t>(
            std::ceil(fraction * static_cast<double>(len) - 1e-9));
        m = std::clamp<std::size_t>(m, 1, len);
        std::size_t start = 0;
        if (segment == FriendSegment::Bottom) start = len - m;
        else if (segment == FriendSegment::Middle) start = (len - m) / 2;
        const std::uint32_t from = dense_index(population_nodes, sorted[i].from);
        for (std::size_t k = 0; k < m; ++k)
            g.add_edge(from, dense_index(population_nodes, sorted[i + start + k].to));
        i = j;
    }
    return g;
}

MetricsBundle metrics_with_references(const ERGraph& g, std::uint64_t seed) {
    MetricsBundle out;
    const std::uint32_t n = g.node_count();
    const double mean = g.mean_degree();

    // Reference degrees from the realized mean degree; ring lattices need an
    // even degree >= 2 below n.
    std::uint32_t d_reg = static_cast<std::uint32_t>(
        std::max<std::int64_t>(2, std::llround(mean / 2.0) * 2));
    if (n >= 1 && d_reg >= n) d_reg = (n - 1) & ~1u;
    std::uint32_t d_rand = static_cast<std::uint32_t>(
        std::max<std::int64_t>(1, std::llround(mean)));
    if (n >= 1 && d_rand >= n) d_rand = n - 1;

    if (n < 4 || d_reg < 2 || d_rand < 1) {
        // Too small for references: report raw metrics with zero penalty.
        out.raw = compute_metrics(g, 0.0);
        out.cc_norm = std::numeric_limits<double>::quiet_NaN();
        out.pl_norm = std::numeric_limits<double>::quiet_NaN();
        return out;
    }

    ERGraph reg = make_reference(ReferenceKind::Regular, n, d_reg, seed);
    ERGraph rnd = make_reference(ReferenceKind::Random, n, d_rand, seed + 1);
    const GraphMetrics reg_m = compute_metrics(reg, 0.0);
    const double pl_disc = reg_m.pl_con;
    out.raw = compute_metrics(g, pl_disc);
    const GraphMetrics rnd_m = compute_metrics(rnd, pl_disc);
    try {
        const NormalizedMetrics norm = normalize(out.raw, reg_m, rnd_m);
        out.cc_norm = norm.cc_norm;
        out.pl_norm = norm.pl_norm;
        out.norm_valid = true;
    } catch (const DegenerateReference&) {
        out.cc_norm = std::numeric_limits<double>::quiet_NaN();
        out.pl_norm = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

std::vector<EvolveRow> evolve_metrics(const Trace& trace,
                                      std::span<const EncounterEvent> events,
                                      std::span<const TimePoint> window_lengths,
                                      std::uint64_t seed) {
    const Interval span = trace.span();
    std::vector<EvolveRow> rows;
    rows.reserve(window_lengths.size());
    for (TimePoint len : window_lengths) {
        const Interval window{span.start, span.start + len};
        auto clipped = clip_events(events, window);
        auto population = nodes_in_window(trace, window);
        auto summary = aggregate_pairs(clipped, population);
        ERGraph g = build_er_graph(summary, population);

        const std::uint64_t sub = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(len)));
        const MetricsBundle bundle = metrics_with_references(g, sub);
        rows.push_back({len, bundle.raw, bundle.cc_norm, bundle.pl_norm, bundle.norm_valid});
    }
    return rows;
}

}  // namespace tracelab
