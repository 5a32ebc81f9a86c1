#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tracelab/encounters.hpp"
#include "tracelab/time_types.hpp"

namespace tracelab {

// Adjacency held as one bitset row per node. Nodes are dense indices
// 0..n-1; ids() maps them back to trace node ids when the graph came from a
// trace. Self-loops are ignored on insertion.
class ERGraph {
public:
    ERGraph(std::uint32_t n, bool directed);

    void add_edge(std::uint32_t a, std::uint32_t b);
    bool has_edge(std::uint32_t a, std::uint32_t b) const;

    std::uint32_t node_count() const { return n_; }
    bool directed() const { return directed_; }
    std::uint32_t out_degree(std::uint32_t i) const;
    std::vector<std::uint32_t> out_neighbors(std::uint32_t i) const;
    std::span<const std::uint64_t> row(std::uint32_t i) const;
    std::size_t words_per_row() const { return words_; }

    // Directed arc count; an undirected edge counts as two arcs.
    std::uint64_t arc_count() const;
    // Undirected: 2E/n. Directed: arcs/n.
    double mean_degree() const;

    std::vector<std::uint32_t>& ids() { return ids_; }
    const std::vector<std::uint32_t>& ids() const { return ids_; }

private:
    std::uint32_t n_;
    bool directed_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
    std::vector<std::uint32_t> ids_;  // dense index -> external node id
};

struct GraphMetrics {
    double cc = 0.0;
    double dr = 0.0;
    double pl = 0.0;
    double pl_con = 0.0;
    std::uint32_t node_count = 0;
    double mean_degree = 0.0;
};

struct NormalizedMetrics {
    double cc_norm = 0.0;
    double pl_norm = 0.0;
};

double clustering_coefficient(const ERGraph& g);
double disconnected_ratio(const ERGraph& g);
// cc, dr, pl_con in one pass; pl = (1-dr)*pl_con + dr*pl_disc. pl_con of a
// pairless graph is 0.
GraphMetrics compute_metrics(const ERGraph& g, double pl_disc);

enum class ReferenceKind { Regular, Random };

// Regular: ring lattice, d even. Random: d distinct non-self partners per
// node, union of draws (realized mean degree slightly above d).
ERGraph make_reference(ReferenceKind kind, std::uint32_t n, std::uint32_t d,
                       std::uint64_t seed);

// (raw - rand) / (reg - rand) * 0.99 + 0.01, applied to cc and pl.
NormalizedMetrics normalize(const GraphMetrics& raw, const GraphMetrics& reg,
                            const GraphMetrics& rand);

// Undirected graph over population_nodes with one edge per encountering pair.
ERGraph build_er_graph(const EncounterSummary& summary,
                       std::span<const std::uint32_t> population_nodes);

enum class FriendDimension { Time, Count, Location };
enum class FriendSegment { Top, Middle, Bottom };

// Directed graph: each node keeps the chosen slice of its partner list,
// sorted by the selected index descending (ties by partner id ascending).
// Slice size is ceil(fraction * list length); middle slices are centered,
// rounding toward the top.
ERGraph build_friend_graph(std::span<const FriendshipRow> rows,
                           FriendDimension dimension, FriendSegment segment,
                           double fraction,
                           std::span<const std::uint32_t> population_nodes);

struct MetricsBundle {
    GraphMetrics raw;
    double cc_norm = 0.0;
    double pl_norm = 0.0;
    bool norm_valid = false;  // false when references are degenerate or impossible
};

// Metrics plus normalization against same-size regular/random references.
// The regular reference also supplies pl_disc. Degrees derive from the
// realized mean degree (regular: nearest even, at least 2).
MetricsBundle metrics_with_references(const ERGraph& g, std::uint64_t seed);

struct EvolveRow {
    TimePoint window_length = 0;
    GraphMetrics raw;
    double cc_norm = 0.0;
    double pl_norm = 0.0;
    bool norm_valid = false;
};

// Prefix windows anchored at the trace start. pl_disc comes from the
// same-size regular reference; the reference degree is the realized mean
// degree rounded (regular: to the nearest even >= 2).
std::vector<EvolveRow> evolve_metrics(const Trace& trace,
                                      std::span<const EncounterEvent> events,
                                      std::span<const TimePoint> window_lengths,
                                      std::uint64_t seed);

}  // namespace tracelab
