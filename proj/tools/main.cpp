#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tracelab/csv.hpp"
#include "tracelab/diffusion.hpp"
#include "tracelab/encounters.hpp"
#include "tracelab/ergraph.hpp"
#include "tracelab/errors.hpp"
#include "tracelab/ingest.hpp"
#include "tracelab/parallel.hpp"
#include "tracelab/similarity.hpp"
#include "tracelab/statfit.hpp"
#include "tracelab/synthgen.hpp"
#include "tracelab/trace.hpp"
#include "tracelab/user_metrics.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tracelab;

namespace {

constexpr const char* kVersion = "0.1.0";

// Records everything written below the output directory so a failed run can
// remove its partial outputs.
struct OutputTracker {
    fs::path dir;
    std::vector<fs::path> written;

    std::ofstream file(const std::string& name) {
        const fs::path p = dir / name;
        written.push_back(p);
        return open_csv(p);
    }

    void discard() {
        for (const fs::path& p : written) {
            std::error_code ec;
            fs::remove(p, ec);
        }
    }
};

json g_config;  // from --config, overlays unset CLI options

template <typename T>
void overlay(const CLI::App* cmd, const std::string& flag, T& value) {
    if (!g_config.is_object()) return;
    const CLI::Option* opt = cmd->get_option_no_throw(flag);
    if (opt != nullptr && opt->count() > 0) return;  // CLI wins over config
    const std::string key = flag.substr(2);
    if (g_config.contains(key)) value = g_config.at(key).get<T>();
}

void write_manifest(OutputTracker& out, const std::string& subcommand,
                    const std::vector<std::string>& inputs, const json& config) {
    json m;
    m["tool"] = "tracelab";
    m["version"] = kVersion;
    m["subcommand"] = subcommand;
    m["inputs"] = inputs;
    m["config"] = config;
    m["seed"] = config.contains("seed") ? config.at("seed") : json(nullptr);
    auto f = out.file("manifest.json");
    f << m.dump(2) << "\n";
}

std::vector<AssociationRecord> load_events(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    return parse_event_trace(in);
}

std::vector<PollSample> load_polls(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    return parse_poll_trace(in);
}

void write_ccdf(OutputTracker& out, const std::string& name, std::span<const double> values) {
    auto f = out.file(name);
    f << "x,prob\n";
    if (values.empty()) return;
    for (const CcdfPoint& p : ccdf(values).points)
        f << format_double(p.x) << ',' << format_double(p.prob) << '\n';
}

std::vector<TimePoint> default_windows(TimePoint span_len) {
    std::vector<TimePoint> w;
    for (TimePoint d = 86400; d < span_len && w.size() < 60; d += 86400) w.push_back(d);
    w.push_back(std::max<TimePoint>(span_len, 1));
    return w;
}

std::vector<TimePoint> default_diffusion_windows(TimePoint span_len) {
    std::vector<TimePoint> w;
    for (TimePoint d : {TimePoint{86400}, TimePoint{3 * 86400}, TimePoint{7 * 86400}})
        if (d < span_len) w.push_back(d);
    w.push_back(std::max<TimePoint>(span_len, 1));
    return w;
}

// ---- emitters shared by the single-stage subcommands and `report` ----

void emit_user_metrics(OutputTracker& out, const Trace& trace,
                       const std::vector<std::vector<Session>>& sessions,
                       std::uint32_t max_rank) {
    const auto rows = compute_user_metrics(trace, sessions);
    {
        auto f = out.file("user_metrics.csv");
        f << "node,online_fraction,session_count,coverage,handoff_total,handoffs_per_session\n";
        for (const auto& r : rows)
            f << trace.node_name(r.node) << ',' << format_double(r.online_fraction) << ','
              << r.session_count << ',' << format_double(r.coverage) << ',' << r.handoff_total
              << ',' << format_double(r.handoffs_per_session) << '\n';
    }
    {
        auto f = out.file("prevalence.csv");
        f << "rank,mean_fraction,node_count\n";
        for (const auto& p : prevalence_curve(trace, max_rank))
            f << p.rank << ',' << format_double(p.mean_fraction) << ',' << p.node_count << '\n';
    }
    std::vector<double> v(rows.size());
    auto col = [&](auto get) {
        for (std::size_t i = 0; i < rows.size(); ++i) v[i] = get(rows[i]);
        return std::span<const double>(v);
    };
    write_ccdf(out, "ccdf_online_fraction.csv",
               col([](const UserMetricRow& r) { return r.online_fraction; }));
    write_ccdf(out, "ccdf_session_count.csv",
               col([](const UserMetricRow& r) { return static_cast<double>(r.session_count); }));
    write_ccdf(out, "ccdf_coverage.csv", col([](const UserMetricRow& r) { return r.coverage; }));
    write_ccdf(out, "ccdf_handoff_total.csv",
               col([](const UserMetricRow& r) { return static_cast<double>(r.handoff_total); }));
    write_ccdf(out, "ccdf_handoffs_per_session.csv",
               col([](const UserMetricRow& r) { return r.handoffs_per_session; }));
}

void emit_nsi(OutputTracker& out, const Trace& trace, TimePoint step,
              std::span<const TimePoint> gaps) {
    const auto grids = build_grids(trace, step);
    auto f = out.file("nsi.csv");
    f << "gap_seconds,nsi,node_count\n";
    for (const NsiPoint& p : nsi(grids, gaps))
        f << p.gap << ',' << format_double(p.nsi) << ',' << p.node_count << '\n';
}

void emit_encounters(OutputTracker& out, const Trace& trace,
                     std::span<const EncounterEvent> events, const EncounterSummary& summary) {
    {
        auto f = out.file("encounters.csv");
        f << "a,b,location,start,end\n";
        for (const EncounterEvent& ev : events)
            f << trace.node_name(ev.a) << ',' << trace.node_name(ev.b) << ','
              << trace.location_name(ev.location) << ',' << ev.interval.start << ','
              << ev.interval.end << '\n';
    }
    {
        auto f = out.file("pair_aggregates.csv");
        f << "a,b,event_count,total_duration,location_count\n";
        for (const PairAggregate& p : summary.pairs)
            f << trace.node_name(p.a) << ',' << trace.node_name(p.b) << ',' << p.event_count
              << ',' << p.total_duration << ',' << p.locations.size() << '\n';
    }
    {
        auto f = out.file("node_encounters.csv");
        f << "node,unique_count,total_count,unique_fraction\n";
        for (const NodeEncounterStats& s : summary.nodes)
            f << trace.node_name(s.node) << ',' << s.unique_count << ',' << s.total_count << ','
              << format_double(s.unique_fraction) << '\n';
    }
    std::vector<double> v(summary.nodes.size());
    for (std::size_t i = 0; i < summary.nodes.size(); ++i)
        v[i] = static_cast<double>(summary.nodes[i].total_count);
    write_ccdf(out, "ccdf_total_encounters.csv", v);
    for (std::size_t i = 0; i < summary.nodes.size(); ++i) v[i] = summary.nodes[i].unique_fraction;
    write_ccdf(out, "ccdf_unique_fraction.csv", v);
}

void emit_friendship(OutputTracker& out, const Trace& trace,
                     std::span<const FriendshipRow> rows) {
    {
        auto f = out.file("friendship.csv");
        f << "from,to,frd_t,frd_c,frd_l\n";
        for (const FriendshipRow& r : rows)
            f << trace.node_name(r.from) << ',' << trace.node_name(r.to) << ','
              << format_double(r.frd_t) << ',' << format_double(r.frd_c) << ','
              << format_double(r.frd_l) << '\n';
    }
    {
        auto f = out.file("asymmetry.csv");
        f << "r_time,r_count,r_location,pair_count\n";
        try {
            const AsymmetryResult a = friendship_asymmetry(rows);
            f << format_double(a.r_time) << ',' << format_double(a.r_count) << ','
              << format_double(a.r_location) << ',' << a.pair_count << '\n';
        } catch (const Error&) {
            // Not enough pairs or a constant index: leave just the header.
        }
    }
    std::vector<double> v(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) v[i] = rows[i].frd_t;
    write_ccdf(out, "ccdf_frd_t.csv", v);
}

void emit_ergraph(OutputTracker& out, const Trace& trace,
                  std::span<const EncounterEvent> events, std::span<const TimePoint> windows,
                  std::uint64_t seed) {
    {
        auto f = out.file("ergraph_metrics.csv");
        f << "window,n,mean_degree,cc,dr,pl,cc_norm,pl_norm\n";
        for (const EvolveRow& r : evolve_metrics(trace, events, windows, seed))
            f << r.window_length << ',' << r.raw.node_count << ','
              << format_double(r.raw.mean_degree) << ',' << format_double(r.raw.cc) << ','
              << format_double(r.raw.dr) << ',' << format_double(r.raw.pl) << ','
              << format_double(r.cc_norm) << ',' << format_double(r.pl_norm) << '\n';
    }
    {
        auto population = nodes_in_window(trace, trace.span());
        auto summary = aggregate_pairs(events, population);
        auto f = out.file("edges.csv");
        f << "a,b\n";
        for (const PairAggregate& p : summary.pairs)
            f << trace.node_name(p.a) << ',' << trace.node_name(p.b) << '\n';
    }
}

void emit_fits(OutputTracker& out, const EncounterSummary& summary,
               std::span<const FriendshipRow> rows) {
    auto f = out.file("fit_results.csv");
    f << "distribution,target,alpha,beta,c,k,lambda,sse,d_stat\n";
    std::vector<double> v(summary.nodes.size());
    for (std::size_t i = 0; i < summary.nodes.size(); ++i)
        v[i] = static_cast<double>(summary.nodes[i].total_count);
    try {
        const BiParetoFit fit = fit_bipareto(ccdf(v));
        f << "bipareto,total_encounters," << format_double(fit.params.alpha) << ','
          << format_double(fit.params.beta) << ',' << format_double(fit.params.c) << ','
          << format_double(fit.params.k) << ",," << format_double(fit.sse) << ','
          << format_double(fit.d_stat) << '\n';
    } catch (const Error&) {
        // Desk-size traces can be too small to fit; skip the row.
    }
    v.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) v[i] = rows[i].frd_t;
    try {
        if (v.empty()) throw InsufficientPoints("no friendship rows");
        const ExponentialFit fit = fit_exponential(ccdf(v));
        f << "exponential,frd_t,,,,," << format_double(fit.params.lambda) << ','
          << format_double(fit.sse) << ',' << format_double(fit.d_stat) << '\n';
    } catch (const Error&) {
    }
}

void emit_diffusion(OutputTracker& out, const Trace& trace,
                    std::span<const EncounterEvent> events,
                    std::span<const TimePoint> windows, std::span<const double> fractions,
                    double source_fraction) {
    const SweepDetail detail =
        sweep_selfish_detailed(trace, events, windows, fractions, source_fraction);
    {
        auto f = out.file("diffusion.csv");
        f << "window,selfish_fraction,source,receive_ratio,mean_delay\n";
        for (const RunRow& r : detail.runs)
            f << r.window_length << ',' << format_double(r.selfish_fraction) << ','
              << trace.node_name(r.source) << ',' << format_double(r.receive_ratio) << ','
              << format_double(r.mean_delay) << '\n';
    }
    {
        auto f = out.file("diffusion_summary.csv");
        f << "window,selfish_fraction,mean_receive_ratio,mean_delay,source_count,population\n";
        for (const SweepRow& r : detail.summary)
            f << r.window_length << ',' << format_double(r.selfish_fraction) << ','
              << format_double(r.mean_receive_ratio) << ',' << format_double(r.mean_delay) << ','
              << r.source_count << ',' << r.population << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wireless association trace toolkit: sessions, encounters, graphs, diffusion"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "Worker thread cap (0 = TRACE_LAB_THREADS or hardware)");
    std::string config_path;
    app.add_option("--config", config_path, "JSON file supplying defaults for unset options");

    // Shared option storage; only the parsed subcommand reads from it.
    std::string input;
    std::string output = "out";
    std::uint64_t seed = 42;
    TimePoint interval = 300;
    std::string policy = "conservative";
    TimePoint step = 60;
    std::vector<TimePoint> gaps;
    std::vector<TimePoint> windows;
    std::vector<TimePoint> diffusion_windows;
    std::vector<double> selfish = {0.0};
    double source_fraction = 0.30;
    std::uint32_t max_rank = 10;
    std::string dist = "bipareto";
    std::string dimension = "t";
    std::string segment = "top";
    double fraction = 0.1;
    CampusSpec campus;

    auto add_io = [&](CLI::App* cmd, bool needs_input = true) {
        if (needs_input) cmd->add_option("--input,-i", input, "Input file")->required();
        cmd->add_option("--output,-o", output, "Output directory");
    };

    CLI::App* c_ingest = app.add_subcommand("ingest", "Validate and canonicalize an event trace");
    add_io(c_ingest);

    CLI::App* c_recon = app.add_subcommand("reconstruct", "Turn a poll trace into an event trace");
    add_io(c_recon);
    c_recon->add_option("--interval", interval, "Polling interval, seconds");
    c_recon->add_option("--policy", policy, "conservative holds 1 interval, relaxed holds 4")
        ->check(CLI::IsMember({"conservative", "relaxed"}));

    CLI::App* c_emul = app.add_subcommand("emulate-poll", "Sample an event trace at poll epochs");
    add_io(c_emul);
    c_emul->add_option("--interval", interval, "Polling interval, seconds");

    CLI::App* c_user = app.add_subcommand("user-metrics", "Per-user activity metrics and CCDFs");
    add_io(c_user);
    c_user->add_option("--max-rank", max_rank, "Prevalence curve depth");

    CLI::App* c_nsi = app.add_subcommand("nsi", "Network similarity index over time gaps");
    add_io(c_nsi);
    c_nsi->add_option("--step", step, "Snapshot grid step, seconds");
    c_nsi->add_option("--gaps", gaps, "Comma-separated gaps, seconds")->delimiter(',');

    CLI::App* c_enc = app.add_subcommand("encounters", "Pairwise encounter events and aggregates");
    add_io(c_enc);

    CLI::App* c_frd = app.add_subcommand("friendship", "Directional friendship indexes");
    add_io(c_frd);

    CLI::App* c_erg = app.add_subcommand("ergraph", "Encounter-relationship graph metrics");
    add_io(c_erg);
    c_erg->add_option("--windows", windows, "Prefix window lengths, seconds")->delimiter(',');
    c_erg->add_option("--seed", seed, "Reference graph seed");

    CLI::App* c_fg = app.add_subcommand("friend-graph", "Directed graph of selected friends");
    add_io(c_fg);
    c_fg->add_option("--dimension", dimension, "Friendship index: t, c, or l")
        ->check(CLI::IsMember({"t", "c", "l"}));
    c_fg->add_option("--segment", segment, "Slice of each sorted friend list")
        ->check(CLI::IsMember({"top", "middle", "bottom"}));
    c_fg->add_option("--fraction", fraction, "Slice size as a fraction of the list");
    c_fg->add_option("--seed", seed, "Reference graph seed");

    CLI::App* c_fit = app.add_subcommand("fit", "Fit a distribution to a CCDF file");
    add_io(c_fit);
    c_fit->add_option("--dist", dist, "bipareto or exponential")
        ->check(CLI::IsMember({"bipareto", "exponential"}));

    CLI::App* c_diff = app.add_subcommand("diffuse", "Epidemic diffusion with selfish nodes");
    add_io(c_diff);
    c_diff->add_option("--windows", diffusion_windows, "Prefix window lengths, seconds")
        ->delimiter(',');
    c_diff->add_option("--selfish", selfish, "Selfish fractions")->delimiter(',');
    c_diff->add_option("--source-fraction", source_fraction, "Fraction of earliest nodes used as sources");

    CLI::App* c_synth = app.add_subcommand("synth", "Generate a synthetic campus trace");
    add_io(c_synth, false);
    c_synth->add_option("--nodes", campus.node_count, "Node count");
    c_synth->add_option("--locations", campus.location_count, "Location count");
    c_synth->add_option("--days", campus.days, "Trace length in days");
    c_synth->add_option("--step", campus.step, "Schedule quantum, seconds");
    c_synth->add_option("--heavy-mix", campus.heavy_mix, "Fraction of heavy users");
    c_synth->add_option("--home-weight", campus.home_weight, "Share of online time at home");
    c_synth->add_option("--jitter", campus.jitter, "Schedule jitter, seconds");
    c_synth->add_option("--zipf", campus.zipf_exponent, "Location popularity exponent");
    c_synth->add_option("--skip-heavy", campus.skip_day_heavy, "Heavy-user skip-day probability");
    c_synth->add_option("--skip-light", campus.skip_day_light, "Light-user skip-day probability");
    c_synth->add_option("--visit-prob", campus.secondary_visit_prob,
                        "Chance a day includes excursions");
    c_synth->add_flag("--always-on", campus.always_on, "Full-day single-location presence");
    c_synth->add_option("--seed", campus.seed, "Generator seed");

    CLI::App* c_rep = app.add_subcommand("report", "Run the full pipeline into one directory");
    add_io(c_rep);
    c_rep->add_option("--seed", seed, "Seed for reference graphs");
    c_rep->add_option("--max-rank", max_rank, "Prevalence curve depth");
    c_rep->add_option("--step", step, "NSI grid step, seconds");
    c_rep->add_option("--gaps", gaps, "NSI gaps, seconds")->delimiter(',');
    c_rep->add_option("--windows", windows, "Graph window lengths, seconds")->delimiter(',');
    c_rep->add_option("--diffusion-windows", diffusion_windows, "Diffusion window lengths")
        ->delimiter(',');
    c_rep->add_option("--selfish", selfish, "Selfish fractions")->delimiter(',');
    c_rep->add_option("--source-fraction", source_fraction, "Diffusion source fraction");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();

    OutputTracker tracker;
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path, std::ios::binary);
            if (!in) throw UsageError("cannot open config: " + config_path);
            g_config = json::parse(in, nullptr, true, true);
        }
        overlay(sub, "--output", output);
        overlay(sub, "--input", input);
        overlay(sub, "--seed", seed);
        overlay(&app, "--threads", threads);
        if (threads > 0) parallel::set_thread_cap(static_cast<unsigned>(threads));

        tracker.dir = output;
        fs::create_directories(tracker.dir);

        if (sub == c_ingest) {
            const Trace trace = Trace::build(load_events(input));
            auto f = tracker.file("events.csv");
            const auto records = trace.to_records();
            write_event_trace(f, records);
            write_manifest(tracker, name,{input}, json{{"input", input}});
        } else if (sub == c_recon) {
            overlay(sub, "--interval", interval);
            overlay(sub, "--policy", policy);
            const PollingPolicy pp = policy == "relaxed" ? PollingPolicy::relaxed(interval)
                                                         : PollingPolicy::conservative(interval);
            const Trace trace = Trace::build(reconstruct_from_polls(load_polls(input), pp));
            auto f = tracker.file("events.csv");
            const auto records = trace.to_records();
            write_event_trace(f, records);
            write_manifest(tracker, name,{input},
                           json{{"input", input}, {"interval", interval}, {"policy", policy}});
        } else if (sub == c_emul) {
            overlay(sub, "--interval", interval);
            const auto samples = emulate_polling(load_events(input), interval);
            auto f = tracker.file("polls.csv");
            write_poll_trace(f, samples);
            write_manifest(tracker, name,{input},
                           json{{"input", input}, {"interval", interval}});
        } else if (sub == c_user) {
            overlay(sub, "--max-rank", max_rank);
            const Trace trace = Trace::build(load_events(input));
            emit_user_metrics(tracker, trace, derive_all_sessions(trace), max_rank);
            write_manifest(tracker, name,{input},
                           json{{"input", input}, {"max_rank", max_rank}});
        } else if (sub == c_nsi) {
            overlay(sub, "--step", step);
            overlay(sub, "--gaps", gaps);
            if (gaps.empty())
                gaps = {3600,  7200,   14400,  28800,  43200,
                        86400, 172800, 345600, 604800, 1209600};
            const Trace trace = Trace::build(load_events(input));
            emit_nsi(tracker, trace, step, gaps);
            write_manifest(tracker, name,{input},
                           json{{"input", input}, {"step", step}, {"gaps", gaps}});
        } else if (sub == c_enc) {
            const Trace trace = Trace::build(load_events(input));
            const auto events = extract_encounters(trace);
            const auto population = nodes_in_window(trace, trace.span());
            const auto summary = aggregate_pairs(events, population);
            emit_encounters(tracker, trace, events, summary);
            write_manifest(tracker, name,{input}, json{{"input", input}});
        } else if (sub == c_frd) {
            const Trace trace = Trace::build(load_events(input));
            const auto events = extract_encounters(trace);
            const auto rows = friendship(events, trace, derive_all_sessions(trace));
            emit_friendship(tracker, trace, rows);
            write_manifest(tracker, name,{input}, json{{"input", input}});
        } else if (sub == c_erg) {
            overlay(sub, "--windows", windows);
            const Trace trace = Trace::build(load_events(input));
            const auto events = extract_encounters(trace);
            if (windows.empty()) windows = default_windows(trace.span().length());
            emit_ergraph(tracker, trace, events, windows, seed);
            write_manifest(tracker, name,{input},
                           json{{"input", input}, {"windows", windows}, {"seed", seed}});
        } else if (sub == c_fg) {
            overlay(sub, "--dimension", dimension);
            overlay(sub, "--segment", segment);
            overlay(sub, "--fraction", fraction);
            const Trace trace = Trace::build(load_events(input));
            const auto events = extract_encounters(trace);
            const auto rows = friendship(events, trace, derive_all_sessions(trace));
            const auto population = nodes_in_window(trace, trace.span());
            const FriendDimension dim = dimension == "t"   ? FriendDimension::Time
                                        : dimension == "c" ? FriendDimension::Count
                                                           : FriendDimension::Location;
            const FriendSegment seg = segment == "top"      ? FriendSegment::Top
                                      : segment == "middle" ? FriendSegment::Middle
                                                            : FriendSegment::Bottom;
            const ERGraph g = build_friend_graph(rows, dim, seg, fraction, population);
            const MetricsBundle bundle = metrics_with_references(g, seed);
            {
                auto f = tracker.file("friend_graph_metrics.csv");
                f << "n,mean_degree,cc,dr,pl,cc_norm,pl_norm\n";
                f << bundle.raw.node_count << ',' << format_double(bundle.raw.mean_degree) << ','
                  << format_double(bundle.raw.cc) << ',' << format_double(bundle.raw.dr) << ','
                  << format_double(bundle.raw.pl) << ',' << format_double(bundle.cc_norm) << ','
                  << format_double(bundle.pl_norm) << '\n';
            }
            {
                auto f = tracker.file("edges.csv");
                f << "from,to\n";
                for (std::uint32_t i = 0; i < g.node_count(); ++i)
                    for (std::uint32_t j : g.out_neighbors(i))
                        f << trace.node_name(g.ids()[i]) << ',' << trace.node_name(g.ids()[j])
                          << '\n';
            }
            write_manifest(tracker, name,{input},
                           json{{"input", input},
                                {"dimension", dimension},
                                {"segment", segment},
                                {"fraction", fraction},
                                {"seed", seed}});
        } else if (sub == c_fit) {
            overlay(sub, "--dist", dist);
            const CcdfTable table = read_ccdf_csv(input);
            auto f = tracker.file("fit_results.csv");
            f << "distribution,target,alpha,beta,c,k,lambda,sse,d_stat\n";
            const std::string target = fs::path(input).stem().string();
            if (dist == "bipareto") {
                const BiParetoFit fit = fit_bipareto(table);
                f << "bipareto," << target << ',' << format_double(fit.params.alpha) << ','
                  << format_double(fit.params.beta) << ',' << format_double(fit.params.c) << ','
                  << format_double(fit.params.k) << ",," << format_double(fit.sse) << ','
                  << format_double(fit.d_stat) << '\n';
            } else {
                const ExponentialFit fit = fit_exponential(table);
                f << "exponential," << target << ",,,,," << format_double(fit.params.lambda)
                  << ',' << format_double(fit.sse) << ',' << format_double(fit.d_stat) << '\n';
            }
            write_manifest(tracker, name,{input},
                           json{{"input", input}, {"dist", dist}});
        } else if (sub == c_diff) {
            overlay(sub, "--windows", diffusion_windows);
            overlay(sub, "--selfish", selfish);
            overlay(sub, "--source-fraction", source_fraction);
            const Trace trace = Trace::build(load_events(input));
            const auto events = extract_encounters(trace);
            if (diffusion_windows.empty())
                diffusion_windows = {std::max<TimePoint>(trace.span().length(), 1)};
            emit_diffusion(tracker, trace, events, diffusion_windows, selfish, source_fraction);
            write_manifest(tracker, name,{input},
                           json{{"input", input},
                                {"windows", diffusion_windows},
                                {"selfish", selfish},
                                {"source_fraction", source_fraction}});
        } else if (sub == c_synth) {
            overlay(sub, "--nodes", campus.node_count);
            overlay(sub, "--locations", campus.location_count);
            overlay(sub, "--days", campus.days);
            overlay(sub, "--step", campus.step);
            overlay(sub, "--heavy-mix", campus.heavy_mix);
            overlay(sub, "--home-weight", campus.home_weight);
            overlay(sub, "--jitter", campus.jitter);
            overlay(sub, "--zipf", campus.zipf_exponent);
            overlay(sub, "--skip-heavy", campus.skip_day_heavy);
            overlay(sub, "--skip-light", campus.skip_day_light);
            overlay(sub, "--visit-prob", campus.secondary_visit_prob);
            overlay(sub, "--always-on", campus.always_on);
            overlay(sub, "--seed", campus.seed);
            const Trace trace = Trace::build(generate(campus));
            auto f = tracker.file("events.csv");
            const auto records = trace.to_records();
            write_event_trace(f, records);
            write_manifest(tracker, name,{},
                           json{{"nodes", campus.node_count},
                                {"locations", campus.location_count},
                                {"days", campus.days},
                                {"step", campus.step},
                                {"heavy_mix", campus.heavy_mix},
                                {"home_weight", campus.home_weight},
                                {"jitter", campus.jitter},
                                {"zipf", campus.zipf_exponent},
                                {"skip_heavy", campus.skip_day_heavy},
                                {"skip_light", campus.skip_day_light},
                                {"visit_prob", campus.secondary_visit_prob},
                                {"always_on", campus.always_on},
                                {"seed", campus.seed}});
        } else if (sub == c_rep) {
            overlay(sub, "--max-rank", max_rank);
            overlay(sub, "--step", step);
            overlay(sub, "--gaps", gaps);
            overlay(sub, "--windows", windows);
            overlay(sub, "--diffusion-windows", diffusion_windows);
            overlay(sub, "--selfish", selfish);
            overlay(sub, "--source-fraction", source_fraction);
            const Trace trace = Trace::build(load_events(input));
            const auto sessions = derive_all_sessions(trace);
            const auto events = extract_encounters(trace);
            const auto population = nodes_in_window(trace, trace.span());
            const auto summary = aggregate_pairs(events, population);
            const auto frd_rows = friendship(events, trace, sessions);
            if (gaps.empty())
                gaps = {3600,  7200,   14400,  28800,  43200,
                        86400, 172800, 345600, 604800, 1209600};
            if (windows.empty()) windows = default_windows(trace.span().length());
            if (diffusion_windows.empty())
                diffusion_windows = default_diffusion_windows(trace.span().length());
            if (sub->count("--selfish") == 0 && !g_config.contains("selfish"))
                selfish = {0.0, 0.1, 0.3, 0.5, 0.7, 0.9};

            emit_user_metrics(tracker, trace, sessions, max_rank);
            emit_nsi(tracker, trace, step, gaps);
            emit_encounters(tracker, trace, events, summary);
            emit_friendship(tracker, trace, frd_rows);
            emit_ergraph(tracker, trace, events, windows, seed);
            emit_fits(tracker, summary, frd_rows);
            emit_diffusion(tracker, trace, events, diffusion_windows, selfish, source_fraction);
            write_manifest(tracker, name,{input},
                           json{{"input", input},
                                {"seed", seed},
                                {"max_rank", max_rank},
                                {"step", step},
                                {"gaps", gaps},
                                {"windows", windows},
                                {"diffusion_windows", diffusion_windows},
                                {"selfish", selfish},
                                {"source_fraction", source_fraction}});
        }
        return 0;
    } catch (const Error& e) {
        tracker.discard();
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.category());
    } catch (const json::exception& e) {
        tracker.discard();
        std::cerr << "error: config: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        tracker.discard();
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
