#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fleetcover/cli_config.hpp"
#include "fleetcover/coverage.hpp"
#include "fleetcover/decimal.hpp"
#include "fleetcover/geo_grid.hpp"
#include "fleetcover/reports.hpp"
#include "fleetcover/solvers.hpp"
#include "fleetcover/synth.hpp"
#include "fleetcover/trajectory.hpp"

namespace fc = fleetcover;

namespace {

struct CommonInputs {
    std::vector<double> bounds;  // lat_min, lat_max, lon_min, lon_max
    double cell_size_m = 90.0;
    std::string weights_path;
    std::string hotspot_threshold = "1";
    std::vector<std::string> trajectories;
    std::string window_start;
    std::string window_end;
    std::int64_t slot_seconds = 0;
};

void add_common_options(CLI::App* sub, CommonInputs& in) {
    sub->add_option("--grid", in.bounds, "Bounding box lat_min,lat_max,lon_min,lon_max (degrees)")
        ->delimiter(',')
        ->expected(4)
        ->required();
    sub->add_option("--cell-size-m", in.cell_size_m, "Square cell edge in meters")->required();
    sub->add_option("--weights", in.weights_path,
                    "Cell weight CSV (header row,col,weight or lat,lon,weight); "
                    "unlisted cells weigh 1, omit for a uniform grid");
    sub->add_option("--hotspot-threshold", in.hotspot_threshold,
                    "Cells weighted strictly above this are hotspots (decimal, default 1)");
    sub->add_option("--trajectories", in.trajectories,
                    "Trajectory CSV (agent_id,timestamp,lat,lon); repeatable")
        ->required();
    sub->add_option("--window-start", in.window_start,
                    "Window start: epoch seconds or ISO-8601 with offset")
        ->required();
    sub->add_option("--window-end", in.window_end, "Window end, same formats; exclusive")
        ->required();
    sub->add_option("--slot-seconds", in.slot_seconds, "Time slot duration in seconds")
        ->required();
}

std::int64_t parse_time_flag(const std::string& text, const char* flag) {
    auto t = fc::parse_timestamp(text);
    if (!t)
        throw std::runtime_error(std::string(flag) + ": cannot parse timestamp \"" + text +
                                 "\" (use epoch seconds or ISO-8601 with a UTC offset)");
    return *t;
}

std::int64_t parse_decimal_flag(const std::string& text, const char* flag) {
    try {
        return fc::parse_decimal(text);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string(flag) + ": " + e.what());
    }
}

struct LoadedInputs {
    fc::WeightGrid weights;
    fc::TimeSlotting slotting;
    fc::SignatureMap signatures;
    fc::IngestStats stats;
};

LoadedInputs load_inputs(const CommonInputs& in) {
    LoadedInputs out;
    const auto grid = fc::build_grid(in.bounds[0], in.bounds[1], in.bounds[2], in.bounds[3],
                                     in.cell_size_m);
    const auto threshold = parse_decimal_flag(in.hotspot_threshold, "--hotspot-threshold");
    out.weights = in.weights_path.empty()
                      ? fc::uniform_weights(grid, threshold)
                      : fc::load_weights_csv_file(in.weights_path, grid, threshold);
    out.slotting = fc::TimeSlotting(parse_time_flag(in.window_start, "--window-start"),
                                    parse_time_flag(in.window_end, "--window-end"),
                                    in.slot_seconds);
    auto ingested = fc::ingest_files(in.trajectories, grid, out.slotting);
    out.signatures = std::move(ingested.signatures);
    out.stats = ingested.stats;
    return out;
}

void write_text(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content << std::flush;
        if (!std::cout) throw std::runtime_error("failed writing to stdout");
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << content << std::flush;
    if (!f) throw std::runtime_error("failed writing output file: " + path);
}

struct SolveOptions {
    std::string algorithm;
    std::size_t sensors = 0;
    std::uint64_t seed = 0;
    std::uint64_t budget = fc::kDefaultEvaluationBudget;
    std::size_t ga_pop = 40;
    std::size_t ga_iters = 20;
    std::string ga_replace = "0.2";
    std::size_t ga_patience = 3;
    std::string out = "-";
};

int run_solve(const CommonInputs& common, const SolveOptions& opts) {
    auto loaded = load_inputs(common);
    const fc::Instance instance{&loaded.weights, &loaded.signatures, loaded.slotting};
    fc::GaParams ga;
    ga.population_size = opts.ga_pop;
    ga.max_iterations = opts.ga_iters;
    ga.replace_fraction = parse_decimal_flag(opts.ga_replace, "--ga-replace");
    ga.convergence_patience = opts.ga_patience;
    ga.rng_seed = opts.seed;

    const std::vector<std::string> order =
        opts.algorithm == "all"
            ? std::vector<std::string>{"random", "exhaustive", "hotspot", "genetic", "greedy"}
            : std::vector<std::string>{opts.algorithm};

    nlohmann::json reports = nlohmann::json::array();
    for (const auto& algo : order) {
        fc::SolveReport report;
        if (algo == "random")
            report = fc::solve_random(instance, opts.sensors, opts.seed);
        else if (algo == "exhaustive")
            report = fc::solve_exhaustive(instance, opts.sensors, opts.budget);
        else if (algo == "hotspot")
            report = fc::solve_hotspot(instance, opts.sensors, opts.budget);
        else if (algo == "genetic")
            report = fc::solve_genetic(instance, opts.sensors, ga, opts.budget);
        else
            report = fc::solve_greedy(instance, opts.sensors);
        reports.push_back(fc::report_to_json(report));
    }

    const nlohmann::json doc = {{"ingest", fc::ingest_stats_to_json(loaded.stats)},
                                {"reports", std::move(reports)}};
    write_text(opts.out, doc.dump(2) + "\n");
    return 0;
}

struct HistogramOptions {
    std::size_t sensors = 0;
    std::size_t bins = 20;
    std::uint64_t budget = fc::kDefaultEvaluationBudget;
    std::string out = "-";
};

int run_histogram(const CommonInputs& common, const HistogramOptions& opts) {
    auto loaded = load_inputs(common);
    const fc::Instance instance{&loaded.weights, &loaded.signatures, loaded.slotting};
    const auto histogram =
        fc::compute_ccv_histogram(instance, opts.sensors, opts.bins, opts.budget);
    std::ostringstream csv;
    fc::write_histogram_csv(csv, histogram);
    write_text(opts.out, csv.str());
    return 0;
}

struct CoverageOptions {
    std::vector<std::string> selection;
    std::string out = "-";
};

int run_coverage_report(const CommonInputs& common, const CoverageOptions& opts) {
    auto loaded = load_inputs(common);
    const fc::Selection sel(opts.selection);
    const auto report = fc::compute_temporal_coverage(sel, loaded.signatures,
                                                      loaded.weights.grid, loaded.slotting);
    std::ostringstream csv;
    fc::write_coverage_csv(csv, report);
    write_text(opts.out, csv.str());
    return 0;
}

struct SynthOptions {
    std::vector<double> bounds;
    double cell_size_m = 90.0;
    std::size_t agents = 20;
    std::string window_start;
    std::string window_end;
    std::int64_t slot_seconds = 3600;
    std::int64_t ping_interval = 5;
    std::string route_model = "loop";
    std::size_t waypoints = 6;
    double speed_mps = 8.0;
    std::uint64_t seed = 0;
    std::string out = "trajectories.csv";
    std::string meta_out;
};

int run_synth(const SynthOptions& opts) {
    fc::SynthConfig cfg;
    cfg.grid = fc::build_grid(opts.bounds[0], opts.bounds[1], opts.bounds[2], opts.bounds[3],
                              opts.cell_size_m);
    cfg.n_agents = opts.agents;
    cfg.slotting = fc::TimeSlotting(parse_time_flag(opts.window_start, "--window-start"),
                                    parse_time_flag(opts.window_end, "--window-end"),
                                    opts.slot_seconds);
    cfg.ping_interval = opts.ping_interval;
    cfg.route_model = opts.route_model == "loop" ? fc::RouteModel::loop
                                                 : fc::RouteModel::back_and_forth;
    cfg.waypoints_per_agent = opts.waypoints;
    cfg.speed_mps = opts.speed_mps;
    cfg.rng_seed = opts.seed;

    std::ostringstream csv;
    const auto metadata = fc::generate(cfg, csv);
    write_text(opts.out, csv.str());
    const std::string meta_path = !opts.meta_out.empty() ? opts.meta_out
                                  : opts.out == "-"      ? "-"
                                                         : opts.out + ".meta.json";
    write_text(meta_path, metadata.dump(2) + "\n");
    return 0;
}

bool knows_long_option(const CLI::App* sub, const std::string& key) {
    for (const auto* opt : sub->get_options())
        for (const auto& name : opt->get_lnames())
            if (name == key) return true;
    return false;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);

    // --config is pulled out before CLI11 sees the command line; the file's
    // entries become ordinary tokens below.
    std::string config_path;
    for (auto it = args.begin(); it != args.end();) {
        if (*it == "--config") {
            if (std::next(it) == args.end()) {
                std::cerr << "error: --config needs a path\n";
                return 1;
            }
            config_path = *std::next(it);
            it = args.erase(it, std::next(it, 2));
        } else if (it->rfind("--config=", 0) == 0) {
            config_path = it->substr(9);
            it = args.erase(it);
        } else {
            ++it;
        }
    }
    if (config_path.empty())
        if (const char* env = std::getenv(fc::kConfigEnvVar)) config_path = env;

    CLI::App app{"Select the fleet vehicles whose sensors maximize weighted "
                 "grid coverage across time slots"};
    app.name("fleetcover");
    app.require_subcommand(1);
    app.footer("A config file (--config PATH or $" + std::string(fc::kConfigEnvVar) +
               ") holds `key = value` lines named after long options; "
               "command-line flags override it.");

    CommonInputs solve_common;
    SolveOptions solve_opts;
    CLI::App* solve = app.add_subcommand("solve", "Run selection algorithm(s), emit JSON reports");
    add_common_options(solve, solve_common);
    solve->add_option("--algorithm", solve_opts.algorithm,
                      "random | exhaustive | hotspot | genetic | greedy | all")
        ->required()
        ->check(CLI::IsMember({"random", "exhaustive", "hotspot", "genetic", "greedy", "all"}));
    solve->add_option("--sensors", solve_opts.sensors, "Sensor budget: max agents to select")
        ->required();
    solve->add_option("--seed", solve_opts.seed, "RNG seed for random and genetic");
    solve->add_option("--budget", solve_opts.budget,
                      "Evaluation budget for exhaustive enumeration (default 10000000)");
    solve->add_option("--ga-pop", solve_opts.ga_pop, "GA population size (default 40)");
    solve->add_option("--ga-iters", solve_opts.ga_iters, "GA max generations (default 20)");
    solve->add_option("--ga-replace", solve_opts.ga_replace,
                      "GA replaced fraction per generation, decimal in (0,1) (default 0.2)");
    solve->add_option("--ga-patience", solve_opts.ga_patience,
                      "GA stagnant generations before convergence (default 3)");
    solve->add_option("--out", solve_opts.out, "Report path, - for stdout");

    CommonInputs hist_common;
    HistogramOptions hist_opts;
    CLI::App* histogram =
        app.add_subcommand("histogram", "CCV distribution over every size-k selection, as CSV");
    add_common_options(histogram, hist_common);
    histogram->add_option("--sensors", hist_opts.sensors, "Selection size k")->required();
    histogram->add_option("--bins", hist_opts.bins, "Equal-width bucket count (default 20)");
    histogram->add_option("--budget", hist_opts.budget,
                          "Evaluation budget for the enumeration (default 10000000)");
    histogram->add_option("--out", hist_opts.out, "CSV path, - for stdout");

    CommonInputs cover_common;
    CoverageOptions cover_opts;
    CLI::App* coverage = app.add_subcommand(
        "coverage-report", "Per-cell temporal coverage of a given selection, as CSV");
    add_common_options(coverage, cover_common);
    coverage->add_option("--selection", cover_opts.selection, "Agent id (repeatable or comma-separated)")
        ->delimiter(',')
        ->required();
    coverage->add_option("--out", cover_opts.out, "CSV path, - for stdout");

    SynthOptions synth_opts;
    CLI::App* synth =
        app.add_subcommand("synth", "Generate a deterministic synthetic trajectory fleet");
    synth->add_option("--grid", synth_opts.bounds,
                      "Bounding box lat_min,lat_max,lon_min,lon_max (degrees)")
        ->delimiter(',')
        ->expected(4)
        ->required();
    synth->add_option("--cell-size-m", synth_opts.cell_size_m, "Square cell edge in meters");
    synth->add_option("--agents", synth_opts.agents, "Fleet size (default 20)");
    synth->add_option("--window-start", synth_opts.window_start,
                      "Emission window start (epoch or ISO-8601 with offset)")
        ->required();
    synth->add_option("--window-end", synth_opts.window_end, "Emission window end, exclusive")
        ->required();
    synth->add_option("--slot-seconds", synth_opts.slot_seconds,
                      "Slot duration carried in the config (default 3600)");
    synth->add_option("--ping-interval", synth_opts.ping_interval,
                      "Seconds between pings (default 5)");
    synth->add_option("--route-model", synth_opts.route_model, "loop | back_and_forth")
        ->check(CLI::IsMember({"loop", "back_and_forth"}));
    synth->add_option("--waypoints", synth_opts.waypoints, "Waypoints per route (default 6)");
    synth->add_option("--speed-mps", synth_opts.speed_mps, "Agent speed in m/s (default 8)");
    synth->add_option("--seed", synth_opts.seed, "Route RNG seed");
    synth->add_option("--out", synth_opts.out,
                      "Trajectory CSV path (default trajectories.csv), - for stdout");
    synth->add_option("--meta-out", synth_opts.meta_out,
                      "Route metadata JSON path (default <out>.meta.json)");

    const std::map<std::string, CLI::App*> subs = {{"solve", solve},
                                                   {"histogram", histogram},
                                                   {"coverage-report", coverage},
                                                   {"synth", synth}};

    if (!config_path.empty()) {
        try {
            const auto entries = fc::parse_config_file_at(config_path);
            CLI::App* sub = nullptr;
            std::size_t sub_pos = 0;
            for (std::size_t i = 0; i < args.size() && sub == nullptr; ++i) {
                auto found = subs.find(args[i]);
                if (found != subs.end()) {
                    sub = found->second;
                    sub_pos = i;
                }
            }
            if (sub != nullptr) {
                std::vector<std::string> typed;
                for (const auto& a : args) {
                    if (a.rfind("--", 0) != 0) continue;
                    const auto body = a.substr(2);
                    const auto eq = body.find('=');
                    typed.push_back(eq == std::string::npos ? body : body.substr(0, eq));
                }
                std::vector<std::pair<std::string, std::string>> applicable;
                for (const auto& entry : entries) {
                    if (entry.first == "config")
                        throw std::runtime_error("config key 'config' is not allowed");
                    if (knows_long_option(sub, entry.first)) {
                        applicable.push_back(entry);
                        continue;
                    }
                    // keys belonging to other subcommands are fine in a shared file
                    bool known_elsewhere = false;
                    for (const auto& [name, other] : subs)
                        known_elsewhere = known_elsewhere || knows_long_option(other, entry.first);
                    if (!known_elsewhere)
                        throw std::runtime_error("unknown config key: " + entry.first);
                }
                const auto tokens = fc::config_tokens(applicable, typed);
                args.insert(args.begin() + static_cast<std::ptrdiff_t>(sub_pos) + 1,
                            tokens.begin(), tokens.end());
            }
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return 1;
        }
    }

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (solve->parsed()) return run_solve(solve_common, solve_opts);
        if (histogram->parsed()) return run_histogram(hist_common, hist_opts);
        if (coverage->parsed()) return run_coverage_report(cover_common, cover_opts);
        if (synth->parsed()) return run_synth(synth_opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
