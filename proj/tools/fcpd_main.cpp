#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fcpd/csv.hpp"
#include "fcpd/detector.hpp"
#include "fcpd/errors.hpp"
#include "fcpd/metrics.hpp"
#include "fcpd/projections.hpp"
#include "fcpd/report.hpp"
#include "fcpd/simulation.hpp"
#include "fcpd/tuning.hpp"

namespace {

using fcpd::DataError;

constexpr std::uint64_t kSeedStride = 0x9e3779b97f4a7c15ULL;

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw fcpd::InternalError("to_chars failed");
    return std::string(buf, ptr);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open \"" + path + "\" for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw DataError("cannot open \"" + tmp + "\" for writing");
        out << content;
        out.flush();
        if (!out) {
            std::remove(tmp.c_str());
            throw DataError("failed writing \"" + tmp + "\"");
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw DataError("cannot move output into place at \"" + path + "\"");
    }
}

bool csv_has_header(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open \"" + path + "\" for reading");
    std::string first;
    std::getline(in, first);
    return first.rfind("s=", 0) == 0;
}

double median(std::vector<double> values) {
    if (values.empty()) throw fcpd::InternalError("median of empty vector");
    std::sort(values.begin(), values.end());
    std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) return values[mid];
    return (values[mid - 1] + values[mid]) / 2.0;
}

double mean(const std::vector<double>& values) {
    if (values.empty()) throw fcpd::InternalError("mean of empty vector");
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

struct GridFlags {
    double lo = 0.2;
    double hi = 5.0;
    double step = 0.1;

    fcpd::TuningGrid build() const { return fcpd::TuningGrid::ranged(lo, hi, step); }
};

void add_grid_flags(CLI::App* cmd, GridFlags& flags) {
    cmd->add_option("--grid-min", flags.lo, "Smallest sqrt(n) multiplier in the tuning grid");
    cmd->add_option("--grid-max", flags.hi, "Largest sqrt(n) multiplier in the tuning grid");
    cmd->add_option("--grid-step", flags.step, "Tuning grid increment");
}

struct DetectArgs {
    std::string input;
    std::string out;
    double alpha = 0.001;
    GridFlags grid;
    double lambda = 0.0;
    int c = 0;
    bool has_lambda = false;
    bool has_c = false;
};

void run_detect(const DetectArgs& args) {
    fcpd::FunctionalSeries series = fcpd::load_csv(args.input, csv_has_header(args.input));
    fcpd::DetectorConfig config;
    config.alpha = args.alpha;
    config.grid = args.grid.build();
    if (args.has_lambda) {
        fcpd::TunedParams fixed{args.lambda, args.c};
        config.override_tvn = fixed;
        config.override_fpc1 = fixed;
    }
    fcpd::ChangepointReport report = fcpd::detect(series, config);
    write_atomic(args.out, fcpd::emit_report(report));
    std::cout << "detected " << report.changepoints.size() << " changepoint(s); report at "
              << args.out << "\n";
}

struct SimulateArgs {
    std::string scenario_path;
    std::string out;
    double alpha = 0.001;
    GridFlags grid;
    std::uint64_t seed = 0;
    int replicates = 0;
    bool has_seed = false;
    bool has_replicates = false;
};

void run_simulate(const SimulateArgs& args) {
    fcpd::SimulationSpec spec = fcpd::parse_simulation_spec(read_file(args.scenario_path));
    if (args.has_seed) spec.seed = args.seed;
    if (args.has_replicates) spec.replicates = args.replicates;
    if (spec.replicates < 1) throw DataError("replicates must be at least 1");

    fcpd::DetectorConfig config;
    config.alpha = args.alpha;
    config.grid = args.grid.build();

    std::ostringstream out;
    out << "replicate,annotation_error,energy_error,n_true,n_detected,runtime_ms,"
           "log1p_annotation,log1p_energy\n";

    std::vector<double> annotations, energies, runtimes;
    int energy_missing = 0;
    for (int rep = 0; rep < spec.replicates; ++rep) {
        std::uint64_t rep_seed = spec.seed + kSeedStride * (static_cast<std::uint64_t>(rep) + 1);
        std::mt19937_64 rng(rep_seed);
        fcpd::Scenario scenario = fcpd::sample_scenario(spec.design, rng);
        scenario.seed = rng();

        auto [series, truth] = fcpd::generate_series(scenario);
        auto start = std::chrono::steady_clock::now();
        fcpd::ChangepointReport report = fcpd::detect(series, config);
        auto stop = std::chrono::steady_clock::now();
        double ms = std::chrono::duration<double, std::milli>(stop - start).count();

        fcpd::ErrorSummary score = fcpd::score_changepoints(report.changepoints, truth);
        annotations.push_back(score.annotation);
        if (score.energy)
            energies.push_back(*score.energy);
        else
            ++energy_missing;
        runtimes.push_back(ms);

        out << rep + 1 << ',' << score.annotation << ','
            << (score.energy ? format_double(*score.energy) : "NA") << ',' << truth.size()
            << ',' << report.changepoints.size() << ',' << format_double(ms) << ','
            << format_double(std::log1p(static_cast<double>(score.annotation))) << ','
            << (score.energy ? format_double(std::log1p(*score.energy)) : "NA") << '\n';
    }

    auto summary_row = [&](const std::string& label, double ann, std::optional<double> en,
                           double ms) {
        out << label << ',' << format_double(ann) << ','
            << (en ? format_double(*en) : "NA") << ",,," << format_double(ms) << ','
            << format_double(std::log1p(ann)) << ','
            << (en ? format_double(std::log1p(*en)) : "NA") << '\n';
    };
    std::optional<double> median_energy, mean_energy;
    if (!energies.empty()) {
        median_energy = median(energies);
        mean_energy = mean(energies);
    }
    summary_row("median", median(annotations), median_energy, median(runtimes));
    summary_row("mean", mean(annotations), mean_energy, mean(runtimes));

    write_atomic(args.out, out.str());
    std::cout << "simulated " << spec.replicates << " replicate(s); energy error missing in "
              << energy_missing << "; results at " << args.out << "\n";
}

struct TuneArgs {
    std::string input;
    std::string out;
    double alpha = 0.001;
    GridFlags grid;
};

void run_tune(const TuneArgs& args) {
    fcpd::FunctionalSeries series = fcpd::load_csv(args.input, csv_has_header(args.input));
    fcpd::TuningGrid grid = args.grid.build();

    nlohmann::ordered_json j;
    auto tuned_json = [&](const fcpd::TuningResult& result) {
        nlohmann::ordered_json t;
        t["lambda"] = result.lambda;
        t["c"] = result.c;
        t["bic"] = result.bic;
        t["changepoints"] = result.changepoints;
        return t;
    };

    fcpd::ProjectedSeries tvn = fcpd::tvn_projection(series);
    j["tvn"] = tuned_json(fcpd::grid_search(tvn.values, grid, args.alpha));
    try {
        fcpd::ProjectedSeries fpc = fcpd::fpc1_projection(series);
        j["fpc1"] = tuned_json(fcpd::grid_search(fpc.values, grid, args.alpha));
    } catch (const DataError& e) {
        if (std::string(e.what()).find("degenerate covariance") == std::string::npos) throw;
        j["fpc1"] = nullptr;
    }

    write_atomic(args.out, j.dump(2) + "\n");
    std::cout << "tuned parameters written to " << args.out << "\n";
}

struct BenchArgs {
    std::vector<int> sizes = {1000, 2000, 3000, 4000, 5000, 6000, 7000};
    int replicates = 3;
    std::uint64_t seed = 20240801;
    std::string out;
    double alpha = 0.001;
    GridFlags grid;
};

void run_bench(const BenchArgs& args) {
    if (args.replicates < 1) throw DataError("replicates must be at least 1");
    for (int n : args.sizes)
        if (n < 100) throw DataError("bench sizes must be at least 100");

    fcpd::DetectorConfig config;
    config.alpha = args.alpha;
    config.grid = args.grid.build();

    // Null data per the runtime study: mean-zero Gaussian process with the
    // standard Matern parameters, no path transform.
    fcpd::ScenarioDesign design;
    design.kind = fcpd::ScenarioKind::none;
    design.family = fcpd::ProcessFamily::gaussian;
    design.transform = fcpd::PathTransform::identity;

    std::ostringstream out;
    out << "n,median_ms\n";
    for (std::size_t i = 0; i < args.sizes.size(); ++i) {
        design.none_length = args.sizes[i];
        std::vector<double> times;
        for (int rep = 0; rep < args.replicates; ++rep) {
            std::uint64_t rep_seed =
                args.seed + kSeedStride * (static_cast<std::uint64_t>(i * 1000 + rep) + 1);
            std::mt19937_64 rng(rep_seed);
            fcpd::Scenario scenario = fcpd::sample_scenario(design, rng);
            scenario.seed = rng();
            auto [series, truth] = fcpd::generate_series(scenario);
            (void)truth;

            auto start = std::chrono::steady_clock::now();
            fcpd::ChangepointReport report = fcpd::detect(series, config);
            auto stop = std::chrono::steady_clock::now();
            (void)report;
            times.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
        }
        out << args.sizes[i] << ',' << format_double(median(times)) << '\n';
        std::cout << "n=" << args.sizes[i] << " median " << format_double(median(times))
                  << " ms\n";
    }
    write_atomic(args.out, out.str());
    std::cout << "benchmark results at " << args.out << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multiple changepoint detection for functional time series"};
    app.require_subcommand(1);

    DetectArgs detect_args;
    CLI::App* detect_cmd =
        app.add_subcommand("detect", "Detect changepoints in a CSV functional series");
    detect_cmd->add_option("input", detect_args.input, "Input CSV path")->required();
    detect_cmd->add_option("--out", detect_args.out, "Output report JSON path")->required();
    detect_cmd->add_option("--alpha", detect_args.alpha, "FDR level");
    CLI::Option* lambda_opt =
        detect_cmd->add_option("--lambda", detect_args.lambda, "Fixed fusion penalty (skips tuning)");
    CLI::Option* c_opt = detect_cmd->add_option("--c", detect_args.c, "Fixed linkage (skips tuning)");
    lambda_opt->needs(c_opt);
    c_opt->needs(lambda_opt);
    add_grid_flags(detect_cmd, detect_args.grid);

    SimulateArgs sim_args;
    CLI::App* sim_cmd =
        app.add_subcommand("simulate", "Run a simulation study from a scenario JSON");
    sim_cmd->add_option("scenario", sim_args.scenario_path, "Scenario JSON path")->required();
    sim_cmd->add_option("--out", sim_args.out, "Output CSV path")->required();
    sim_cmd->add_option("--alpha", sim_args.alpha, "FDR level");
    sim_cmd->add_option("--seed", sim_args.seed, "Seed override");
    sim_cmd->add_option("--replicates", sim_args.replicates, "Replicate count override");
    add_grid_flags(sim_cmd, sim_args.grid);

    TuneArgs tune_args;
    CLI::App* tune_cmd =
        app.add_subcommand("tune", "Report tuned (lambda, c) per projection for a CSV series");
    tune_cmd->add_option("input", tune_args.input, "Input CSV path")->required();
    tune_cmd->add_option("--out", tune_args.out, "Output JSON path")->required();
    tune_cmd->add_option("--alpha", tune_args.alpha, "FDR level");
    add_grid_flags(tune_cmd, tune_args.grid);

    BenchArgs bench_args;
    CLI::App* bench_cmd =
        app.add_subcommand("bench", "Measure detection runtime over a ladder of sizes");
    bench_cmd->add_option("--sizes", bench_args.sizes, "Series lengths to benchmark");
    bench_cmd->add_option("--replicates", bench_args.replicates, "Replicates per size");
    bench_cmd->add_option("--seed", bench_args.seed, "Base seed");
    bench_cmd->add_option("--out", bench_args.out, "Output CSV path")->required();
    bench_cmd->add_option("--alpha", bench_args.alpha, "FDR level");
    add_grid_flags(bench_cmd, bench_args.grid);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        detect_args.has_lambda = detect_cmd->count("--lambda") > 0;
        detect_args.has_c = detect_cmd->count("--c") > 0;
        sim_args.has_seed = sim_cmd->count("--seed") > 0;
        sim_args.has_replicates = sim_cmd->count("--replicates") > 0;

        if (detect_cmd->parsed()) run_detect(detect_args);
        if (sim_cmd->parsed()) run_simulate(sim_args);
        if (tune_cmd->parsed()) run_tune(tune_args);
        if (bench_cmd->parsed()) run_bench(bench_args);
        return 0;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const fcpd::InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
