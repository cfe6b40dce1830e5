#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pdd/pipeline.hpp"
#include "pdd/predictor.hpp"

namespace fs = std::filesystem;
using namespace pdd;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

struct RunConfig {
    std::size_t window = 24;
    std::size_t bins = 32;
    std::size_t neighbors = 5;
    std::string features = "open,low,high,close,volume";
    bool normalize = false;
    std::size_t shift = 1;
    double threshold = 0.0;
    std::size_t warmup = 10;
    std::string input;
    std::string ground_truth;
    std::string out_dir = "pdd-out";
    std::string detections_dir;
    bool first_only = false;
    std::size_t jobs = 1;
};

DetectionParams detection_params(const RunConfig& cfg) {
    DetectionParams p;
    p.window = cfg.window;
    p.bins = cfg.bins;
    p.neighbors = cfg.neighbors;
    p.features = FeatureSet::parse(cfg.features);
    p.normalize = cfg.normalize;
    if (cfg.threshold > 0) p.manual_threshold = cfg.threshold;
    return p;
}

std::string pair_slug(const PairDetection& d) {
    std::string pair = d.symbol_pair;
    std::replace(pair.begin(), pair.end(), '/', '-');
    return d.exchange.empty() ? pair : d.exchange + "_" + pair;
}

std::vector<std::string> collect_inputs(const std::string& input) {
    std::vector<std::string> files;
    if (fs::is_directory(input)) {
        for (const auto& entry : fs::directory_iterator(input))
            if (entry.is_regular_file() && entry.path().extension() == ".csv")
                files.push_back(entry.path().string());
        std::sort(files.begin(), files.end());
        if (files.empty())
            throw DataError("no .csv files in '" + input + "'");
    } else if (fs::exists(input)) {
        files.push_back(input);
    } else {
        throw DataError("input not found: '" + input + "'");
    }
    return files;
}

void write_pair_outputs(const PairDetection& d, const fs::path& dir) {
    fs::create_directories(dir);
    write_detections_csv(d, (dir / "detections.csv").string());
    write_projection_csv(d, (dir / "projection.csv").string());
    write_distances_csv(d, (dir / "distances.csv").string());
    write_histogram_csv(d, (dir / "histogram.csv").string());
    write_density_csv(d, (dir / "density.csv").string());
    write_density_distance_csv(d, (dir / "density_distance.csv").string());
}

int cmd_detect(const RunConfig& cfg, bool export_only) {
    const std::vector<std::string> files = collect_inputs(cfg.input);
    const DetectionParams params = detection_params(cfg);

    std::mutex io_mutex;
    std::atomic<std::size_t> next{0};
    std::atomic<int> failures{0};
    const std::size_t workers =
        std::max<std::size_t>(1, std::min(cfg.jobs, files.size()));

    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= files.size()) return;
            const std::string& file = files[i];
            try {
                CandleSeries series = parse_candles_file(file);
                PairDetection d = run_detection(series, params);
                write_pair_outputs(d, fs::path(cfg.out_dir) / pair_slug(d));
                std::size_t hybrid = 0;
                for (const DetectionResult& r : d.results)
                    if (r.hybrid_flag) ++hybrid;
                std::lock_guard<std::mutex> lock(io_mutex);
                std::cout << pair_slug(d) << ": " << d.results.size()
                          << " frames, " << d.distance_flags.size()
                          << " distance, " << d.density_flags.size()
                          << " density, " << hybrid << " hybrid";
                if (!export_only) {
                    std::cout << ", threshold "
                              << (d.threshold.provenance ==
                                          ThresholdProvenance::Automatic
                                      ? "auto "
                                      : "manual ")
                              << d.threshold.value;
                    if (d.verdict)
                        std::cout << ", impact "
                                  << (d.verdict->impact == Impact::Distance
                                          ? "Distance"
                                          : "Density");
                }
                std::cout << "\n";
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(io_mutex);
                std::cerr << "error [" << file << "]: " << e.what() << "\n";
                failures = 1;
            }
        }
    };

    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();
    return failures ? kExitData : kExitOk;
}

int cmd_predict(const RunConfig& cfg) {
    PredictorConfig pc;
    pc.window = cfg.window;
    pc.shift = cfg.shift;
    pc.threshold = cfg.threshold;
    pc.warmup_frames = cfg.warmup;
    pc.features = FeatureSet::parse(cfg.features);
    pc.first_only = cfg.first_only;
    if (!(pc.threshold > 0))
        throw DataError("predict requires --threshold > 0");

    auto emit_alert = [&](const PredictionAlert& a) {
        nlohmann::json j = {{"frame_start_index", a.frame_start_index},
                            {"distance", a.distance},
                            {"threshold", a.threshold}};
        std::cout << j.dump() << "\n";
    };

    if (cfg.input == "-") {
        // incremental feed from stdin; alerts stream out as they fire
        StreamPredictor predictor(pc);
        std::string header;
        if (!std::getline(std::cin, header)) throw DataError("empty input");
        std::ostringstream buffered;
        buffered << header << "\n";
        std::string line;
        bool done = false;
        while (!done && std::getline(std::cin, line)) {
            std::istringstream one(header + "\n" + line + "\n");
            CandleSeries chunk = parse_candles(one, {});
            for (const DistanceSample& s : predictor.push(chunk.candles[0])) {
                if (auto a = StreamPredictor::to_alert(s, pc.threshold)) {
                    emit_alert(*a);
                    if (pc.first_only) {
                        done = true;
                        break;
                    }
                }
            }
        }
        return kExitOk;
    }

    CandleSeries series = parse_candles_file(cfg.input);
    for (const PredictionAlert& a : predict_stream(series, pc)) emit_alert(a);

    // Fig-7-style distance diagram for manual threshold setting
    fs::create_directories(cfg.out_dir);
    std::ofstream diagram(fs::path(cfg.out_dir) / "distance_diagram.csv");
    diagram << "frame_start_index,distance\n";
    char buf[64];
    for (const DistanceSample& s : predict_distances(series, pc)) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", s.frame_start_index,
                      s.distance);
        diagram << buf;
    }
    return kExitOk;
}

struct ParsedDetections {
    std::string exchange;
    std::string symbol_pair;
    std::vector<FrameSpan> spans;
    std::vector<std::size_t> distance_flags;
    std::vector<std::size_t> density_flags;
    std::vector<std::size_t> hybrid_flags;
};

ParsedDetections read_detections(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw DataError("cannot open '" + file.string() + "'");
    ParsedDetections d;
    const std::string dirname = file.parent_path().filename().string();
    if (auto pos = dirname.find('_'); pos != std::string::npos) {
        d.exchange = dirname.substr(0, pos);
        d.symbol_pair = dirname.substr(pos + 1);
        std::replace(d.symbol_pair.begin(), d.symbol_pair.end(), '-', '/');
    } else {
        d.symbol_pair = dirname;
    }
    std::string line;
    std::getline(in, line);  // header
    std::size_t index = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 8)
            throw DataError("malformed detections row in '" + file.string() +
                            "'");
        d.spans.push_back(
            {parse_timestamp(fields[1]), parse_timestamp(fields[2])});
        if (fields[5] == "1") d.distance_flags.push_back(index);
        if (fields[6] == "1") d.density_flags.push_back(index);
        if (fields[7] == "1") d.hybrid_flags.push_back(index);
        ++index;
    }
    return d;
}

int cmd_evaluate(const RunConfig& cfg) {
    const std::string det_dir =
        cfg.detections_dir.empty() ? cfg.input : cfg.detections_dir;
    if (det_dir.empty() || !fs::is_directory(det_dir))
        throw DataError("evaluate needs a detections directory");
    std::vector<GroundTruthEvent> events =
        parse_ground_truth_file(cfg.ground_truth);
    if (events.empty()) throw DataError("zero alleged events");

    std::vector<fs::path> det_files;
    for (const auto& entry : fs::recursive_directory_iterator(det_dir))
        if (entry.is_regular_file() &&
            entry.path().filename() == "detections.csv")
            det_files.push_back(entry.path());
    std::sort(det_files.begin(), det_files.end());
    if (det_files.empty())
        throw DataError("no detections.csv files under '" + det_dir + "'");

    std::vector<PairRow> rows;
    std::vector<bool> event_used(events.size(), false);
    for (const fs::path& file : det_files) {
        ParsedDetections d = read_detections(file);
        std::vector<GroundTruthEvent> pair_events;
        for (std::size_t i = 0; i < events.size(); ++i) {
            if (events[i].symbol_pair == d.symbol_pair &&
                (events[i].exchange.empty() || d.exchange.empty() ||
                 events[i].exchange == d.exchange)) {
                pair_events.push_back(events[i]);
                event_used[i] = true;
            }
        }

        PairRow row;
        row.exchange = d.exchange;
        row.symbol_pair = d.symbol_pair;
        row.alleged = pair_events.size();
        row.distance_detected = d.distance_flags.size();
        row.density_detected = d.density_flags.size();
        row.hybrid_detected = d.hybrid_flags.size();
        std::size_t common = 0;
        for (std::size_t idx : d.distance_flags)
            if (std::find(d.density_flags.begin(), d.density_flags.end(),
                          idx) != d.density_flags.end())
                ++common;
        row.common_outliers = common;

        auto dist_match = match_events(d.distance_flags, d.spans, pair_events);
        auto dens_match = match_events(d.density_flags, d.spans, pair_events);
        auto hyb_match = match_events(d.hybrid_flags, d.spans, pair_events);
        row.distance_matched = dist_match.true_positives;
        row.density_matched = dens_match.true_positives;
        row.true_positives = hyb_match.true_positives;
        row.false_positives = hyb_match.false_positives;
        for (const std::string& w : hyb_match.warnings)
            std::cerr << "warning [" << row.symbol_pair << "]: " << w << "\n";
        if (row.distance_detected + row.density_detected > 0)
            row.impact = classify_sensitivity(row.distance_detected,
                                              row.density_detected, common)
                             .impact;
        rows.push_back(std::move(row));
    }

    for (std::size_t i = 0; i < events.size(); ++i) {
        if (!event_used[i])
            std::cerr << "warning: no detections for pair "
                      << events[i].exchange << " " << events[i].symbol_pair
                      << "\n";
    }

    EvaluationReport report = summarize(rows);
    fs::create_directories(cfg.out_dir);
    {
        std::ofstream json(fs::path(cfg.out_dir) / "report.json");
        write_report_json(report, json);
    }
    {
        std::ofstream text(fs::path(cfg.out_dir) / "report.txt");
        write_report_text(report, text);
    }
    write_plot_data(report, (fs::path(cfg.out_dir) / "plots").string());
    write_report_text(report, std::cout);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pump-and-dump detection over OHLCV candle series"};
    app.set_config("--config");
    RunConfig cfg;
    const char* env_out = std::getenv("PDD_OUT_DIR");
    if (env_out && *env_out) cfg.out_dir = env_out;

    auto add_common = [&cfg](CLI::App* sub) {
        sub->add_option("--window", cfg.window, "Frame size W in candles")
            ->check(CLI::PositiveNumber);
        sub->add_option("--features", cfg.features,
                        "Comma-separated subset of open,low,high,close,volume");
        sub->add_option("--out", cfg.out_dir, "Output directory");
    };

    CLI::App* detect = app.add_subcommand("detect", "Batch P&D detection");
    detect->add_option("--input", cfg.input, "CSV file or directory of CSVs")
        ->required();
    add_common(detect);
    detect->add_option("--bins", cfg.bins, "Distance histogram bin count")
        ->check(CLI::Range(std::size_t(2), std::size_t(100000)));
    detect->add_option("--neighbors", cfg.neighbors,
                       "Density score neighbor count n")
        ->check(CLI::PositiveNumber);
    detect->add_flag("--normalize", cfg.normalize,
                     "Z-score each feature before framing");
    detect->add_option("--threshold", cfg.threshold,
                       "Manual distance threshold (overrides automatic)");
    detect->add_option("--jobs", cfg.jobs, "Parallel workers for batch mode")
        ->check(CLI::PositiveNumber);

    CLI::App* predict =
        app.add_subcommand("predict", "Streaming P&D prediction");
    predict->add_option("--input", cfg.input, "CSV file, or '-' for stdin")
        ->required();
    add_common(predict);
    predict->add_option("--shift", cfg.shift, "Shift size Sh (1 <= Sh <= W)")
        ->check(CLI::PositiveNumber);
    predict
        ->add_option("--threshold", cfg.threshold,
                     "Manual alert threshold T (required, > 0)")
        ->required();
    predict->add_option("--warmup", cfg.warmup,
                        "Frames used to fit the projection basis");
    predict->add_flag("--first-only", cfg.first_only,
                      "Stop at the first alert");

    CLI::App* evaluate =
        app.add_subcommand("evaluate", "Score detections against ground truth");
    evaluate
        ->add_option("--input", cfg.detections_dir,
                     "Directory with detect outputs")
        ->required();
    evaluate
        ->add_option("--ground-truth", cfg.ground_truth,
                     "CSV of (exchange, symbol_pair, timestamp)")
        ->required();
    evaluate->add_option("--out", cfg.out_dir, "Output directory");

    CLI::App* export_cmd =
        app.add_subcommand("export", "Write plot-data CSVs only");
    export_cmd->add_option("--input", cfg.input, "CSV file or directory")
        ->required();
    add_common(export_cmd);
    export_cmd->add_option("--bins", cfg.bins, "Distance histogram bin count");
    export_cmd->add_option("--neighbors", cfg.neighbors,
                           "Density score neighbor count n");
    export_cmd->add_flag("--normalize", cfg.normalize,
                         "Z-score each feature before framing");
    export_cmd->add_option("--jobs", cfg.jobs, "Parallel workers");

    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (detect->parsed()) return cmd_detect(cfg, false);
        if (predict->parsed()) return cmd_predict(cfg);
        if (evaluate->parsed()) return cmd_evaluate(cfg);
        if (export_cmd->parsed()) return cmd_detect(cfg, true);
        return kExitUsage;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
