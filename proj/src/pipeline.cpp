#include "pdd/pipeline.hpp"

#include <cstdio>
#include <fstream>

namespace pdd {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    return out;
}

}  // namespace

PairDetection run_detection(const CandleSeries& series,
                            const DetectionParams& params) {
    const std::vector<Violation> violations = validate_series(series);
    if (!violations.empty()) {
        std::string msg = "invalid series";
        for (const Violation& v : violations) {
            msg += "; index " + std::to_string(v.index) + ": " + v.message;
            if (msg.size() > 400) break;
        }
        throw DataError(msg);
    }

    PairDetection d;
    d.exchange = series.exchange;
    d.symbol_pair = series.symbol_pair;

    const CandleSeries& working =
        params.normalize ? zscore_series(series) : series;
    const std::vector<Frame> frames = extract_frames(working, params.window);
    // spans come from the raw series timestamps, not the normalized copy
    for (const Frame& f : frames) {
        const std::size_t first = f.index * params.window;
        const std::size_t last = first + params.window - 1;
        d.frame_spans.push_back({series.candles[first].timestamp_min,
                                 series.candles[last].timestamp_min});
    }

    std::vector<FrameVector> vectors;
    vectors.reserve(frames.size());
    for (const Frame& f : frames)
        vectors.push_back(flatten_frame(f, params.features));

    d.basis = fit_pca(vectors);
    d.points = project_all(d.basis, vectors);
    d.profile = distance_profile(d.points);
    d.histogram = build_histogram(d.profile, params.bins);
    if (params.manual_threshold) {
        d.threshold = {*params.manual_threshold, ThresholdProvenance::Manual};
    } else {
        d.threshold = auto_threshold(d.histogram);
    }
    d.distance_flags = detect_distance(d.profile, d.threshold);

    const NeighborPool pool = build_neighbor_pool(d.points, params.neighbors);
    d.scores = density_scores(pool, d.points.size());
    d.density_flags = detect_density(d.scores);

    d.results = hybrid_detect(d.distance_flags, d.density_flags, d.profile,
                              d.scores);

    std::size_t common = 0;
    for (const DetectionResult& r : d.results)
        if (r.distance_flag && r.density_flag) ++common;
    if (!d.distance_flags.empty() || !d.density_flags.empty()) {
        std::vector<std::pair<double, std::size_t>> cloud;
        cloud.reserve(d.results.size());
        for (const DetectionResult& r : d.results)
            cloud.emplace_back(r.distance, r.density_score);
        d.verdict = classify_sensitivity(d.distance_flags.size(),
                                         d.density_flags.size(), common, cloud);
    }
    return d;
}

void write_projection_csv(const PairDetection& d, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "frame_index,x,y\n";
    char buf[96];
    for (const Point2D& p : d.points) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g\n", p.frame_index,
                      p.x, p.y);
        out << buf;
    }
}

void write_distances_csv(const PairDetection& d, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "frame_index,distance,flagged\n";
    char buf[96];
    for (const DetectionResult& r : d.results) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%d\n", r.frame_index,
                      r.distance, int(r.distance_flag));
        out << buf;
    }
}

void write_histogram_csv(const PairDetection& d, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "bin_left,bin_right,count,region\n";
    char buf[128];
    for (std::size_t i = 0; i < d.histogram.counts.size(); ++i) {
        const bool sparse =
            d.histogram.split_index && i >= *d.histogram.split_index;
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%zu,%s\n",
                      d.histogram.bin_edges[i], d.histogram.bin_edges[i + 1],
                      d.histogram.counts[i], sparse ? "sparse" : "dense");
        out << buf;
    }
}

void write_density_csv(const PairDetection& d, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "frame_index,density_score,flagged\n";
    for (const DetectionResult& r : d.results) {
        out << r.frame_index << "," << r.density_score << ","
            << int(r.density_flag) << "\n";
    }
}

void write_detections_csv(const PairDetection& d, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "frame_index,start_timestamp,end_timestamp,distance,density_score,"
           "distance_flag,density_flag,hybrid_flag\n";
    char buf[192];
    for (const DetectionResult& r : d.results) {
        const FrameSpan& span = d.frame_spans[r.frame_index];
        std::snprintf(buf, sizeof(buf), "%zu,%s,%s,%.17g,%zu,%d,%d,%d\n",
                      r.frame_index, format_timestamp(span.start_min).c_str(),
                      format_timestamp(span.end_min).c_str(), r.distance,
                      r.density_score, int(r.distance_flag),
                      int(r.density_flag), int(r.hybrid_flag));
        out << buf;
    }
}

void write_density_distance_csv(const PairDetection& d,
                                const std::string& path) {
    std::ofstream out = open_out(path);
    out << "distance,density_score\n";
    char buf[64];
    for (const DetectionResult& r : d.results) {
        std::snprintf(buf, sizeof(buf), "%.17g,%zu\n", r.distance,
                      r.density_score);
        out << buf;
    }
}

}  // namespace pdd
