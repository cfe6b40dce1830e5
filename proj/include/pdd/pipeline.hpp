#pragma once

#include <optional>
#include <string>

#include "pdd/distance.hpp"
#include "pdd/density.hpp"
#include "pdd/evaluation.hpp"
#include "pdd/framing.hpp"
#include "pdd/hybrid.hpp"
#include "pdd/market_data.hpp"
#include "pdd/projection.hpp"

namespace pdd {

struct DetectionParams {
    std::size_t window = 24;
    std::size_t bins = 32;
    std::size_t neighbors = 5;
    FeatureSet features = FeatureSet::all();
    bool normalize = false;
    // When set, replaces the histogram-derived distance threshold.
    std::optional<double> manual_threshold;
};

// Everything one detection run produces for a single pair.
struct PairDetection {
    std::string exchange;
    std::string symbol_pair;
    std::vector<FrameSpan> frame_spans;
    std::vector<Point2D> points;
    PcaBasis basis;
    DistanceProfile profile;
    DistanceHistogram histogram;
    DistanceThreshold threshold;
    DensityScores scores;
    std::vector<std::size_t> distance_flags;
    std::vector<std::size_t> density_flags;
    std::vector<DetectionResult> results;
    std::optional<SensitivityVerdict> verdict;  // absent when nothing flagged
};

// Frame -> flatten -> PCA -> distance + density + hybrid, per the detection
// defaults. Validates the series first and throws DataError on violations.
PairDetection run_detection(const CandleSeries& series,
                            const DetectionParams& params);

// Per-pair CSV exports (schemas documented in the README).
void write_projection_csv(const PairDetection& d, const std::string& path);
void write_distances_csv(const PairDetection& d, const std::string& path);
void write_histogram_csv(const PairDetection& d, const std::string& path);
void write_density_csv(const PairDetection& d, const std::string& path);
void write_detections_csv(const PairDetection& d, const std::string& path);
void write_density_distance_csv(const PairDetection& d,
                                const std::string& path);

}  // namespace pdd
