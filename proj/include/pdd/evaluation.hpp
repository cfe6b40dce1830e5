#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pdd/candle.hpp"
#include "pdd/hybrid.hpp"

namespace pdd {

struct GroundTruthEvent {
    std::string exchange;
    std::string symbol_pair;
    std::int64_t timestamp_min = 0;
};

// Inclusive candle-time range covered by one frame.
struct FrameSpan {
    std::int64_t start_min = 0;
    std::int64_t end_min = 0;
};

struct MatchOutcome {
    std::size_t true_positives = 0;
    std::size_t false_positives = 0;
    std::size_t false_negatives = 0;
    std::vector<std::string> warnings;  // events outside the series range
};

struct PairRow {
    std::string exchange;
    std::string symbol_pair;
    std::size_t alleged = 0;
    std::size_t distance_detected = 0;
    std::size_t density_detected = 0;
    std::size_t hybrid_detected = 0;
    std::size_t distance_matched = 0;
    std::size_t density_matched = 0;
    std::size_t true_positives = 0;   // hybrid matches
    std::size_t false_positives = 0;  // hybrid_detected - true_positives
    std::size_t common_outliers = 0;
    Impact impact = Impact::Density;
};

struct EvaluationReport {
    std::vector<PairRow> rows;
    std::size_t alleged_total = 0;
    std::size_t distance_total = 0;
    std::size_t density_total = 0;
    std::size_t hybrid_total = 0;
    std::size_t common_total = 0;
    std::size_t false_positive_total = 0;
    double distance_success_rate = 0.0;
    double density_success_rate = 0.0;
    double hybrid_success_rate = 0.0;
    // Sum of common outliers over the size of the union of both detectors'
    // flags (= the hybrid total).
    double common_outlier_rate = 0.0;
};

// Parses a headered CSV with columns (exchange, symbol_pair, timestamp).
std::vector<GroundTruthEvent> parse_ground_truth(std::istream& in);
std::vector<GroundTruthEvent> parse_ground_truth_file(const std::string& path);

// Matches events against flagged frames: an event counts as detected iff an
// unused flagged frame's time span contains its timestamp (greedy in time
// order, one-to-one). Events outside every frame span of the series are
// reported as warnings and count as false negatives.
MatchOutcome match_events(const std::vector<std::size_t>& flagged_frames,
                          const std::vector<FrameSpan>& frame_spans,
                          std::vector<GroundTruthEvent> events);

// Builds a row from already-counted detections (no frame-level data), as
// when replaying published result tables. Matched counts are capped at the
// alleged count.
PairRow row_from_counts(std::string exchange, std::string symbol_pair,
                        std::size_t alleged, std::size_t distance_detected,
                        std::size_t density_detected,
                        std::size_t hybrid_detected,
                        std::size_t common_outliers);

// Aggregates rows; success_rate(method) = sum of matched / sum of alleged.
// Throws DataError on zero rows or zero alleged events overall.
EvaluationReport summarize(const std::vector<PairRow>& rows);

void write_report_text(const EvaluationReport& report, std::ostream& out);
void write_report_json(const EvaluationReport& report, std::ostream& out);

// Plot-data CSVs: success rates per method, per exchange, impact split,
// common-outlier rate, false positives per exchange.
void write_plot_data(const EvaluationReport& report,
                     const std::string& out_dir);

}  // namespace pdd
