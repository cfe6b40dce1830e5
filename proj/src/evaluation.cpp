#include "pdd/evaluation.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "json.hpp"

namespace pdd {

namespace {

const char* impact_name(Impact impact) {
    return impact == Impact::Distance ? "Distance" : "Density";
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        while (!field.empty() && std::isspace(unsigned(field.front())))
            field.erase(field.begin());
        while (!field.empty() && std::isspace(unsigned(field.back())))
            field.pop_back();
        out.push_back(field);
    }
    return out;
}

}  // namespace

std::vector<GroundTruthEvent> parse_ground_truth(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty ground truth file");
    std::vector<std::string> header = split_line(line);
    for (std::string& h : header)
        std::transform(h.begin(), h.end(), h.begin(),
                       [](unsigned char c) { return std::tolower(c); });
    int col_ex = -1, col_pair = -1, col_ts = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "exchange") col_ex = int(i);
        else if (header[i] == "symbol_pair" || header[i] == "pair")
            col_pair = int(i);
        else if (header[i] == "timestamp") col_ts = int(i);
    }
    if (col_ex < 0 || col_pair < 0 || col_ts < 0)
        throw DataError(
            "ground truth header needs exchange, symbol_pair, timestamp");

    std::vector<GroundTruthEvent> events;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::vector<std::string> fields = split_line(line);
        if (fields.size() != header.size())
            throw DataError("ground truth row " + std::to_string(row) +
                            ": wrong column count");
        GroundTruthEvent e;
        e.exchange = fields[std::size_t(col_ex)];
        e.symbol_pair = fields[std::size_t(col_pair)];
        try {
            e.timestamp_min = parse_timestamp(fields[std::size_t(col_ts)]);
        } catch (const DataError& err) {
            throw DataError("ground truth row " + std::to_string(row) + ": " +
                            err.what());
        }
        events.push_back(std::move(e));
    }
    return events;
}

std::vector<GroundTruthEvent> parse_ground_truth_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    return parse_ground_truth(in);
}

MatchOutcome match_events(const std::vector<std::size_t>& flagged_frames,
                          const std::vector<FrameSpan>& frame_spans,
                          std::vector<GroundTruthEvent> events) {
    MatchOutcome outcome;
    std::vector<std::size_t> flagged = flagged_frames;
    std::sort(flagged.begin(), flagged.end());
    std::sort(events.begin(), events.end(),
              [](const GroundTruthEvent& a, const GroundTruthEvent& b) {
                  return a.timestamp_min < b.timestamp_min;
              });

    const std::int64_t series_start =
        frame_spans.empty() ? 0 : frame_spans.front().start_min;
    const std::int64_t series_end =
        frame_spans.empty() ? 0 : frame_spans.back().end_min;

    std::vector<bool> used(flagged.size(), false);
    for (const GroundTruthEvent& e : events) {
        if (frame_spans.empty() || e.timestamp_min < series_start ||
            e.timestamp_min > series_end) {
            outcome.warnings.push_back(
                "event at " + format_timestamp(e.timestamp_min) +
                " outside series range");
            ++outcome.false_negatives;
            continue;
        }
        bool matched = false;
        for (std::size_t k = 0; k < flagged.size(); ++k) {
            if (used[k]) continue;
            const FrameSpan& span = frame_spans[flagged[k]];
            if (e.timestamp_min >= span.start_min &&
                e.timestamp_min <= span.end_min) {
                used[k] = true;
                matched = true;
                break;
            }
        }
        if (matched) ++outcome.true_positives;
        else ++outcome.false_negatives;
    }
    outcome.false_positives = flagged.size() - outcome.true_positives;
    return outcome;
}

PairRow row_from_counts(std::string exchange, std::string symbol_pair,
                        std::size_t alleged, std::size_t distance_detected,
                        std::size_t density_detected,
                        std::size_t hybrid_detected,
                        std::size_t common_outliers) {
    PairRow row;
    row.exchange = std::move(exchange);
    row.symbol_pair = std::move(symbol_pair);
    row.alleged = alleged;
    row.distance_detected = distance_detected;
    row.density_detected = density_detected;
    row.hybrid_detected = hybrid_detected;
    row.common_outliers = common_outliers;
    row.distance_matched = std::min(distance_detected, alleged);
    row.density_matched = std::min(density_detected, alleged);
    row.true_positives = std::min(hybrid_detected, alleged);
    row.false_positives = hybrid_detected - row.true_positives;
    row.impact = classify_sensitivity(distance_detected, density_detected,
                                      common_outliers)
                     .impact;
    return row;
}

EvaluationReport summarize(const std::vector<PairRow>& rows) {
    if (rows.empty()) throw DataError("no rows to summarize");
    EvaluationReport report;
    report.rows = rows;
    std::size_t distance_matched = 0, density_matched = 0, hybrid_matched = 0;
    for (const PairRow& r : rows) {
        report.alleged_total += r.alleged;
        report.distance_total += r.distance_detected;
        report.density_total += r.density_detected;
        report.hybrid_total += r.hybrid_detected;
        report.common_total += r.common_outliers;
        report.false_positive_total += r.false_positives;
        distance_matched += r.distance_matched;
        density_matched += r.density_matched;
        hybrid_matched += r.true_positives;
    }
    if (report.alleged_total == 0) throw DataError("zero alleged events");
    report.distance_success_rate =
        double(distance_matched) / double(report.alleged_total);
    report.density_success_rate =
        double(density_matched) / double(report.alleged_total);
    report.hybrid_success_rate =
        double(hybrid_matched) / double(report.alleged_total);
    const std::size_t union_total = report.hybrid_total;
    report.common_outlier_rate =
        union_total > 0 ? double(report.common_total) / double(union_total)
                        : 0.0;
    return report;
}

void write_report_text(const EvaluationReport& report, std::ostream& out) {
    out << std::left << std::setw(10) << "Exchange" << std::setw(12)
        << "Pair" << std::right << std::setw(9) << "Alleged" << std::setw(10)
        << "Distance" << std::setw(9) << "Density" << std::setw(8) << "Hybrid"
        << std::setw(5) << "TP" << std::setw(5) << "FP" << std::setw(8)
        << "Common" << "  Impact\n";
    for (const PairRow& r : report.rows) {
        out << std::left << std::setw(10) << r.exchange << std::setw(12)
            << r.symbol_pair << std::right << std::setw(9) << r.alleged
            << std::setw(10) << r.distance_detected << std::setw(9)
            << r.density_detected << std::setw(8) << r.hybrid_detected
            << std::setw(5) << r.true_positives << std::setw(5)
            << r.false_positives << std::setw(8) << r.common_outliers << "  "
            << impact_name(r.impact) << "\n";
    }
    out << std::left << std::setw(22) << "TOTAL" << std::right << std::setw(9)
        << report.alleged_total << std::setw(10) << report.distance_total
        << std::setw(9) << report.density_total << std::setw(8)
        << report.hybrid_total << "\n";
    out << std::fixed << std::setprecision(4);
    out << "success rate: distance " << report.distance_success_rate
        << ", density " << report.density_success_rate << ", hybrid "
        << report.hybrid_success_rate << "\n";
    out << "common outlier rate: " << report.common_outlier_rate << "\n";
    out << "false positives total: " << report.false_positive_total << "\n";
}

void write_report_json(const EvaluationReport& report, std::ostream& out) {
    nlohmann::json j;
    j["rows"] = nlohmann::json::array();
    for (const PairRow& r : report.rows) {
        j["rows"].push_back({{"exchange", r.exchange},
                             {"symbol_pair", r.symbol_pair},
                             {"alleged", r.alleged},
                             {"distance_detected", r.distance_detected},
                             {"density_detected", r.density_detected},
                             {"hybrid_detected", r.hybrid_detected},
                             {"true_positives", r.true_positives},
                             {"false_positives", r.false_positives},
                             {"common_outliers", r.common_outliers},
                             {"impact", impact_name(r.impact)}});
    }
    j["totals"] = {{"alleged", report.alleged_total},
                   {"distance", report.distance_total},
                   {"density", report.density_total},
                   {"hybrid", report.hybrid_total},
                   {"common", report.common_total},
                   {"false_positives", report.false_positive_total}};
    j["success_rates"] = {{"distance", report.distance_success_rate},
                          {"density", report.density_success_rate},
                          {"hybrid", report.hybrid_success_rate}};
    j["common_outlier_rate"] = report.common_outlier_rate;
    out << j.dump(2) << "\n";
}

void write_plot_data(const EvaluationReport& report,
                     const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    {
        std::ofstream f(fs::path(out_dir) / "success_rates.csv");
        f << "method,success_rate\n";
        f << "distance," << report.distance_success_rate << "\n";
        f << "density," << report.density_success_rate << "\n";
        f << "hybrid," << report.hybrid_success_rate << "\n";
    }
    {
        std::map<std::string, std::pair<std::size_t, std::size_t>> by_exchange;
        std::map<std::string, std::size_t> fp_by_exchange;
        for (const PairRow& r : report.rows) {
            by_exchange[r.exchange].first += r.true_positives;
            by_exchange[r.exchange].second += r.alleged;
            fp_by_exchange[r.exchange] += r.false_positives;
        }
        std::ofstream f(fs::path(out_dir) / "success_by_exchange.csv");
        f << "exchange,hybrid_success_rate\n";
        for (const auto& [ex, counts] : by_exchange) {
            f << ex << ","
              << (counts.second
                      ? double(counts.first) / double(counts.second)
                      : 0.0)
              << "\n";
        }
        std::ofstream g(fs::path(out_dir) / "false_positives.csv");
        g << "exchange,false_positives\n";
        for (const auto& [ex, fp] : fp_by_exchange) g << ex << "," << fp << "\n";
    }
    {
        std::size_t distance_pairs = 0, density_pairs = 0;
        for (const PairRow& r : report.rows)
            (r.impact == Impact::Distance ? distance_pairs : density_pairs)++;
        std::ofstream f(fs::path(out_dir) / "impact_split.csv");
        f << "impact,pairs\n";
        f << "Distance," << distance_pairs << "\n";
        f << "Density," << density_pairs << "\n";
    }
    {
        std::ofstream f(fs::path(out_dir) / "common_outlier_rate.csv");
        f << "common_outlier_rate\n" << report.common_outlier_rate << "\n";
    }
}

}  // namespace pdd
