#include "pdd/hybrid.hpp"

#include <cmath>
#include <limits>

namespace pdd {

namespace {

std::vector<DetectionResult> merge_flags(
    const std::vector<std::size_t>& distance_flags,
    const std::vector<std::size_t>& density_flags, std::size_t frame_count) {
    std::vector<DetectionResult> results(frame_count);
    for (std::size_t i = 0; i < frame_count; ++i) results[i].frame_index = i;
    for (std::size_t idx : distance_flags) {
        if (idx >= frame_count) throw DataError("distance flag out of range");
        results[idx].distance_flag = true;
    }
    for (std::size_t idx : density_flags) {
        if (idx >= frame_count) throw DataError("density flag out of range");
        results[idx].density_flag = true;
    }
    for (DetectionResult& r : results)
        r.hybrid_flag = r.distance_flag || r.density_flag;
    return results;
}

double coefficient_of_variation(const std::vector<double>& values) {
    if (values.empty()) return 0.0;
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= double(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= double(values.size());
    return mean != 0.0 ? std::sqrt(var) / std::abs(mean) : 0.0;
}

}  // namespace

std::vector<DetectionResult> hybrid_detect(
    const std::vector<std::size_t>& distance_flags,
    const std::vector<std::size_t>& density_flags, std::size_t frame_count) {
    return merge_flags(distance_flags, density_flags, frame_count);
}

std::vector<DetectionResult> hybrid_detect(
    const std::vector<std::size_t>& distance_flags,
    const std::vector<std::size_t>& density_flags,
    const DistanceProfile& profile, const DensityScores& scores) {
    if (profile.distances.size() != scores.scores.size())
        throw DataError("distance profile and density scores disagree on size");
    std::vector<DetectionResult> results =
        merge_flags(distance_flags, density_flags, profile.distances.size());
    for (std::size_t i = 0; i < results.size(); ++i) {
        results[i].distance = profile.distances[i];
        results[i].density_score = scores.scores[i];
    }
    return results;
}

SensitivityVerdict classify_sensitivity(
    std::size_t distance_count, std::size_t density_count,
    std::size_t common_count,
    const std::vector<std::pair<double, std::size_t>>& points) {
    if (common_count > std::min(distance_count, density_count))
        throw DataError("common count exceeds a detector count");
    if (distance_count == 0 && density_count == 0)
        throw DataError("no outliers to classify");

    SensitivityVerdict verdict;
    verdict.distance_count = distance_count;
    verdict.density_count = density_count;
    verdict.common_count = common_count;
    verdict.impact =
        distance_count > density_count ? Impact::Distance : Impact::Density;

    if (!points.empty()) {
        std::vector<double> dists, scores;
        dists.reserve(points.size());
        scores.reserve(points.size());
        for (const auto& [d, s] : points) {
            dists.push_back(d);
            scores.push_back(double(s));
        }
        const double cv_scores = coefficient_of_variation(scores);
        verdict.stretch_ratio =
            cv_scores > 0
                ? coefficient_of_variation(dists) / cv_scores
                : std::numeric_limits<double>::infinity();
    }
    return verdict;
}

}  // namespace pdd
