#pragma once

#include <vector>

#include "pdd/density.hpp"
#include "pdd/distance.hpp"

namespace pdd {

struct DetectionResult {
    std::size_t frame_index = 0;
    bool distance_flag = false;
    bool density_flag = false;
    bool hybrid_flag = false;  // always distance_flag || density_flag
    double distance = 0.0;
    std::size_t density_score = 0;
};

enum class Impact { Distance, Density };

struct SensitivityVerdict {
    Impact impact = Impact::Density;
    std::size_t distance_count = 0;
    std::size_t density_count = 0;
    std::size_t common_count = 0;
    // CV(distances) / CV(density scores); diagnostic only, the detector
    // counts decide the impact.
    double stretch_ratio = 0.0;
};

// Voting by union: one result per frame with per-detector provenance.
std::vector<DetectionResult> hybrid_detect(
    const std::vector<std::size_t>& distance_flags,
    const std::vector<std::size_t>& density_flags, std::size_t frame_count);

// Same, with distances and density scores attached for export.
std::vector<DetectionResult> hybrid_detect(
    const std::vector<std::size_t>& distance_flags,
    const std::vector<std::size_t>& density_flags,
    const DistanceProfile& profile, const DensityScores& scores);

// Impact = Distance iff distance_count > density_count (ties go to Density).
// `points` supplies (distance, density score) pairs for the stretch ratio.
// Throws DataError when both counts are zero.
SensitivityVerdict classify_sensitivity(
    std::size_t distance_count, std::size_t density_count,
    std::size_t common_count,
    const std::vector<std::pair<double, std::size_t>>& points = {});

}  // namespace pdd
