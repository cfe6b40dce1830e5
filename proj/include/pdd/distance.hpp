#pragma once

#include <optional>
#include <vector>

#include "pdd/projection.hpp"

namespace pdd {

struct DistanceProfile {
    double centroid_x = 0.0;
    double centroid_y = 0.0;
    std::vector<double> distances;  // Euclidean to centroid, per frame
};

struct DistanceHistogram {
    std::vector<double> bin_edges;       // ascending, size = counts.size() + 1
    std::vector<std::size_t> counts;
    // Index of the bin where the sparse region starts: the first empty bin
    // after the dense region. Unset when no empty bin follows the data.
    std::optional<std::size_t> split_index;
};

enum class ThresholdProvenance { Automatic, Manual };

struct DistanceThreshold {
    double value = 0.0;
    ThresholdProvenance provenance = ThresholdProvenance::Manual;
};

// Locates the sparse-region start in a raw count sequence: the first empty
// bin following the first populated bin. Leading empty bins belong to
// neither region.
std::optional<std::size_t> find_split(const std::vector<std::size_t>& counts);

// Centroid = coordinate-wise mean. Throws DataError on empty input.
DistanceProfile distance_profile(const std::vector<Point2D>& points);

// Uniform-width bins over [0, max(distance)]; right-open except the last.
DistanceHistogram build_histogram(const DistanceProfile& profile,
                                  std::size_t bins);

// Threshold = left edge of the split bin. Throws when split_index is unset.
DistanceThreshold auto_threshold(const DistanceHistogram& histogram);

// Frame indices with distance strictly greater than the threshold.
std::vector<std::size_t> detect_distance(const DistanceProfile& profile,
                                         const DistanceThreshold& threshold);

}  // namespace pdd
