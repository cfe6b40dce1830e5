#include "pdd/distance.hpp"

#include <algorithm>
#include <cmath>

namespace pdd {

std::optional<std::size_t> find_split(const std::vector<std::size_t>& counts) {
    std::size_t first_populated = counts.size();
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] > 0) {
            first_populated = i;
            break;
        }
    }
    for (std::size_t i = first_populated; i < counts.size(); ++i)
        if (counts[i] == 0) return i;
    return std::nullopt;
}

DistanceProfile distance_profile(const std::vector<Point2D>& points) {
    if (points.empty()) throw DataError("distance profile of empty point set");
    DistanceProfile profile;
    for (const Point2D& p : points) {
        profile.centroid_x += p.x;
        profile.centroid_y += p.y;
    }
    profile.centroid_x /= double(points.size());
    profile.centroid_y /= double(points.size());
    profile.distances.reserve(points.size());
    for (const Point2D& p : points) {
        profile.distances.push_back(std::hypot(p.x - profile.centroid_x,
                                               p.y - profile.centroid_y));
    }
    return profile;
}

DistanceHistogram build_histogram(const DistanceProfile& profile,
                                  std::size_t bins) {
    if (bins < 2) throw DataError("histogram needs at least 2 bins");
    const double max_dist =
        *std::max_element(profile.distances.begin(), profile.distances.end());
    const double width = max_dist / double(bins);

    DistanceHistogram hist;
    hist.bin_edges.resize(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i)
        hist.bin_edges[i] = width * double(i);
    hist.counts.assign(bins, 0);
    for (double d : profile.distances) {
        std::size_t bin =
            width > 0 ? std::size_t(d / width) : 0;  // all-zero distances
        if (bin >= bins) bin = bins - 1;             // max lands in last bin
        ++hist.counts[bin];
    }
    hist.split_index = find_split(hist.counts);
    return hist;
}

DistanceThreshold auto_threshold(const DistanceHistogram& histogram) {
    if (!histogram.split_index) {
        throw DataError(
            "no empty bin; increase bin count or set threshold manually");
    }
    DistanceThreshold t;
    t.value = histogram.bin_edges[*histogram.split_index];
    t.provenance = ThresholdProvenance::Automatic;
    return t;
}

std::vector<std::size_t> detect_distance(const DistanceProfile& profile,
                                         const DistanceThreshold& threshold) {
    if (!std::isfinite(threshold.value))
        throw DataError("non-finite distance threshold");
    std::vector<std::size_t> flagged;
    for (std::size_t i = 0; i < profile.distances.size(); ++i)
        if (profile.distances[i] > threshold.value) flagged.push_back(i);
    return flagged;
}

}  // namespace pdd
