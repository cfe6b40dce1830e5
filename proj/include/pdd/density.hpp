#pragma once

#include <vector>

#include "pdd/projection.hpp"

namespace pdd {

// Pooled n-nearest-neighbor lists: each point contributes the indices of its
// n nearest other points (never itself).
struct NeighborPool {
    std::size_t n = 0;
    std::vector<std::size_t> occurrences;  // size = n * point_count
};

struct DensityScores {
    std::vector<std::size_t> scores;  // per frame: frequency in the pool
};

// Exact all-pairs kNN; ties at equal distance broken toward the lower frame
// index. Requires point_count >= n + 1.
NeighborPool build_neighbor_pool(const std::vector<Point2D>& points,
                                 std::size_t n);

DensityScores density_scores(const NeighborPool& pool, std::size_t point_count);

// Indices with density score < 2.
std::vector<std::size_t> detect_density(const DensityScores& scores);

}  // namespace pdd
