#include "pdd/density.hpp"

#include <algorithm>
#include <cmath>

namespace pdd {

NeighborPool build_neighbor_pool(const std::vector<Point2D>& points,
                                 std::size_t n) {
    if (n == 0) throw DataError("neighbor count must be positive");
    const std::size_t count = points.size();
    if (count < n + 1)
        throw DataError("need at least n+1 points for n-nearest-neighbor pool");

    NeighborPool pool;
    pool.n = n;
    pool.occurrences.reserve(n * count);

    std::vector<std::pair<double, std::size_t>> others;
    others.reserve(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        others.clear();
        for (std::size_t j = 0; j < count; ++j) {
            if (j == i) continue;
            const double dx = points[i].x - points[j].x;
            const double dy = points[i].y - points[j].y;
            others.emplace_back(dx * dx + dy * dy, j);
        }
        // pair ordering gives the tie rule: equal distance -> lower index.
        std::partial_sort(others.begin(), others.begin() + long(n),
                          others.end());
        for (std::size_t k = 0; k < n; ++k)
            pool.occurrences.push_back(others[k].second);
    }
    return pool;
}

DensityScores density_scores(const NeighborPool& pool,
                             std::size_t point_count) {
    if (point_count == 0) throw DataError("density scores over zero points");
    if (pool.occurrences.size() != pool.n * point_count)
        throw DataError("neighbor pool size inconsistent with point count");
    DensityScores scores;
    scores.scores.assign(point_count, 0);
    for (std::size_t idx : pool.occurrences) {
        if (idx >= point_count)
            throw DataError("neighbor pool references out-of-range index");
        ++scores.scores[idx];
    }
    return scores;
}

std::vector<std::size_t> detect_density(const DensityScores& scores) {
    std::vector<std::size_t> flagged;
    for (std::size_t i = 0; i < scores.scores.size(); ++i)
        if (scores.scores[i] < 2) flagged.push_back(i);
    return flagged;
}

}  // namespace pdd
