#pragma once

#include <array>
#include <vector>

#include "pdd/framing.hpp"

namespace pdd {

struct Point2D {
    std::size_t frame_index = 0;
    double x = 0.0;
    double y = 0.0;
};

// Top-2 principal axes of a set of frame vectors. Components are orthonormal,
// eigenvalues descending, sign fixed so each component's largest-magnitude
// coordinate is positive.
struct PcaBasis {
    std::vector<double> mean;
    std::array<std::vector<double>, 2> components;
    std::array<double, 2> eigenvalues = {0.0, 0.0};

    std::size_t dimension() const { return mean.size(); }
};

// Fits the basis via a cyclic Jacobi eigendecomposition of the sample
// covariance matrix (divisor N-1). Requires at least 3 vectors of a common
// dimension >= 2; throws DataError otherwise, and on non-convergence.
PcaBasis fit_pca(const std::vector<FrameVector>& vectors);

// Scores: x = component0 . (v - mean), y = component1 . (v - mean).
Point2D project(const PcaBasis& basis, const FrameVector& vector);

std::vector<Point2D> project_all(const PcaBasis& basis,
                                 const std::vector<FrameVector>& vectors);

}  // namespace pdd
