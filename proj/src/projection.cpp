#include "pdd/projection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace pdd {

namespace {

constexpr double kOffDiagTol = 1e-12;
constexpr int kMaxSweeps = 100;

// In-place cyclic Jacobi on a symmetric matrix stored row-major.
// On return `a` is (numerically) diagonal and the columns of `v` are the
// eigenvectors. Throws on non-convergence.
void jacobi_eigen(std::vector<double>& a, std::vector<double>& v,
                  std::size_t d) {
    v.assign(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) v[i * d + i] = 1.0;

    double frob = 0.0;
    for (double x : a) frob += x * x;
    frob = std::sqrt(frob);
    const double tol = kOffDiagTol * std::max(frob, 1e-300);

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < d; ++p)
            for (std::size_t q = p + 1; q < d; ++q)
                off += 2.0 * a[p * d + q] * a[p * d + q];
        if (std::sqrt(off) <= tol) return;

        for (std::size_t p = 0; p < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                const double apq = a[p * d + q];
                if (apq == 0.0) continue;
                const double app = a[p * d + p];
                const double aqq = a[q * d + q];
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) +
                                  std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t k = 0; k < d; ++k) {
                    const double akp = a[k * d + p];
                    const double akq = a[k * d + q];
                    a[k * d + p] = c * akp - s * akq;
                    a[k * d + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < d; ++k) {
                    const double apk = a[p * d + k];
                    const double aqk = a[q * d + k];
                    a[p * d + k] = c * apk - s * aqk;
                    a[q * d + k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < d; ++k) {
                    const double vkp = v[k * d + p];
                    const double vkq = v[k * d + q];
                    v[k * d + p] = c * vkp - s * vkq;
                    v[k * d + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    throw DataError("eigensolver failed to converge after " +
                    std::to_string(kMaxSweeps) + " sweeps");
}

void fix_sign(std::vector<double>& component) {
    std::size_t arg = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < component.size(); ++i) {
        if (std::abs(component[i]) > best) {
            best = std::abs(component[i]);
            arg = i;
        }
    }
    if (component[arg] < 0)
        for (double& x : component) x = -x;
}

}  // namespace

PcaBasis fit_pca(const std::vector<FrameVector>& vectors) {
    const std::size_t n = vectors.size();
    if (n < 3) throw DataError("PCA needs at least 3 vectors");
    const std::size_t d = vectors[0].values.size();
    if (d < 2) throw DataError("PCA needs dimension >= 2");
    for (const FrameVector& v : vectors)
        if (v.values.size() != d)
            throw DataError("inconsistent vector dimensions");

    PcaBasis basis;
    basis.mean.assign(d, 0.0);
    for (const FrameVector& v : vectors)
        for (std::size_t i = 0; i < d; ++i) basis.mean[i] += v.values[i];
    for (double& m : basis.mean) m /= double(n);

    // Sample covariance, divisor N-1.
    std::vector<double> cov(d * d, 0.0);
    std::vector<double> centered(d);
    for (const FrameVector& v : vectors) {
        for (std::size_t i = 0; i < d; ++i)
            centered[i] = v.values[i] - basis.mean[i];
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i; j < d; ++j)
                cov[i * d + j] += centered[i] * centered[j];
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            cov[i * d + j] /= double(n - 1);
            cov[j * d + i] = cov[i * d + j];
        }

    std::vector<double> eigvecs;
    jacobi_eigen(cov, eigvecs, d);

    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return cov[a * d + a] > cov[b * d + b];
    });

    for (int k = 0; k < 2; ++k) {
        const std::size_t col = order[std::size_t(k)];
        basis.eigenvalues[std::size_t(k)] = std::max(0.0, cov[col * d + col]);
        basis.components[std::size_t(k)].resize(d);
        for (std::size_t i = 0; i < d; ++i)
            basis.components[std::size_t(k)][i] = eigvecs[i * d + col];
        fix_sign(basis.components[std::size_t(k)]);
    }
    return basis;
}

Point2D project(const PcaBasis& basis, const FrameVector& vector) {
    const std::size_t d = basis.dimension();
    if (vector.values.size() != d)
        throw DataError("vector dimension does not match PCA basis");
    Point2D p;
    p.frame_index = vector.frame_index;
    for (std::size_t i = 0; i < d; ++i) {
        const double c = vector.values[i] - basis.mean[i];
        p.x += basis.components[0][i] * c;
        p.y += basis.components[1][i] * c;
    }
    return p;
}

std::vector<Point2D> project_all(const PcaBasis& basis,
                                 const std::vector<FrameVector>& vectors) {
    std::vector<Point2D> out;
    out.reserve(vectors.size());
    for (const FrameVector& v : vectors) out.push_back(project(basis, v));
    return out;
}

}  // namespace pdd
