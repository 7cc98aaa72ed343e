#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "egnet/dataset.hpp"
#include "egnet/error.hpp"

namespace egnet {

/// exp(||a - b|| / (2 sigma^2)) with the unsquared L2 norm. Always >= 1.
inline double distance(std::span<const double> a, std::span<const double> b, double sigma) {
    if (a.size() != b.size()) throw ArgumentError("distance: vector lengths differ");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ArgumentError("distance: sigma must be positive and finite");
    double ss = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!std::isfinite(a[i]) || !std::isfinite(b[i])) throw ArgumentError("distance: non-finite coordinate");
        const double diff = a[i] - b[i];
        ss += diff * diff;
    }
    const double d = std::exp(std::sqrt(ss) / (2.0 * sigma * sigma));
    if (!std::isfinite(d)) throw ArgumentError("distance: overflow (points too far apart for this sigma)");
    return d;
}

/// Symmetric N x N matrix of pairwise distances, diagonal exactly 1.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    DistanceMatrix(std::size_t n, double sigma) : n_(n), sigma_(sigma), d_(n * n, 1.0) {}

    [[nodiscard]] std::size_t size() const { return n_; }
    [[nodiscard]] double sigma() const { return sigma_; }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }

    void set(std::size_t i, std::size_t j, double v) {
        d_[i * n_ + j] = v;
        d_[j * n_ + i] = v;
    }

private:
    std::size_t n_ = 0;
    double sigma_ = 1.0;
    std::vector<double> d_;
};

inline DistanceMatrix build_distance_matrix(const Dataset& data, double sigma) {
    if (!data.is_complete()) throw ArgumentError("distance matrix requires a dataset without missing cells");
    DistanceMatrix dm(data.rows, sigma);
    for (std::size_t i = 0; i < data.rows; ++i) {
        for (std::size_t j = i + 1; j < data.rows; ++j) dm.set(i, j, distance(data.row(i), data.row(j), sigma));
    }
    return dm;
}

}  // namespace egnet
