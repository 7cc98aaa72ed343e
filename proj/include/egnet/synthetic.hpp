#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>

#include "egnet/dataset.hpp"
#include "egnet/error.hpp"

namespace egnet {

struct BlobSpec {
    std::size_t blobs = 3;
    std::size_t points = 150;  // total, split as evenly as possible
    double radius = 5.0;       // centers sit evenly on a circle of this radius
    double spread = 0.5;       // isotropic standard deviation per blob
    std::uint64_t seed = 1;
};

/// Labelled 2-D Gaussian blobs. Normal draws use Box-Muller on a
/// 64-bit Mersenne Twister so output is identical across standard libraries.
inline Dataset make_blobs(const BlobSpec& spec) {
    if (spec.blobs == 0 || spec.points < spec.blobs) throw ArgumentError("need at least one point per blob");
    if (!(spec.spread >= 0.0) || !(spec.radius >= 0.0)) throw ArgumentError("radius and spread must be nonnegative");
    std::mt19937_64 gen(spec.seed);
    const auto unit = [&] { return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53; };

    Dataset d;
    d.name = "demo2d";
    d.rows = spec.points;
    d.cols = 2;
    d.feature_names = {"x", "y"};
    d.values.reserve(2 * spec.points);
    d.missing.assign(2 * spec.points, 0);
    std::vector<int> labels;
    for (std::size_t b = 0; b < spec.blobs; ++b) d.class_names.push_back("blob" + std::to_string(b + 1));
    for (std::size_t b = 0; b < spec.blobs; ++b) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(b) / static_cast<double>(spec.blobs);
        const double cx = spec.radius * std::cos(angle), cy = spec.radius * std::sin(angle);
        const std::size_t count = spec.points / spec.blobs + (b < spec.points % spec.blobs ? 1 : 0);
        for (std::size_t q = 0; q < count; ++q) {
            const double r = std::sqrt(-2.0 * std::log(unit()));
            const double theta = 2.0 * std::numbers::pi * unit();
            d.values.push_back(cx + spec.spread * r * std::cos(theta));
            d.values.push_back(cy + spec.spread * r * std::sin(theta));
            labels.push_back(static_cast<int>(b));
        }
    }
    d.labels = std::move(labels);
    return d;
}

}  // namespace egnet
