#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "egnet/metric.hpp"

using namespace egnet;

namespace {

Dataset line(std::vector<double> xs) {
    Dataset d;
    d.rows = xs.size();
    d.cols = 1;
    d.values = std::move(xs);
    d.missing.assign(d.rows, 0);
    d.feature_names = {"x"};
    return d;
}

}  // namespace

TEST(Distance, SelfIsOne) {
    const std::vector<double> a{1.5, -2.0};
    EXPECT_EQ(distance(a, a, 1.0), 1.0);
}

TEST(Distance, UnsquaredNorm) {
    const std::vector<double> o{0.0, 0.0}, two{0.0, 2.0}, one{1.0, 0.0};
    EXPECT_NEAR(distance(o, two, 1.0), std::exp(1.0), 1e-15);
    EXPECT_NEAR(distance(o, one, 1.0), 1.648721270700128, 1e-15);
    EXPECT_NEAR(distance(o, two, 2.0), std::exp(0.25), 1e-15);
}

TEST(Distance, Errors) {
    const std::vector<double> a{1.0}, b{1.0, 2.0}, bad{NAN};
    EXPECT_THROW(distance(a, b, 1.0), ArgumentError);
    EXPECT_THROW(distance(a, a, 0.0), ArgumentError);
    EXPECT_THROW(distance(a, bad, 1.0), ArgumentError);
}

TEST(DistanceMatrix, ThreePointLine) {
    const auto dm = build_distance_matrix(line({0, 1, 10}), 1.0);
    EXPECT_EQ(dm(0, 0), 1.0);
    EXPECT_EQ(dm(1, 1), 1.0);
    EXPECT_NEAR(dm(0, 1), 1.64872127070013, 1e-12);
    EXPECT_NEAR(dm(0, 2), 148.413159102577, 1e-10);
    EXPECT_NEAR(dm(1, 2), 90.0171313005218, 1e-10);
}

TEST(DistanceMatrix, DuplicatePointsAtSelfDistance) {
    const auto dm = build_distance_matrix(line({4, 4, 7}), 1.0);
    EXPECT_EQ(dm(0, 1), 1.0);
}

TEST(DistanceMatrix, PropertiesOnRandomPoints) {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(-3, 3);
    Dataset d;
    d.rows = 60;
    d.cols = 3;
    d.feature_names = {"a", "b", "c"};
    for (std::size_t q = 0; q < d.rows * d.cols; ++q) d.values.push_back(u(gen));
    d.missing.assign(d.values.size(), 0);
    const auto dm = build_distance_matrix(d, 1.0);
    for (std::size_t i = 0; i < d.rows; ++i) {
        EXPECT_EQ(dm(i, i), 1.0);
        for (std::size_t j = 0; j < d.rows; ++j) {
            EXPECT_EQ(dm(i, j), dm(j, i));
            EXPECT_GE(dm(i, j), 1.0);
            EXPECT_GT(1.0 / dm(i, j), 0.0);
            EXPECT_LE(1.0 / dm(i, j), 1.0);
        }
    }
    // Monotone in the Euclidean norm for a fixed anchor.
    for (std::size_t j = 1; j < d.rows; ++j) {
        for (std::size_t h = 1; h < d.rows; ++h) {
            double nj = 0, nh = 0;
            for (std::size_t c = 0; c < 3; ++c) {
                nj += std::pow(d.at(0, c) - d.at(j, c), 2);
                nh += std::pow(d.at(0, c) - d.at(h, c), 2);
            }
            if (nj < nh) {
                EXPECT_LT(dm(0, j), dm(0, h));
            }
        }
    }
}

TEST(DistanceMatrix, RequiresCompleteData) {
    auto d = line({1, 2});
    d.missing[1] = 1;
    EXPECT_THROW(build_distance_matrix(d, 1.0), ArgumentError);
}
