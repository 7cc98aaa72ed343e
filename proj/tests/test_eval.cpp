#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "egnet/eval.hpp"

using namespace egnet;

namespace {

// Exhaustive best one-to-one accuracy, the reference for the Hungarian path.
double brute_force_accuracy(const std::vector<int>& pred, const std::vector<int>& truth) {
    std::vector<int> clusters = pred, classes = truth;
    for (auto* v : {&clusters, &classes}) {
        std::sort(v->begin(), v->end());
        v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    std::vector<int> perm = classes;
    std::size_t best = 0;
    do {
        std::size_t hit = 0;
        for (std::size_t i = 0; i < pred.size(); ++i) {
            const auto r = std::lower_bound(clusters.begin(), clusters.end(), pred[i]) - clusters.begin();
            hit += perm[static_cast<std::size_t>(r)] == truth[i] ? 1 : 0;
        }
        best = std::max(best, hit);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return static_cast<double>(best) / static_cast<double>(pred.size());
}

}  // namespace

TEST(MapLabels, Relabeling) {
    // B = 1, A = 0
    const auto m = map_labels({1, 1, 2, 2}, {1, 1, 0, 0});
    EXPECT_EQ(m.at(1), 1);
    EXPECT_EQ(m.at(2), 0);
}

TEST(MapLabels, OptimalAssignment) {
    const auto m = map_labels({1, 1, 2, 2, 2}, {0, 0, 0, 1, 1});
    EXPECT_EQ(m.at(1), 0);
    EXPECT_EQ(m.at(2), 1);
}

TEST(MapLabels, MajorityWhenCountsDiffer) {
    const auto m = map_labels({1, 1, 2, 2, 3, 3}, {0, 0, 1, 1, 0, 0});
    EXPECT_EQ(m.at(3), 0);
    EXPECT_EQ(m.at(2), 1);
    // Tie inside a cluster goes to the smaller class id.
    EXPECT_EQ(map_labels({5, 5, 6, 7}, {1, 0, 1, 1}).at(5), 0);
}

TEST(MapLabels, LengthMismatch) {
    EXPECT_THROW(map_labels({1, 2}, {1}), ArgumentError);
    EXPECT_THROW(accuracy({}, {}), ArgumentError);
}

TEST(Accuracy, Cases) {
    EXPECT_DOUBLE_EQ(accuracy({3, 3, 7, 7, 9}, {0, 0, 1, 1, 2}), 1.0);
    EXPECT_DOUBLE_EQ(accuracy({1, 1, 2, 2, 2}, {0, 0, 0, 1, 1}), 0.8);
    EXPECT_DOUBLE_EQ(accuracy(std::vector<int>(10, 1), {0, 0, 0, 0, 0, 1, 1, 1, 1, 1}), 0.5);
}

TEST(Accuracy, HungarianMatchesBruteForce) {
    std::mt19937_64 gen(9);
    for (int trial = 0; trial < 300; ++trial) {
        const int c = 1 + static_cast<int>(gen() % 6);
        const std::size_t n = 5 + gen() % 60;
        std::vector<int> pred(n), truth(n);
        for (std::size_t i = 0; i < n; ++i) {
            pred[i] = static_cast<int>(gen() % c) * 3 + 1;
            truth[i] = static_cast<int>(gen() % c);
        }
        if (!one_to_one_mapping(pred, truth)) continue;
        ASSERT_NEAR(accuracy(pred, truth), brute_force_accuracy(pred, truth), 1e-15);
    }
}

TEST(Accuracy, PermutationInvariance) {
    std::mt19937_64 gen(10);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 30;
        std::vector<int> pred(n), truth(n);
        for (std::size_t i = 0; i < n; ++i) {
            pred[i] = static_cast<int>(gen() % (2 + trial % 4));
            truth[i] = static_cast<int>(gen() % 3);
        }
        const double base = accuracy(pred, truth);
        std::vector<int> relabel(6);
        std::iota(relabel.begin(), relabel.end(), 10);
        std::shuffle(relabel.begin(), relabel.end(), gen);
        auto p2 = pred, t2 = truth;
        for (auto& v : p2) v = relabel[static_cast<std::size_t>(v)];
        EXPECT_DOUBLE_EQ(accuracy(p2, truth), base);
        std::vector<int> crel{2, 0, 1};
        for (auto& v : t2) v = crel[static_cast<std::size_t>(v)];
        EXPECT_DOUBLE_EQ(accuracy(pred, t2), base);
    }
}

TEST(Accuracy, MajorityFloor) {
    std::mt19937_64 gen(12);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 40;
        std::vector<int> pred(n), truth(n);
        for (std::size_t i = 0; i < n; ++i) {
            pred[i] = static_cast<int>(gen() % 5);
            truth[i] = static_cast<int>(gen() % 2);
        }
        if (one_to_one_mapping(pred, truth)) continue;
        const auto ones = static_cast<double>(std::count(truth.begin(), truth.end(), 1));
        EXPECT_GE(accuracy(pred, truth), std::max(ones, static_cast<double>(n) - ones) / static_cast<double>(n));
    }
}

TEST(Contingency, SumsToN) {
    const auto t = contingency({1, 2, 2, 3, 1}, {0, 0, 1, 1, 1});
    EXPECT_EQ(t.total(), 5);
    EXPECT_EQ(t.counts.size(), 3u);
}
