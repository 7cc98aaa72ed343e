#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <vector>

#include "egnet/error.hpp"

namespace egnet {

/// counts[r][c]: points in cluster `cluster_ids[r]` with true class `class_ids[c]`.
struct ContingencyTable {
    std::vector<int> cluster_ids;  // sorted
    std::vector<int> class_ids;    // sorted
    std::vector<std::vector<long>> counts;

    [[nodiscard]] long total() const {
        long s = 0;
        for (const auto& r : counts) {
            for (long v : r) s += v;
        }
        return s;
    }
};

inline ContingencyTable contingency(const std::vector<int>& pred, const std::vector<int>& truth) {
    if (pred.size() != truth.size()) throw ArgumentError("prediction and truth lengths differ");
    if (pred.empty()) throw ArgumentError("empty labelling");
    ContingencyTable t;
    t.cluster_ids = pred;
    t.class_ids = truth;
    for (auto* v : {&t.cluster_ids, &t.class_ids}) {
        std::sort(v->begin(), v->end());
        v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    t.counts.assign(t.cluster_ids.size(), std::vector<long>(t.class_ids.size(), 0));
    const auto index = [](const std::vector<int>& ids, int v) {
        return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), v) - ids.begin());
    };
    for (std::size_t i = 0; i < pred.size(); ++i) ++t.counts[index(t.cluster_ids, pred[i])][index(t.class_ids, truth[i])];
    return t;
}

namespace detail {

/// Square assignment maximizing total weight (Hungarian method, O(n^3)).
/// Returns col_of_row.
inline std::vector<std::size_t> max_weight_assignment(const std::vector<std::vector<long>>& w) {
    const std::size_t n = w.size();
    long top = 0;
    for (const auto& r : w) {
        for (long v : r) top = std::max(top, v);
    }
    // Minimize cost = top - weight with the classic potentials formulation (1-based).
    const long inf = std::numeric_limits<long>::max() / 4;
    std::vector<long> row_pot(n + 1, 0), col_pot(n + 1, 0), way(n + 1, 0);
    std::vector<std::size_t> row_of_col(n + 1, 0);
    for (std::size_t r = 1; r <= n; ++r) {
        row_of_col[0] = r;
        std::size_t c0 = 0;
        std::vector<long> min_slack(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[c0] = 1;
            const std::size_t r0 = row_of_col[c0];
            long delta = inf;
            std::size_t c1 = 0;
            for (std::size_t c = 1; c <= n; ++c) {
                if (used[c]) continue;
                const long cur = (top - w[r0 - 1][c - 1]) - row_pot[r0] - col_pot[c];
                if (cur < min_slack[c]) {
                    min_slack[c] = cur;
                    way[c] = static_cast<long>(c0);
                }
                if (min_slack[c] < delta) {
                    delta = min_slack[c];
                    c1 = c;
                }
            }
            for (std::size_t c = 0; c <= n; ++c) {
                if (used[c]) {
                    row_pot[row_of_col[c]] += delta;
                    col_pot[c] -= delta;
                } else {
                    min_slack[c] -= delta;
                }
            }
            c0 = c1;
        } while (row_of_col[c0] != 0);
        do {
            const auto c1 = static_cast<std::size_t>(way[c0]);
            row_of_col[c0] = row_of_col[c1];
            c0 = c1;
        } while (c0 != 0);
    }
    std::vector<std::size_t> col_of_row(n);
    for (std::size_t c = 1; c <= n; ++c) col_of_row[row_of_col[c] - 1] = c - 1;
    return col_of_row;
}

}  // namespace detail

/// Cluster id -> class id. One-to-one and accuracy-maximizing when the
/// numbers of clusters and classes match; otherwise each cluster maps to
/// its most frequent class (ties to the smaller class id).
inline std::map<int, int> map_labels(const std::vector<int>& pred, const std::vector<int>& truth) {
    const auto t = contingency(pred, truth);
    std::map<int, int> mapping;
    if (t.cluster_ids.size() == t.class_ids.size()) {
        const auto col_of_row = detail::max_weight_assignment(t.counts);
        for (std::size_t r = 0; r < col_of_row.size(); ++r) mapping[t.cluster_ids[r]] = t.class_ids[col_of_row[r]];
        return mapping;
    }
    for (std::size_t r = 0; r < t.cluster_ids.size(); ++r) {
        const auto& row = t.counts[r];
        const auto best = static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
        mapping[t.cluster_ids[r]] = t.class_ids[best];
    }
    return mapping;
}

inline bool one_to_one_mapping(const std::vector<int>& pred, const std::vector<int>& truth) {
    const auto t = contingency(pred, truth);
    return t.cluster_ids.size() == t.class_ids.size();
}

inline double accuracy(const std::vector<int>& pred, const std::vector<int>& truth) {
    const auto mapping = map_labels(pred, truth);
    std::size_t hit = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) hit += mapping.at(pred[i]) == truth[i] ? 1 : 0;
    return static_cast<double>(hit) / static_cast<double>(pred.size());
}

}  // namespace egnet
