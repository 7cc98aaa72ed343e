#pragma once

/**
 * @file dataset.hpp
 * @brief Tabular datasets: CSV ingestion, missing-value imputation and
 * column standardization.
 *
 * A Dataset is a dense row-major N x m matrix of features plus optional
 * class labels. Missing cells survive loading (flagged, value NaN) until
 * impute_missing() fills them.
 */

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "egnet/error.hpp"

namespace egnet {

struct Dataset {
    std::string name;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;         // row-major, NaN where missing
    std::vector<std::uint8_t> missing;  // same shape as values
    std::vector<std::string> feature_names;
    std::optional<std::vector<int>> labels;  // dense ids into class_names
    std::vector<std::string> class_names;

    [[nodiscard]] std::span<const double> row(std::size_t i) const {
        return {values.data() + i * cols, cols};
    }
    [[nodiscard]] double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
    [[nodiscard]] bool is_missing(std::size_t i, std::size_t j) const {
        return missing[i * cols + j] != 0;
    }
    [[nodiscard]] std::size_t missing_count() const {
        return static_cast<std::size_t>(std::count(missing.begin(), missing.end(), std::uint8_t{1}));
    }
    [[nodiscard]] bool is_complete() const { return missing_count() == 0; }
    [[nodiscard]] bool has_labels() const { return labels.has_value(); }
    [[nodiscard]] std::size_t class_count() const { return class_names.size(); }
};

/// Column holding class labels: an index (negative counts from the end,
/// so -1 is the last column) or a header name.
using LabelColumn = std::variant<std::ptrdiff_t, std::string>;

struct CsvOptions {
    bool header = true;
    std::optional<LabelColumn> label_column;
    std::string missing_token = "?";
    char delimiter = ',';
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto not_space = [](char c) { return c != ' ' && c != '\t' && c != '\r' && c != '\n'; };
    while (!s.empty() && !not_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && !not_space(s.back())) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string> split_csv_line(std::string_view line, char delim) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == delim) {
            out.emplace_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.emplace_back(trim(cur));
    return out;
}

inline std::optional<double> parse_double(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (s.empty() || ec != std::errc{} || ptr != last || !std::isfinite(v)) return std::nullopt;
    return v;
}

inline std::size_t resolve_label_column(const LabelColumn& sel, const std::vector<std::string>& header,
                                        std::size_t width) {
    if (const auto* idx = std::get_if<std::ptrdiff_t>(&sel)) {
        const auto w = static_cast<std::ptrdiff_t>(width);
        const std::ptrdiff_t resolved = *idx < 0 ? w + *idx : *idx;
        if (resolved < 0 || resolved >= w) {
            throw ArgumentError("label column index " + std::to_string(*idx) + " out of range for " +
                                std::to_string(width) + " columns");
        }
        return static_cast<std::size_t>(resolved);
    }
    const auto& name = std::get<std::string>(sel);
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ArgumentError("label column '" + name + "' not found in header");
    return static_cast<std::size_t>(it - header.begin());
}

}  // namespace detail

/// Parses CSV text. Missing cells are flagged, not imputed; labels are
/// removed from the features and mapped to dense ids in order of first
/// appearance.
inline Dataset parse_csv(std::istream& in, const CsvOptions& opts, std::string name = {}) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::size_t> line_numbers;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        records.push_back(detail::split_csv_line(line, opts.delimiter));
        line_numbers.push_back(line_no);
    }
    if (in.bad()) throw DataError("read failure while parsing CSV");

    std::vector<std::string> header;
    std::size_t first_data = 0;
    if (opts.header) {
        if (records.empty()) throw DataError("CSV has no header row");
        header = records.front();
        first_data = 1;
    }
    if (records.size() <= first_data) throw DataError("CSV has no data rows");

    const std::size_t width = records[first_data].size();
    if (opts.header && header.size() != width) {
        throw DataError("header has " + std::to_string(header.size()) + " columns but line " +
                        std::to_string(line_numbers[first_data]) + " has " + std::to_string(width));
    }
    std::optional<std::size_t> label_col;
    if (opts.label_column) label_col = detail::resolve_label_column(*opts.label_column, header, width);

    Dataset d;
    d.name = std::move(name);
    d.rows = records.size() - first_data;
    d.cols = width - (label_col ? 1 : 0);
    if (d.cols == 0) throw DataError("CSV has no feature columns");
    d.values.reserve(d.rows * d.cols);
    d.missing.reserve(d.rows * d.cols);
    for (std::size_t c = 0; c < width; ++c) {
        if (label_col && c == *label_col) continue;
        d.feature_names.push_back(opts.header ? header[c] : "x" + std::to_string(c));
    }

    std::vector<int> labels;
    std::unordered_map<std::string, int> class_ids;
    for (std::size_t r = first_data; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.size() != width) {
            throw DataError("ragged row at line " + std::to_string(line_numbers[r]) + ": expected " +
                            std::to_string(width) + " cells, got " + std::to_string(rec.size()));
        }
        for (std::size_t c = 0; c < width; ++c) {
            if (label_col && c == *label_col) {
                const auto [it, inserted] = class_ids.try_emplace(rec[c], static_cast<int>(class_ids.size()));
                if (inserted) d.class_names.push_back(rec[c]);
                labels.push_back(it->second);
                continue;
            }
            if (rec[c] == opts.missing_token) {
                d.values.push_back(std::numeric_limits<double>::quiet_NaN());
                d.missing.push_back(1);
                continue;
            }
            const auto v = detail::parse_double(rec[c]);
            if (!v) {
                throw DataError("non-numeric cell '" + rec[c] + "' at line " + std::to_string(line_numbers[r]) +
                                ", column " + std::to_string(c + 1));
            }
            d.values.push_back(*v);
            d.missing.push_back(0);
        }
    }
    if (label_col) d.labels = std::move(labels);
    return d;
}

inline Dataset load_csv(const std::string& path, const CsvOptions& opts) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    auto stem = path.substr(path.find_last_of("/\\") + 1);
    if (const auto dot = stem.rfind('.'); dot != std::string::npos && dot > 0) stem.resize(dot);
    return parse_csv(in, opts, stem);
}

/// Writes features (and the label column last, if present) with enough
/// digits that parse_csv() restores every value bit-for-bit.
inline void write_csv(std::ostream& out, const Dataset& d, const std::string& missing_token = "?") {
    for (std::size_t c = 0; c < d.cols; ++c) out << (c ? "," : "") << d.feature_names[c];
    if (d.labels) out << ",class";
    out << '\n';
    char buf[40];
    for (std::size_t i = 0; i < d.rows; ++i) {
        for (std::size_t c = 0; c < d.cols; ++c) {
            if (c) out << ',';
            if (d.is_missing(i, c)) {
                out << missing_token;
            } else {
                std::snprintf(buf, sizeof buf, "%.17g", d.at(i, c));
                out << buf;
            }
        }
        if (d.labels) out << ',' << d.class_names[static_cast<std::size_t>((*d.labels)[i])];
        out << '\n';
    }
}

/// Replaces each missing cell by a uniform draw over the observed
/// [min, max] of its column. Draws come from a 64-bit Mersenne Twister
/// seeded with `seed`, consumed in row-major order.
inline Dataset impute_missing(Dataset d, std::uint64_t seed) {
    if (d.is_complete()) return d;
    std::vector<double> lo(d.cols, std::numeric_limits<double>::infinity());
    std::vector<double> hi(d.cols, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < d.rows; ++i) {
        for (std::size_t c = 0; c < d.cols; ++c) {
            if (d.is_missing(i, c)) continue;
            lo[c] = std::min(lo[c], d.at(i, c));
            hi[c] = std::max(hi[c], d.at(i, c));
        }
    }
    std::mt19937_64 gen(seed);
    for (std::size_t i = 0; i < d.rows; ++i) {
        for (std::size_t c = 0; c < d.cols; ++c) {
            if (!d.is_missing(i, c)) continue;
            if (lo[c] > hi[c]) throw DataError("column '" + d.feature_names[c] + "' has no observed values");
            // 53 random bits in [0, 1); the closed upper end is reachable only through rounding.
            const double unit = static_cast<double>(gen() >> 11) * 0x1.0p-53;
            d.values[i * d.cols + c] = lo[c] + unit * (hi[c] - lo[c]);
            d.missing[i * d.cols + c] = 0;
        }
    }
    return d;
}

/// Per-column zero mean and unit sample (n-1) standard deviation.
inline Dataset standardize(Dataset d) {
    if (!d.is_complete()) throw ArgumentError("standardize requires a dataset without missing cells");
    if (d.rows < 2) throw ArgumentError("standardize requires at least two rows");
    for (std::size_t c = 0; c < d.cols; ++c) {
        double mean = 0.0;
        for (std::size_t i = 0; i < d.rows; ++i) mean += d.at(i, c);
        mean /= static_cast<double>(d.rows);
        double ss = 0.0;
        for (std::size_t i = 0; i < d.rows; ++i) ss += (d.at(i, c) - mean) * (d.at(i, c) - mean);
        const double sd = std::sqrt(ss / static_cast<double>(d.rows - 1));
        if (!(sd > 0.0)) throw ArgumentError("column '" + d.feature_names[c] + "' has zero variance");
        for (std::size_t i = 0; i < d.rows; ++i) {
            auto& v = d.values[i * d.cols + c];
            v = (v - mean) / sd;
        }
    }
    return d;
}

}  // namespace egnet
