#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hypertda/curve.hpp"
#include "hypertda/geometry.hpp"

namespace hypertda {

/// Sparse map from interpolated vertices back to original vertices.
/// Column j holds the weights with which interpolated vertex j is credited
/// to original vertices; every column sums to 1.
struct InterpolationMap {
    std::size_t n_orig = 0;
    std::size_t n_interp = 0;
    // (row = original vertex, col = interpolated vertex, weight)
    std::vector<std::tuple<std::size_t, std::size_t, double>> triplets;
    // per original segment: count of inserted vertices and their fractions
    std::vector<std::vector<double>> segment_fractions;

    /// Dense apply: out = D * input, where input has one row per
    /// interpolated vertex and any number of columns.
    std::vector<std::vector<double>> apply(
        const std::vector<std::vector<double>>& input) const {
        if (input.size() != n_interp)
            throw std::invalid_argument("uninterpolate: row count != n_interp");
        const std::size_t cols = input.empty() ? 0 : input.front().size();
        for (const auto& row : input)
            if (row.size() != cols)
                throw std::invalid_argument("uninterpolate: ragged input");
        std::vector<std::vector<double>> out(n_orig, std::vector<double>(cols, 0.0));
        for (const auto& [r, c, w] : triplets)
            for (std::size_t k = 0; k < cols; ++k) out[r][k] += w * input[c][k];
        return out;
    }

    std::vector<double> apply(const std::vector<double>& input) const {
        std::vector<std::vector<double>> wrapped(input.size(), std::vector<double>(1));
        for (std::size_t i = 0; i < input.size(); ++i) wrapped[i][0] = input[i];
        auto out = apply(wrapped);
        std::vector<double> flat(out.size());
        for (std::size_t i = 0; i < out.size(); ++i) flat[i] = out[i][0];
        return flat;
    }
};

struct InterpolationResult {
    Curve curve;
    InterpolationMap map;
};

/// Greedy even-spread interpolation: repeatedly assign one vertex to the
/// segment maximizing length/(count+1), ties to the lowest segment index,
/// then place each segment's vertices at even fractions.
inline InterpolationResult interpolate(const Curve& curve, std::size_t target_length) {
    const std::size_t n = curve.size();
    if (target_length <= n)
        throw std::invalid_argument("interpolate: target_length must exceed curve length");
    const std::size_t n_seg = n - 1;
    std::vector<double> seg_len(n_seg);
    for (std::size_t s = 0; s < n_seg; ++s)
        seg_len[s] = distance(curve[s], curve[s + 1]);
    std::vector<std::size_t> count(n_seg, 0);
    for (std::size_t added = 0; added < target_length - n; ++added) {
        std::size_t best = 0;
        double best_priority = seg_len[0] / static_cast<double>(count[0] + 1);
        for (std::size_t s = 1; s < n_seg; ++s) {
            const double p = seg_len[s] / static_cast<double>(count[s] + 1);
            if (p > best_priority) {
                best_priority = p;
                best = s;
            }
        }
        ++count[best];
    }

    std::vector<Vec3> pts;
    pts.reserve(target_length);
    InterpolationMap map;
    map.n_orig = n;
    map.n_interp = target_length;
    map.segment_fractions.resize(n_seg);
    for (std::size_t s = 0; s < n_seg; ++s) {
        const std::size_t col = pts.size();
        pts.push_back(curve[s]);
        map.triplets.emplace_back(s, col, 1.0);
        for (std::size_t k = 1; k <= count[s]; ++k) {
            const double t = static_cast<double>(k) / static_cast<double>(count[s] + 1);
            map.segment_fractions[s].push_back(t);
            const std::size_t c = pts.size();
            pts.push_back(curve[s] + (curve[s + 1] - curve[s]) * t);
            map.triplets.emplace_back(s, c, 1.0 - t);
            map.triplets.emplace_back(s + 1, c, t);
        }
    }
    {
        const std::size_t col = pts.size();
        pts.push_back(curve[n - 1]);
        map.triplets.emplace_back(n - 1, col, 1.0);
    }
    return {Curve(std::move(pts)), std::move(map)};
}

}  // namespace hypertda
