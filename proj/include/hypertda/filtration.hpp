#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hypertda/curve.hpp"

namespace hypertda {

/// Vietoris-Rips filtration restricted to dimensions 0-2, which is
/// sufficient (and exact) for dimension-1 persistence. Simplices are
/// ordered by (filtration value, dimension, lexicographic vertex tuple);
/// the global filtration index runs vertices, then edges, then triangles.
class Filtration {
public:
    struct Edge {
        double value;
        std::uint32_t i, j;  // i < j
    };
    struct Triangle {
        double value;
        std::uint32_t e_ij, e_ik, e_jk;  // positions into edges()
    };

    Filtration(const DistanceMatrix& d, double max_scale)
        : n_(d.size()), max_scale_(max_scale) {
        if (max_scale <= 0.0)
            throw std::invalid_argument("Filtration: max_scale must be positive");
        edge_index_.assign(n_ * n_, -1);
        for (std::uint32_t i = 0; i < n_; ++i)
            for (std::uint32_t j = i + 1; j < n_; ++j)
                if (d(i, j) <= max_scale) edges_.push_back({d(i, j), i, j});
        // enumeration is lexicographic, so a stable sort by value yields the
        // (value, lex) total order
        std::stable_sort(edges_.begin(), edges_.end(),
                         [](const Edge& a, const Edge& b) { return a.value < b.value; });
        for (std::uint32_t p = 0; p < edges_.size(); ++p) {
            edge_index_[edges_[p].i * n_ + edges_[p].j] = static_cast<std::int64_t>(p);
            edge_index_[edges_[p].j * n_ + edges_[p].i] = static_cast<std::int64_t>(p);
        }
        for (std::uint32_t i = 0; i < n_; ++i) {
            for (std::uint32_t j = i + 1; j < n_; ++j) {
                if (d(i, j) > max_scale) continue;
                for (std::uint32_t k = j + 1; k < n_; ++k) {
                    const double v = std::max({d(i, j), d(i, k), d(j, k)});
                    if (v > max_scale) continue;
                    triangles_.push_back({v, edge_pos(i, j), edge_pos(i, k), edge_pos(j, k)});
                }
            }
        }
        std::stable_sort(triangles_.begin(), triangles_.end(),
                         [](const Triangle& a, const Triangle& b) { return a.value < b.value; });
    }

    std::size_t n_vertices() const { return n_; }
    double max_scale() const { return max_scale_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Triangle>& triangles() const { return triangles_; }
    std::size_t size() const { return n_ + edges_.size() + triangles_.size(); }

    bool has_edge(std::uint32_t i, std::uint32_t j) const {
        return edge_index_[i * n_ + j] >= 0;
    }
    std::uint32_t edge_pos(std::uint32_t i, std::uint32_t j) const {
        const std::int64_t p = edge_index_[i * n_ + j];
        if (p < 0) throw std::out_of_range("Filtration: edge not present");
        return static_cast<std::uint32_t>(p);
    }
    double edge_value(std::uint32_t pos) const { return edges_[pos].value; }

    // global filtration indices (vertices occupy [0, n))
    std::size_t edge_filtration_index(std::uint32_t pos) const { return n_ + pos; }
    std::size_t triangle_filtration_index(std::size_t t) const {
        return n_ + edges_.size() + t;
    }

private:
    std::size_t n_;
    double max_scale_;
    std::vector<Edge> edges_;
    std::vector<Triangle> triangles_;
    std::vector<std::int64_t> edge_index_;
};

inline Filtration build_filtration(const DistanceMatrix& d) {
    return Filtration(d, d.max() > 0.0 ? d.max() : 1.0);
}

inline Filtration build_filtration(const DistanceMatrix& d, double max_scale) {
    return Filtration(d, max_scale);
}

}  // namespace hypertda
