#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hypertda/geometry.hpp"

namespace hypertda {

/// An ordered polygonal curve in 3-space. Vertex order is part of the
/// identity of the curve: index i is the geodesic position of vertex i.
class Curve {
public:
    Curve() = default;

    explicit Curve(std::vector<Vec3> points) : points_(std::move(points)) {
        if (points_.size() < 2)
            throw std::invalid_argument("Curve: need at least 2 vertices");
        for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
            if (distance(points_[i], points_[i + 1]) <= 0.0)
                throw std::invalid_argument("Curve: consecutive vertices must be distinct");
        }
    }

    std::size_t size() const { return points_.size(); }
    const Vec3& operator[](std::size_t i) const { return points_[i]; }
    const std::vector<Vec3>& points() const { return points_; }

private:
    std::vector<Vec3> points_;
};

/// Symmetric pairwise Euclidean distance matrix, flat row-major storage.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return d_[i * n_ + j]; }

    double max() const { return d_.empty() ? 0.0 : *std::max_element(d_.begin(), d_.end()); }

private:
    std::size_t n_ = 0;
    std::vector<double> d_;
};

inline DistanceMatrix distance_matrix(const Curve& curve) {
    const std::size_t n = curve.size();
    DistanceMatrix d(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dij = distance(curve[i], curve[j]);
            d(i, j) = dij;
            d(j, i) = dij;
        }
    }
    return d;
}

/// Discrete curvature: turning angle at each interior vertex divided by the
/// mean of the two adjacent segment lengths. Endpoints copy the nearest
/// interior value so the vector stays aligned with the curve.
inline std::vector<double> curvature(const Curve& curve) {
    const std::size_t n = curve.size();
    if (n < 3) throw std::invalid_argument("curvature: need at least 3 vertices");
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const Vec3 u = curve[i] - curve[i - 1];
        const Vec3 v = curve[i + 1] - curve[i];
        const double lu = norm(u), lv = norm(v);
        if (lu <= 0.0 || lv <= 0.0)
            throw std::invalid_argument("curvature: zero-length segment");
        const double c = std::clamp(dot(u, v) / (lu * lv), -1.0, 1.0);
        out[i] = std::acos(c) / (0.5 * (lu + lv));
    }
    out[0] = out[1];
    out[n - 1] = out[n - 2];
    return out;
}

/// Discrete torsion: signed dihedral angle between the osculating planes of
/// consecutive vertex triples, divided by the mean adjacent segment length.
/// The angle is between unoriented planes, folded into (-pi/2, pi/2], so
/// planar curves (including zig-zags, where the normals anti-align) get
/// exactly 0. Collinear triples give 0; endpoints copy the nearest defined
/// value.
inline std::vector<double> torsion(const Curve& curve) {
    const std::size_t n = curve.size();
    if (n < 4) throw std::invalid_argument("torsion: need at least 4 vertices");
    std::vector<double> out(n, 0.0);
    constexpr double kHalfPi = 1.5707963267948966;
    for (std::size_t i = 1; i + 2 < n; ++i) {
        const Vec3 u = curve[i] - curve[i - 1];
        const Vec3 v = curve[i + 1] - curve[i];
        const Vec3 w = curve[i + 2] - curve[i + 1];
        const Vec3 n1 = cross(u, v);
        const Vec3 n2 = cross(v, w);
        const double l1 = norm(n1), l2 = norm(n2);
        if (l1 < 1e-12 || l2 < 1e-12) continue;  // degenerate plane, torsion 0
        const double c = std::clamp(dot(n1, n2) / (l1 * l2), -1.0, 1.0);
        double angle = std::acos(c);
        if (dot(cross(n1, n2), v) < 0.0) angle = -angle;
        if (angle > kHalfPi)
            angle -= 2.0 * kHalfPi;
        else if (angle < -kHalfPi)
            angle += 2.0 * kHalfPi;
        out[i] = angle / (0.5 * (norm(u) + norm(v)));
    }
    out[0] = out[1];
    out[n - 1] = out[n - 3];
    out[n - 2] = out[n - 3];
    return out;
}

/// Fraction of curve vertices (self included) closer than `radius`.
inline std::vector<double> density(const Curve& curve, double radius = 2.0) {
    if (radius <= 0.0) throw std::invalid_argument("density: radius must be positive");
    const DistanceMatrix d = distance_matrix(curve);
    const std::size_t n = curve.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t count = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (d(i, j) < radius) ++count;
        out[i] = static_cast<double>(count) / static_cast<double>(n);
    }
    return out;
}

inline double radius_of_gyration(std::span<const Vec3> points) {
    if (points.empty())
        throw std::invalid_argument("radius_of_gyration: empty point set");
    Vec3 centroid{};
    for (const Vec3& p : points) centroid += p;
    centroid = centroid / static_cast<double>(points.size());
    double acc = 0.0;
    for (const Vec3& p : points) acc += dot(p - centroid, p - centroid);
    return std::sqrt(acc / static_cast<double>(points.size()));
}

}  // namespace hypertda
