#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypertda/curve.hpp"
#include "hypertda/geometry.hpp"

namespace hypertda {

struct SarwOptions {
    double min_separation = 1.0;  // hard-sphere exclusion between non-adjacent vertices
    int attempts_per_step = 1000;
    int max_backtracks = 100000;
};

namespace detail {

inline Vec3 random_unit_vector(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    while (true) {
        Vec3 v{gauss(rng), gauss(rng), gauss(rng)};
        const double l = norm(v);
        if (l > 1e-12) return v / l;
    }
}

}  // namespace detail

/// Equilateral self-avoiding random walk: unit steps, every pair of
/// non-adjacent vertices at least `min_separation` apart. Steps that cannot
/// be placed within the attempt budget trigger a backtrack of the last
/// vertex; exhausting the backtrack budget is an error.
inline Curve generate_sarw(std::size_t length, std::uint64_t seed,
                           const SarwOptions& opt = {}) {
    if (length < 2) throw std::invalid_argument("generate_sarw: length must be >= 2");
    std::mt19937_64 rng(seed);
    std::vector<Vec3> pts;
    pts.reserve(length);
    pts.push_back({0.0, 0.0, 0.0});
    long long attempts = 0;
    int backtracks = 0;
    while (pts.size() < length) {
        bool placed = false;
        for (int a = 0; a < opt.attempts_per_step; ++a) {
            ++attempts;
            const Vec3 cand = pts.back() + detail::random_unit_vector(rng);
            bool clash = false;
            for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
                if (distance(pts[i], cand) < opt.min_separation) {
                    clash = true;
                    break;
                }
            }
            if (!clash) {
                pts.push_back(cand);
                placed = true;
                break;
            }
        }
        if (!placed) {
            if (pts.size() <= 1 || ++backtracks > opt.max_backtracks)
                throw std::runtime_error("generate_sarw: failed after " +
                                         std::to_string(attempts) + " attempts");
            pts.pop_back();
        }
    }
    return Curve(std::move(pts));
}

/// Independent Gaussian displacement of every coordinate, std dev `sigma`.
inline Curve perturb(const Curve& curve, double sigma, std::uint64_t seed) {
    if (sigma < 0.0) throw std::invalid_argument("perturb: sigma must be >= 0");
    if (sigma == 0.0) return curve;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, sigma);
    std::vector<Vec3> pts = curve.points();
    for (Vec3& p : pts) {
        p.x += gauss(rng);
        p.y += gauss(rng);
        p.z += gauss(rng);
    }
    return Curve(std::move(pts));
}

/// Centered moving-average smoothing. Each pass replaces every interior
/// vertex by the window average computed from the previous pass; endpoints
/// stay fixed. Near the ends the window shrinks symmetrically.
inline Curve smooth(const Curve& curve, int window = 3, int passes = 5) {
    if (window < 3 || window % 2 == 0)
        throw std::invalid_argument("smooth: window must be odd and >= 3");
    if (passes < 1) throw std::invalid_argument("smooth: passes must be >= 1");
    const std::size_t n = curve.size();
    std::vector<Vec3> cur = curve.points();
    std::vector<Vec3> next(n);
    const long half = window / 2;
    for (int pass = 0; pass < passes; ++pass) {
        next[0] = cur[0];
        next[n - 1] = cur[n - 1];
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const long h = std::min<long>({half, static_cast<long>(i),
                                           static_cast<long>(n - 1 - i)});
            Vec3 acc{};
            for (long k = -h; k <= h; ++k) acc += cur[i + k];
            next[i] = acc / static_cast<double>(2 * h + 1);
        }
        std::swap(cur, next);
    }
    return Curve(std::move(cur));
}

}  // namespace hypertda
