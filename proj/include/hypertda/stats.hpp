#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

namespace hypertda {
namespace stats {

inline double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw std::invalid_argument("pearson: length mismatch");
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("pearson: need at least 2 samples");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx <= 0.0 || syy <= 0.0)
        throw std::invalid_argument("pearson: zero variance");
    return sxy / std::sqrt(sxx * syy);
}

/// Cluster labels over n items; -1 marks a singleton, which counts as its
/// own one-element cluster.
struct Partition {
    std::vector<std::int64_t> labels;

    /// Dense nonnegative ids; each -1 becomes a fresh cluster.
    std::vector<std::size_t> canonical() const {
        std::map<std::int64_t, std::size_t> remap;
        std::vector<std::size_t> out(labels.size());
        std::size_t next = 0;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] < 0) {
                out[i] = next++;
            } else {
                auto [it, inserted] = remap.try_emplace(labels[i], next);
                if (inserted) ++next;
                out[i] = it->second;
            }
        }
        return out;
    }
};

namespace detail {

inline double entropy(const std::vector<std::size_t>& counts, std::size_t n) {
    double h = 0.0;
    for (std::size_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / static_cast<double>(n);
        h -= p * std::log(p);
    }
    return h;
}

/// Expected mutual information under the permutation (hypergeometric) model.
inline double expected_mi(const std::vector<std::size_t>& a,
                          const std::vector<std::size_t>& b, std::size_t n) {
    const double logN = std::log(static_cast<double>(n));
    const double lgN = std::lgamma(static_cast<double>(n) + 1.0);
    double emi = 0.0;
    for (std::size_t ai : a) {
        for (std::size_t bj : b) {
            const std::size_t lo = (ai + bj > n) ? ai + bj - n : 1;
            const std::size_t hi = std::min(ai, bj);
            for (std::size_t nij = std::max<std::size_t>(lo, 1); nij <= hi; ++nij) {
                const double dnij = static_cast<double>(nij);
                const double log_term =
                    std::log(dnij) + logN -
                    std::log(static_cast<double>(ai)) - std::log(static_cast<double>(bj));
                const double log_prob =
                    std::lgamma(static_cast<double>(ai) + 1.0) +
                    std::lgamma(static_cast<double>(bj) + 1.0) +
                    std::lgamma(static_cast<double>(n - ai) + 1.0) +
                    std::lgamma(static_cast<double>(n - bj) + 1.0) - lgN -
                    std::lgamma(dnij + 1.0) -
                    std::lgamma(static_cast<double>(ai - nij) + 1.0) -
                    std::lgamma(static_cast<double>(bj - nij) + 1.0) -
                    std::lgamma(static_cast<double>(n - ai - bj + nij) + 1.0);
                emi += (dnij / static_cast<double>(n)) * log_term * std::exp(log_prob);
            }
        }
    }
    return emi;
}

inline double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

}  // namespace detail

/// Adjusted mutual information with arithmetic-mean normalization:
/// (MI - E[MI]) / (mean(H(a), H(b)) - E[MI]); 0 when the denominator
/// vanishes (degenerate partitions).
inline double ami(const Partition& pa, const Partition& pb) {
    if (pa.labels.size() != pb.labels.size())
        throw std::invalid_argument("ami: length mismatch");
    const std::size_t n = pa.labels.size();
    if (n == 0) throw std::invalid_argument("ami: empty partitions");
    const auto la = pa.canonical();
    const auto lb = pb.canonical();
    const std::size_t ka = 1 + *std::max_element(la.begin(), la.end());
    const std::size_t kb = 1 + *std::max_element(lb.begin(), lb.end());
    if (ka == 1 && kb == 1) return 1.0;  // both lump everything: perfect agreement
    std::vector<std::size_t> ca(ka, 0), cb(kb, 0);
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> joint;
    for (std::size_t i = 0; i < n; ++i) {
        ++ca[la[i]];
        ++cb[lb[i]];
        ++joint[{la[i], lb[i]}];
    }
    double mi = 0.0;
    for (const auto& [cell, cnt] : joint) {
        const double pij = static_cast<double>(cnt) / static_cast<double>(n);
        const double pi = static_cast<double>(ca[cell.first]) / static_cast<double>(n);
        const double qj = static_cast<double>(cb[cell.second]) / static_cast<double>(n);
        mi += pij * std::log(pij / (pi * qj));
    }
    const double ha = detail::entropy(ca, n);
    const double hb = detail::entropy(cb, n);
    const double emi = detail::expected_mi(ca, cb, n);
    const double denom = 0.5 * (ha + hb) - emi;
    if (std::abs(denom) < 1e-12) return 0.0;
    return (mi - emi) / denom;
}

/// Two-sided Mann-Whitney U p-value. Exact enumeration over all
/// assignments when both groups have at most 8 samples (or at most 10
/// pooled); otherwise the normal approximation with tie and continuity
/// corrections.
inline double mann_whitney(std::span<const double> x, std::span<const double> y) {
    if (x.empty() || y.empty())
        throw std::invalid_argument("mann_whitney: empty sample");
    const std::size_t n = x.size(), m = y.size();

    auto u_statistic = [](std::span<const double> a, std::span<const double> b) {
        double u = 0.0;
        for (double av : a)
            for (double bv : b) {
                if (av > bv)
                    u += 1.0;
                else if (av == bv)
                    u += 0.5;
            }
        return u;
    };
    const double u_obs = u_statistic(x, y);
    const double mean = static_cast<double>(n) * static_cast<double>(m) / 2.0;

    if ((n <= 8 && m <= 8) || n + m <= 10) {
        std::vector<double> pooled(x.begin(), x.end());
        pooled.insert(pooled.end(), y.begin(), y.end());
        const std::size_t total = pooled.size();
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
        std::size_t count = 0, extreme = 0;
        const double margin = std::abs(u_obs - mean) - 1e-12;
        while (true) {
            double u = 0.0;
            std::vector<bool> in_x(total, false);
            for (std::size_t i : idx) in_x[i] = true;
            for (std::size_t i = 0; i < total; ++i) {
                if (!in_x[i]) continue;
                for (std::size_t j = 0; j < total; ++j) {
                    if (in_x[j]) continue;
                    if (pooled[i] > pooled[j])
                        u += 1.0;
                    else if (pooled[i] == pooled[j])
                        u += 0.5;
                }
            }
            ++count;
            if (std::abs(u - mean) >= margin) ++extreme;
            // next combination
            std::size_t k = n;
            while (k > 0 && idx[k - 1] == total - n + k - 1) --k;
            if (k == 0) break;
            ++idx[k - 1];
            for (std::size_t i = k; i < n; ++i) idx[i] = idx[i - 1] + 1;
        }
        return static_cast<double>(extreme) / static_cast<double>(count);
    }

    // normal approximation with tie correction
    std::vector<double> pooled(x.begin(), x.end());
    pooled.insert(pooled.end(), y.begin(), y.end());
    std::sort(pooled.begin(), pooled.end());
    const double N = static_cast<double>(n + m);
    double tie_sum = 0.0;
    for (std::size_t i = 0; i < pooled.size();) {
        std::size_t j = i;
        while (j < pooled.size() && pooled[j] == pooled[i]) ++j;
        const double t = static_cast<double>(j - i);
        tie_sum += t * t * t - t;
        i = j;
    }
    const double var = (static_cast<double>(n) * static_cast<double>(m) / 12.0) *
                       ((N + 1.0) - tie_sum / (N * (N - 1.0)));
    if (var <= 0.0) return 1.0;  // all values tied
    const double z = (std::abs(u_obs - mean) - 0.5) / std::sqrt(var);
    return std::min(1.0, 2.0 * detail::normal_sf(std::max(z, 0.0)));
}

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov: sup-distance between empirical CDFs with
/// the asymptotic Kolmogorov p-value at effective size n*m/(n+m).
inline KsResult ks_two_sample(std::span<const double> x, std::span<const double> y) {
    if (x.empty() || y.empty())
        throw std::invalid_argument("ks_two_sample: empty sample");
    std::vector<double> a(x.begin(), x.end()), b(y.begin(), y.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= v) ++i;
        while (j < b.size() && b[j] <= v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    KsResult r;
    r.statistic = d;
    const double ne = na * nb / (na + nb);
    const double t = std::sqrt(ne) * d;
    if (t < 1e-8) {
        r.p_value = 1.0;
        return r;
    }
    double p = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = 2.0 * std::exp(-2.0 * k * k * t * t);
        p += (k % 2 == 1) ? term : -term;
        if (term < 1e-16) break;
    }
    r.p_value = std::clamp(p, 0.0, 1.0);
    return r;
}

}  // namespace stats
}  // namespace hypertda
