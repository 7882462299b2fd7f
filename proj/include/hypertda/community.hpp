#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "hypertda/curve.hpp"
#include "hypertda/hypergraph.hpp"
#include "hypertda/stats.hpp"

namespace hypertda {

/// Clique expansion of a hypergraph: weighted simple graph where the weight
/// of (u,v) counts the hyperedges containing both (or sums their
/// persistences, under the alternative weighting).
struct FlatGraph {
    std::size_t n_nodes = 0;
    std::vector<std::map<std::uint32_t, double>> adj;  // symmetric, no self-loops

    double degree(std::uint32_t u) const {
        double k = 0.0;
        for (const auto& [v, w] : adj[u]) k += w;
        return k;
    }
    double total_weight() const {  // each edge once
        double m = 0.0;
        for (std::uint32_t u = 0; u < n_nodes; ++u)
            for (const auto& [v, w] : adj[u])
                if (v > u) m += w;
        return m;
    }
};

enum class FlattenWeight { count, persistence };

inline FlatGraph flatten(const PHHypergraph& h, FlattenWeight mode = FlattenWeight::count) {
    FlatGraph g;
    g.n_nodes = h.n_nodes;
    g.adj.resize(h.n_nodes);
    for (std::size_t j = 0; j < h.hyperedges.size(); ++j) {
        const auto& he = h.hyperedges[j];
        const double w = (mode == FlattenWeight::count) ? 1.0 : h.weights[j];
        for (std::size_t a = 0; a < he.size(); ++a)
            for (std::size_t b = a + 1; b < he.size(); ++b) {
                g.adj[he[a]][he[b]] += w;
                g.adj[he[b]][he[a]] += w;
            }
    }
    return g;
}

/// Membership matrix: one column per community, entries in (0,1] (exactly 1
/// for binary partitions). Nodes without any community are listed as
/// singletons and get no column.
struct CommunityMatrix {
    std::size_t n_rows = 0;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> columns;
    std::vector<std::uint32_t> singletons;
    double modularity = 0.0;
    std::uint64_t seed = 0;

    std::size_t k() const { return columns.size(); }

    stats::Partition to_partition() const {
        stats::Partition p;
        p.labels.assign(n_rows, -1);
        for (std::size_t c = 0; c < columns.size(); ++c)
            for (const auto& [v, w] : columns[c])
                if (w > 0.5) p.labels[v] = static_cast<std::int64_t>(c);
        return p;
    }
};

namespace detail {

struct LouvainGraph {
    std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;  // no self entries
    std::vector<double> self_loop;
    std::vector<double> degree;  // includes 2 * self_loop
    double two_m = 0.0;
};

inline double louvain_modularity(const LouvainGraph& g, const std::vector<std::uint32_t>& com,
                                 double resolution) {
    std::map<std::uint32_t, double> w_in, w_tot;
    for (std::size_t u = 0; u < g.adj.size(); ++u) {
        w_tot[com[u]] += g.degree[u];
        w_in[com[u]] += 2.0 * g.self_loop[u];
        for (const auto& [v, w] : g.adj[u])
            if (com[v] == com[u]) w_in[com[u]] += w;  // ordered pairs count twice
    }
    double q = 0.0;
    for (const auto& [c, win] : w_in) {
        const double tot = w_tot[c];
        q += win / g.two_m - resolution * (tot / g.two_m) * (tot / g.two_m);
    }
    return q;
}

}  // namespace detail

/// Weighted modularity of a node partition of the flattened graph.
inline double modularity(const FlatGraph& g, const stats::Partition& partition,
                         double resolution = 1.0) {
    detail::LouvainGraph lg;
    lg.adj.resize(g.n_nodes);
    lg.self_loop.assign(g.n_nodes, 0.0);
    lg.degree.assign(g.n_nodes, 0.0);
    for (std::uint32_t u = 0; u < g.n_nodes; ++u) {
        for (const auto& [v, w] : g.adj[u]) {
            lg.adj[u].emplace_back(v, w);
            lg.degree[u] += w;
        }
        lg.two_m += lg.degree[u];
    }
    if (lg.two_m == 0.0) return 0.0;
    const auto canon = partition.canonical();
    std::vector<std::uint32_t> com(canon.begin(), canon.end());
    return detail::louvain_modularity(lg, com, resolution);
}

/// Two-phase Louvain with seeded node order. Local moves accept the
/// neighbour community with the largest modularity gain (ties to the lowest
/// community id); levels aggregate and repeat until no move improves.
/// Degree-0 nodes become singletons without a column.
inline CommunityMatrix louvain(const FlatGraph& g, std::uint64_t seed = 0,
                               double resolution = 1.0) {
    const std::size_t n = g.n_nodes;
    CommunityMatrix out;
    out.n_rows = n;
    out.seed = seed;

    // node -> community of the original graph, composed through levels
    std::vector<std::uint32_t> node_com(n);
    std::iota(node_com.begin(), node_com.end(), 0);

    detail::LouvainGraph cur;
    cur.adj.resize(n);
    cur.self_loop.assign(n, 0.0);
    cur.degree.assign(n, 0.0);
    for (std::uint32_t u = 0; u < n; ++u) {
        for (const auto& [v, w] : g.adj[u]) {
            cur.adj[u].emplace_back(v, w);
            cur.degree[u] += w;
        }
        cur.two_m += cur.degree[u];
    }

    std::mt19937_64 rng(seed);
    if (cur.two_m > 0.0) {
        while (true) {
            const std::size_t nn = cur.adj.size();
            std::vector<std::uint32_t> com(nn);
            std::iota(com.begin(), com.end(), 0);
            std::vector<double> com_tot = cur.degree;

            std::vector<std::uint32_t> order(nn);
            std::iota(order.begin(), order.end(), 0);
            bool any_move = false;
            bool improved = true;
            while (improved) {
                improved = false;
                std::shuffle(order.begin(), order.end(), rng);
                for (std::uint32_t u : order) {
                    const std::uint32_t old_com = com[u];
                    com_tot[old_com] -= cur.degree[u];
                    std::map<std::uint32_t, double> k_uc;
                    k_uc[old_com] += 0.0;
                    for (const auto& [v, w] : cur.adj[u])
                        if (v != u) k_uc[com[v]] += w;
                    std::uint32_t best_com = old_com;
                    double best_gain = 0.0;
                    for (const auto& [c, k] : k_uc) {
                        const double gain =
                            k - resolution * com_tot[c] * cur.degree[u] / cur.two_m;
                        if (gain > best_gain + 1e-12) {
                            best_gain = gain;
                            best_com = c;
                        }
                    }
                    com_tot[best_com] += cur.degree[u];
                    com[u] = best_com;
                    if (best_com != old_com) {
                        improved = true;
                        any_move = true;
                    }
                }
            }
            if (!any_move) break;

            // renumber communities densely, in order of first appearance
            std::map<std::uint32_t, std::uint32_t> remap;
            for (std::uint32_t u = 0; u < nn; ++u) remap.try_emplace(com[u], 0);
            std::uint32_t next_id = 0;
            for (auto& [c, id] : remap) id = next_id++;
            for (std::uint32_t u = 0; u < nn; ++u) com[u] = remap[com[u]];
            for (std::uint32_t v = 0; v < n; ++v) node_com[v] = com[node_com[v]];

            // aggregate
            const std::size_t kc = next_id;
            detail::LouvainGraph agg;
            agg.adj.resize(kc);
            agg.self_loop.assign(kc, 0.0);
            agg.degree.assign(kc, 0.0);
            std::vector<std::map<std::uint32_t, double>> w(kc);
            for (std::uint32_t u = 0; u < nn; ++u) {
                agg.self_loop[com[u]] += cur.self_loop[u];
                for (const auto& [v, ew] : cur.adj[u]) {
                    if (v < u) continue;
                    if (com[u] == com[v])
                        agg.self_loop[com[u]] += ew;
                    else
                        w[com[u]][com[v]] += ew;
                }
            }
            for (std::uint32_t a = 0; a < kc; ++a)
                for (const auto& [b, ew] : w[a]) {
                    agg.adj[a].emplace_back(b, ew);
                    agg.adj[b].emplace_back(a, ew);
                }
            for (std::uint32_t a = 0; a < kc; ++a) {
                agg.degree[a] = 2.0 * agg.self_loop[a];
                for (const auto& [b, ew] : agg.adj[a]) agg.degree[a] += ew;
                agg.two_m += agg.degree[a];
            }
            if (agg.adj.size() == cur.adj.size()) break;
            cur = std::move(agg);
        }
    }

    // assemble columns: communities of nodes with positive degree, ordered
    // by smallest member
    std::map<std::uint32_t, std::vector<std::uint32_t>> groups;
    for (std::uint32_t v = 0; v < n; ++v) {
        if (g.adj[v].empty()) {
            out.singletons.push_back(v);
            continue;
        }
        groups[node_com[v]].push_back(v);
    }
    std::vector<std::vector<std::uint32_t>> cols;
    for (auto& [c, members] : groups) {
        std::sort(members.begin(), members.end());
        cols.push_back(std::move(members));
    }
    std::sort(cols.begin(), cols.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    for (auto& members : cols) {
        std::vector<std::pair<std::uint32_t, double>> col;
        col.reserve(members.size());
        for (std::uint32_t v : members) col.emplace_back(v, 1.0);
        out.columns.push_back(std::move(col));
    }
    out.modularity = modularity(g, out.to_partition(), resolution);
    return out;
}

struct CommunityStats {
    double size = 0.0;           // L1 mass of the column
    double volume = 0.0;         // radius of gyration of member points
    double geodesic_size = 0.0;  // index span of members
    std::size_t member_count = 0;
};

struct CommunityMetrics {
    std::vector<CommunityStats> per_community;
    std::vector<std::vector<double>> pairwise_p;  // geodesic intersection
    double ambient_assortativity = 0.0;
    double intrinsic_assortativity = 0.0;
};

/// Mann-Whitney p-value between two communities' member index sets;
/// memberships are thresholded at 0.5 first.
inline double geodesic_intersection(
    const std::vector<std::pair<std::uint32_t, double>>& col_a,
    const std::vector<std::pair<std::uint32_t, double>>& col_b) {
    std::vector<double> ia, ib;
    for (const auto& [v, w] : col_a)
        if (w > 0.5) ia.push_back(static_cast<double>(v));
    for (const auto& [v, w] : col_b)
        if (w > 0.5) ib.push_back(static_cast<double>(v));
    if (ia.empty() || ib.empty())
        throw std::invalid_argument(
            "geodesic_intersection: community empty after thresholding");
    return stats::mann_whitney(ia, ib);
}

/// Sizes, volumes, geodesic sizes and assortativities of the communities of
/// a curve. Ambient assortativity averages size/volume over non-singleton
/// communities; intrinsic averages size/geodesic-size over all communities;
/// denominators are guarded at 1e-9.
inline CommunityMetrics community_metrics(const CommunityMatrix& m, const Curve& curve) {
    if (m.n_rows != curve.size())
        throw std::invalid_argument("community_metrics: matrix/curve misalignment");
    constexpr double kEps = 1e-9;
    CommunityMetrics out;
    out.per_community.reserve(m.k());
    for (const auto& col : m.columns) {
        CommunityStats cs;
        std::vector<Vec3> members;
        std::uint32_t lo = 0, hi = 0;
        bool first = true;
        for (const auto& [v, w] : col) {
            cs.size += w;
            if (w > 0.5) {
                members.push_back(curve[v]);
                if (first) {
                    lo = hi = v;
                    first = false;
                } else {
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
            }
        }
        cs.member_count = members.size();
        cs.volume = members.empty() ? 0.0 : radius_of_gyration(members);
        cs.geodesic_size = first ? 0.0 : static_cast<double>(hi - lo);
        out.per_community.push_back(cs);
    }

    const std::size_t k = m.k();
    out.pairwise_p.assign(k, std::vector<double>(k, 1.0));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b) {
            const double p = geodesic_intersection(m.columns[a], m.columns[b]);
            out.pairwise_p[a][b] = p;
            out.pairwise_p[b][a] = p;
        }

    double ambient = 0.0, intrinsic = 0.0;
    std::size_t n_ambient = 0;
    for (const auto& cs : out.per_community) {
        intrinsic += cs.size / std::max(cs.geodesic_size, kEps);
        if (cs.member_count >= 2) {
            ambient += cs.size / std::max(cs.volume, kEps);
            ++n_ambient;
        }
    }
    out.ambient_assortativity = n_ambient ? ambient / static_cast<double>(n_ambient) : 0.0;
    out.intrinsic_assortativity = k ? intrinsic / static_cast<double>(k) : 0.0;
    return out;
}

}  // namespace hypertda
