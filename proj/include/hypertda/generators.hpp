#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypertda/filtration.hpp"
#include "hypertda/linprog.hpp"
#include "hypertda/persistence.hpp"

namespace hypertda {

enum class GeneratorPolicy { reduction, minimal };

inline const char* to_string(GeneratorPolicy p) {
    return p == GeneratorPolicy::reduction ? "reduction" : "minimal";
}

inline GeneratorPolicy parse_policy(const std::string& s) {
    if (s == "reduction") return GeneratorPolicy::reduction;
    if (s == "minimal") return GeneratorPolicy::minimal;
    throw std::invalid_argument("unknown generator policy: " + s);
}

/// One representative cycle per diagram pair, index-aligned with the pairs.
/// `non_loop[i]` is set when the chain is not a single simple loop (a rare
/// rounding artifact of the length minimization); such chains still enter
/// the hypergraph through their full vertex support.
struct GeneratorSet {
    GeneratorPolicy policy = GeneratorPolicy::reduction;
    std::vector<CycleChain> generators;
    std::vector<bool> non_loop;
};

namespace detail {

/// Orient an F2 cycle as a rational cycle: decompose into edge-disjoint
/// loops (every vertex has even degree) and walk each loop, signing edge
/// (i,j), i<j, +1 when traversed i->j and -1 otherwise.
inline std::vector<std::pair<std::uint32_t, double>> orient_cycle(const CycleChain& chain,
                                                                  const Filtration& f) {
    std::map<std::uint32_t, std::vector<std::uint32_t>> adj;  // vertex -> incident edges
    for (std::uint32_t e : chain.edges) {
        adj[f.edges()[e].i].push_back(e);
        adj[f.edges()[e].j].push_back(e);
    }
    std::vector<std::pair<std::uint32_t, double>> signs;
    std::vector<bool> used(chain.edges.size(), false);
    std::map<std::uint32_t, std::size_t> local;
    for (std::size_t k = 0; k < chain.edges.size(); ++k) local[chain.edges[k]] = k;
    for (const auto& entry : adj) {
        const std::uint32_t start = entry.first;
        while (true) {
            std::int64_t first_edge = -1;
            for (std::uint32_t e : entry.second) {
                if (!used[local[e]]) {
                    first_edge = e;
                    break;
                }
            }
            if (first_edge < 0) break;
            // walk one loop until it closes back at start
            std::uint32_t cur = start;
            std::uint32_t e = static_cast<std::uint32_t>(first_edge);
            while (true) {
                used[local[e]] = true;
                const auto& ed = f.edges()[e];
                signs.emplace_back(e, (ed.i == cur) ? 1.0 : -1.0);
                cur = (ed.i == cur) ? ed.j : ed.i;
                if (cur == start) break;
                bool found = false;
                for (std::uint32_t cand : adj[cur]) {
                    if (!used[local[cand]]) {
                        e = cand;
                        found = true;
                        break;
                    }
                }
                if (!found) break;
            }
        }
    }
    return signs;
}

inline bool is_single_loop(const CycleChain& chain, const Filtration& f) {
    if (chain.edges.size() < 3) return false;
    std::map<std::uint32_t, std::uint32_t> deg;
    for (std::uint32_t e : chain.edges) {
        ++deg[f.edges()[e].i];
        ++deg[f.edges()[e].j];
    }
    for (const auto& [v, d] : deg)
        if (d != 2) return false;
    return deg.size() == chain.edges.size();  // connected single cycle
}

}  // namespace detail

inline CycleChain minimize_cycle_exact(const Filtration& f, const Dim1Persistence& ph,
                                       const CycleChain& gen, double birth);

/// Shortest cycle (total Euclidean edge length) homologous to
/// `reduction_gen` at its birth scale. Solved as an L1-weighted LP over
/// rational coefficients z = g + d2*B on the simplices alive at birth; a
/// solution within 1e-6 of {-1,0,1} is rounded to its F2 support. Anything
/// else falls back to exact enumeration over the F2 homology class.
inline CycleChain length_minimize(const Filtration& f, const Dim1Persistence& ph,
                                  const CycleChain& reduction_gen, double birth) {
    const auto& edges = f.edges();
    // alive simplices form prefixes of the value-sorted arrays
    std::size_t n_edges = 0;
    while (n_edges < edges.size() && edges[n_edges].value <= birth) ++n_edges;
    std::size_t n_tris = 0;
    const auto& tris = f.triangles();
    while (n_tris < tris.size() && tris[n_tris].value <= birth) ++n_tris;

    SparseLP lp;
    lp.rows = n_edges;
    lp.rhs.assign(n_edges, 0.0);
    for (const auto& [e, sign] : detail::orient_cycle(reduction_gen, f)) lp.rhs[e] = sign;
    lp.cols.reserve(2 * n_edges + 2 * n_tris);
    for (std::size_t e = 0; e < n_edges; ++e) {  // z+
        lp.cols.push_back({{static_cast<std::uint32_t>(e), 1.0}});
        lp.cost.push_back(edges[e].value);
    }
    for (std::size_t e = 0; e < n_edges; ++e) {  // z-
        lp.cols.push_back({{static_cast<std::uint32_t>(e), -1.0}});
        lp.cost.push_back(edges[e].value);
    }
    for (std::size_t t = 0; t < n_tris; ++t) {  // y+, y-: -+ signed boundary
        const auto& tri = tris[t];
        std::vector<std::pair<std::uint32_t, double>> col = {
            {tri.e_ij, -1.0}, {tri.e_ik, 1.0}, {tri.e_jk, -1.0}};
        std::sort(col.begin(), col.end());
        lp.cols.push_back(col);
        lp.cost.push_back(0.0);
        for (auto& [r, v] : col) v = -v;
        lp.cols.push_back(col);
        lp.cost.push_back(0.0);
    }
    lp.initial_basis.resize(n_edges);
    for (std::size_t e = 0; e < n_edges; ++e)
        lp.initial_basis[e] =
            static_cast<std::uint32_t>(lp.rhs[e] < 0.0 ? n_edges + e : e);

    const LPSolution sol = solve_lp(lp);

    bool integral = true;
    CycleChain candidate;
    for (std::size_t e = 0; e < n_edges; ++e) {
        const double z = sol.x[e] - sol.x[n_edges + e];
        const double dist = std::min({std::abs(z), std::abs(z - 1.0), std::abs(z + 1.0)});
        if (dist > 1e-6) {
            integral = false;
            break;
        }
        if (std::abs(z) > 0.5) candidate.edges.push_back(static_cast<std::uint32_t>(e));
    }
    if (integral &&
        ph.is_boundary_at(sum_chains(candidate, reduction_gen), birth))
        return candidate;

    return minimize_cycle_exact(f, ph, reduction_gen, birth);
}

/// Proven-optimal minimum-length cycle in the F2 homology class of `gen` at
/// `birth`, by Gray-code enumeration of the boundary-basis coset. Feasible
/// only while the basis stays small; used as the fallback when the LP
/// relaxation rounds badly.
inline CycleChain minimize_cycle_exact(const Filtration& f, const Dim1Persistence& ph,
                                       const CycleChain& gen, double birth) {
    const auto& edges = f.edges();
    std::size_t n_edges = 0;
    while (n_edges < edges.size() && edges[n_edges].value <= birth) ++n_edges;
    const auto basis = ph.boundary_basis_at(birth);
    const std::size_t k = basis.size();
    if (k > 24)
        throw NumericalError(
            "minimize_cycle_exact: boundary basis too large for enumeration (" +
            std::to_string(k) + " columns)");
    const std::size_t words = (n_edges + 63) / 64;
    std::vector<std::uint64_t> cur(words, 0);
    auto flip_chain = [&](const std::vector<std::uint32_t>& es) {
        for (std::uint32_t e : es) cur[e / 64] ^= (1ULL << (e % 64));
    };
    auto chain_length = [&]() {
        double acc = 0.0;
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t bits = cur[w];
            while (bits) {
                const int b = __builtin_ctzll(bits);
                acc += edges[w * 64 + static_cast<std::size_t>(b)].value;
                bits &= bits - 1;
            }
        }
        return acc;
    };
    flip_chain(gen.edges);
    double best_len = chain_length();
    std::vector<std::uint64_t> best = cur;
    std::uint64_t gray_prev = 0;
    for (std::uint64_t m = 1; m < (1ULL << k); ++m) {
        const std::uint64_t gray = m ^ (m >> 1);
        const std::uint64_t changed = gray ^ gray_prev;
        gray_prev = gray;
        flip_chain(basis[static_cast<std::size_t>(__builtin_ctzll(changed))]->edges);
        const double len = chain_length();
        if (len < best_len) {
            best_len = len;
            best = cur;
        }
    }
    CycleChain out;
    for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t bits = best[w];
        while (bits) {
            const int b = __builtin_ctzll(bits);
            out.edges.push_back(static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(b)));
            bits &= bits - 1;
        }
    }
    return out;
}

/// Iteratively insert skipped curve vertices into a generator: for each
/// consecutive pair (a, b) of the sorted vertex list with b - a > 1, try
/// every intermediate vertex in increasing order and accept the first whose
/// triangle insertion is homologically trivial at the birth scale,
/// continuing from the accepted vertex. Passes repeat until none inserts,
/// which makes the operation idempotent.
inline CycleChain jump_minimize(const Filtration& f, const Dim1Persistence& ph,
                                const CycleChain& gen, double birth) {
    CycleChain cur = gen;
    std::vector<std::uint32_t> verts = cur.vertex_set(f);
    bool changed = true;
    while (changed) {
        changed = false;
        std::size_t i = 0;
        while (i + 1 < verts.size()) {
            const std::uint32_t a = verts[i];
            const std::uint32_t b = verts[i + 1];
            bool accepted = false;
            for (std::uint32_t v = a + 1; v < b; ++v) {
                if (!f.has_edge(a, v) || !f.has_edge(v, b) || !f.has_edge(a, b)) continue;
                CycleChain diff;
                diff.edges = {f.edge_pos(a, v), f.edge_pos(v, b), f.edge_pos(a, b)};
                std::sort(diff.edges.begin(), diff.edges.end());
                bool alive = true;
                for (std::uint32_t e : diff.edges)
                    if (f.edge_value(e) > birth) {
                        alive = false;
                        break;
                    }
                if (!alive || !ph.is_boundary_at(diff, birth)) continue;
                cur = sum_chains(cur, diff);
                verts.insert(verts.begin() + static_cast<std::ptrdiff_t>(i) + 1, v);
                accepted = true;
                changed = true;
                break;
            }
            ++i;
            (void)accepted;
        }
    }
    return cur;
}

inline GeneratorSet compute_generators(GeneratorPolicy policy,
                                       const Filtration& f,
                                       const Dim1Persistence& ph) {
    GeneratorSet out;
    out.policy = policy;
    const auto& pairs = ph.diagram().pairs;
    out.generators.reserve(pairs.size());
    out.non_loop.reserve(pairs.size());
    for (const auto& pair : pairs) {
        CycleChain g = pair.generator;
        if (policy == GeneratorPolicy::minimal) {
            g = length_minimize(f, ph, pair.generator, pair.birth);
            g = jump_minimize(f, ph, g, pair.birth);
        }
        out.non_loop.push_back(!detail::is_single_loop(g, f));
        out.generators.push_back(std::move(g));
    }
    return out;
}

}  // namespace hypertda
