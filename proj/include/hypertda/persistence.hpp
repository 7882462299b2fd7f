#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hypertda/filtration.hpp"

namespace hypertda {

/// A 1-chain over F2, stored as the sorted set of edge positions of a fixed
/// filtration. A chain with zero boundary (every vertex of even degree) is a
/// cycle.
struct CycleChain {
    std::vector<std::uint32_t> edges;  // sorted ascending

    bool empty() const { return edges.empty(); }

    std::vector<std::uint32_t> vertex_set(const Filtration& f) const {
        std::vector<std::uint32_t> vs;
        vs.reserve(edges.size() * 2);
        for (std::uint32_t e : edges) {
            vs.push_back(f.edges()[e].i);
            vs.push_back(f.edges()[e].j);
        }
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        return vs;
    }

    bool is_cycle(const Filtration& f) const {
        std::vector<std::uint32_t> deg;
        for (std::uint32_t e : edges) {
            const auto& ed = f.edges()[e];
            const std::uint32_t m = std::max(ed.i, ed.j) + 1;
            if (deg.size() < m) deg.resize(m, 0);
            ++deg[ed.i];
            ++deg[ed.j];
        }
        for (std::uint32_t d : deg)
            if (d % 2 != 0) return false;
        return true;
    }

    double total_length(const Filtration& f) const {
        double acc = 0.0;
        for (std::uint32_t e : edges) acc += f.edge_value(e);
        return acc;
    }
};

/// Symmetric difference of edge sets (addition over F2).
inline CycleChain sum_chains(const CycleChain& a, const CycleChain& b) {
    CycleChain out;
    out.edges.reserve(a.edges.size() + b.edges.size());
    std::set_symmetric_difference(a.edges.begin(), a.edges.end(), b.edges.begin(),
                                  b.edges.end(), std::back_inserter(out.edges));
    return out;
}

struct PersistencePair {
    double birth;
    double death;
    std::uint32_t birth_edge;     // edge position of the creating 1-simplex
    std::size_t death_triangle;   // index into Filtration::triangles()
    CycleChain generator;         // reduced boundary column: the death chain
    double persistence() const { return death - birth; }
};

struct PersistenceDiagram {
    std::vector<PersistencePair> pairs;
};

/// Outcome of reducing the F2 boundary matrix of the 2-simplices. Keeps the
/// full set of reduced columns (including zero-persistence ones): together
/// they are an echelon basis of the 1-boundary space at every scale, which
/// is what homology-membership tests need.
class Dim1Persistence {
public:
    struct Column {
        std::vector<std::uint32_t> edges;  // sorted; pivot is back()
        double death_value;                // filtration value of the triangle
    };

    explicit Dim1Persistence(const Filtration& f) {
        const auto& edges = f.edges();
        edge_values_.resize(edges.size());
        for (std::size_t p = 0; p < edges.size(); ++p) edge_values_[p] = edges[p].value;
        pivot_owner_.assign(edges.size(), -1);

        // once the reduced columns span the whole cycle space, every later
        // column reduces to zero: nothing to emit, nothing to store
        const std::size_t target_rank = cycle_space_dimension(f);

        // the working column lives in a bitset so additions cost only the
        // nonzeros of the added (sparse) stored column
        std::vector<std::uint64_t> work((edges.size() + 63) / 64, 0);
        auto flip = [&](std::uint32_t e) { work[e >> 6] ^= (1ULL << (e & 63)); };

        const auto& tris = f.triangles();
        for (std::size_t t = 0; t < tris.size() && columns_.size() < target_rank; ++t) {
            const auto& tri = tris[t];
            flip(tri.e_ij);
            flip(tri.e_ik);
            flip(tri.e_jk);
            std::int64_t word =
                static_cast<std::int64_t>(std::max({tri.e_ij, tri.e_ik, tri.e_jk}) >> 6);
            while (word >= 0) {
                if (work[static_cast<std::size_t>(word)] == 0) {
                    --word;
                    continue;
                }
                const std::uint32_t pivot = static_cast<std::uint32_t>(
                    (word << 6) + 63 -
                    __builtin_clzll(work[static_cast<std::size_t>(word)]));
                const std::int64_t owner = pivot_owner_[pivot];
                if (owner < 0) {
                    // extract the reduced column and clear the bitset
                    std::vector<std::uint32_t> col;
                    for (std::size_t w = 0; w <= static_cast<std::size_t>(word); ++w) {
                        std::uint64_t bits = work[w];
                        work[w] = 0;
                        while (bits) {
                            col.push_back(static_cast<std::uint32_t>(
                                (w << 6) + static_cast<std::uint32_t>(__builtin_ctzll(bits))));
                            bits &= bits - 1;
                        }
                    }
                    pivot_owner_[pivot] = static_cast<std::int64_t>(columns_.size());
                    columns_.push_back({col, tri.value});
                    if (tri.value > edge_values_[pivot])
                        diagram_.pairs.push_back({edge_values_[pivot], tri.value, pivot, t,
                                                  CycleChain{std::move(col)}});
                    break;
                }
                for (std::uint32_t e : columns_[static_cast<std::size_t>(owner)].edges)
                    flip(e);
                // the owner's pivot bit is now cleared; scan on from here
            }
        }
    }

    const PersistenceDiagram& diagram() const { return diagram_; }

    /// True iff `chain` is an F2 linear combination of boundaries of
    /// 2-simplices with filtration value <= eps. Every edge of the chain
    /// must itself be present at eps.
    bool is_boundary_at(const CycleChain& chain, double eps) const {
        for (std::uint32_t e : chain.edges)
            if (edge_values_[e] > eps)
                throw std::invalid_argument("is_boundary_at: chain edge not present at eps");
        std::vector<std::uint32_t> cur = chain.edges, scratch;
        while (!cur.empty()) {
            const std::uint32_t pivot = cur.back();
            const std::int64_t owner = pivot_owner_[pivot];
            if (owner < 0) return false;
            const Column& c = columns_[static_cast<std::size_t>(owner)];
            if (c.death_value > eps) return false;
            scratch.clear();
            std::set_symmetric_difference(cur.begin(), cur.end(), c.edges.begin(),
                                          c.edges.end(), std::back_inserter(scratch));
            std::swap(cur, scratch);
        }
        return true;
    }

    /// Echelon basis of the 1-boundary space at scale eps.
    std::vector<const Column*> boundary_basis_at(double eps) const {
        std::vector<const Column*> out;
        for (const Column& c : columns_)
            if (c.death_value <= eps) out.push_back(&c);
        return out;
    }

    const std::vector<Column>& reduced_columns() const { return columns_; }

private:
    static std::size_t cycle_space_dimension(const Filtration& f) {
        const std::size_t n = f.n_vertices();
        std::vector<std::uint32_t> parent(n);
        for (std::uint32_t v = 0; v < n; ++v) parent[v] = v;
        auto find = [&](std::uint32_t x) {
            while (parent[x] != x) {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            return x;
        };
        std::size_t components = n;
        for (const auto& e : f.edges()) {
            const std::uint32_t a = find(e.i), b = find(e.j);
            if (a != b) {
                parent[a] = b;
                --components;
            }
        }
        return f.edges().size() + components - n;
    }

    PersistenceDiagram diagram_;
    std::vector<Column> columns_;
    std::vector<std::int64_t> pivot_owner_;
    std::vector<double> edge_values_;
};

/// Plain left-to-right F2 column reduction of the 2-boundary matrix.
/// Each death column pairs the triangle with its pivot edge; the reduced
/// column itself is the emitted representative cycle. Zero-persistence
/// pairs are dropped from the diagram (they carry no downstream weight)
/// but their columns are retained for membership tests.
inline Dim1Persistence persistence_dim1(const Filtration& f) { return Dim1Persistence(f); }

}  // namespace hypertda
