#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "hypertda/generators.hpp"
#include "hypertda/linprog.hpp"
#include "hypertda/persistence.hpp"

namespace hypertda {

/// Weighted hypergraph on the curve vertices: one hyperedge per persistence
/// pair (the generator's vertex set), weighted by the pair's persistence.
struct PHHypergraph {
    std::size_t n_nodes = 0;
    std::vector<std::vector<std::uint32_t>> hyperedges;  // each sorted ascending
    std::vector<double> weights;
};

inline PHHypergraph build_hypergraph(std::size_t n_nodes, const Filtration& f,
                                     const PersistenceDiagram& diagram,
                                     const GeneratorSet& generators) {
    if (diagram.pairs.size() != generators.generators.size())
        throw std::invalid_argument("build_hypergraph: diagram/generator misalignment");
    PHHypergraph h;
    h.n_nodes = n_nodes;
    h.hyperedges.reserve(diagram.pairs.size());
    h.weights.reserve(diagram.pairs.size());
    for (std::size_t i = 0; i < diagram.pairs.size(); ++i) {
        h.hyperedges.push_back(generators.generators[i].vertex_set(f));
        h.weights.push_back(diagram.pairs[i].persistence());
    }
    return h;
}

struct CentralityOptions {
    double p_norm = 10.0;
    double tol = 1e-8;
    std::size_t max_iter = 1000;
};

struct CentralityVector {
    std::vector<double> values;   // L1-normalized over covered nodes
    std::vector<bool> covered;    // node belongs to at least one hyperedge
    std::size_t iterations = 0;   // worst case over connected components
    double residual = 0.0;
};

/// Max-flavour nonlinear eigenvector centrality: edge scores are weighted
/// p-norms (a smooth max) of member centralities, node updates take the
/// geometric mean of the current value and the incident edge-score sum.
/// Each connected component of the hypergraph is iterated to its own fixed
/// point; total mass is then split across components in proportion to their
/// converged growth factors, so every covered node keeps a positive value.
inline CentralityVector centrality_max(const PHHypergraph& h,
                                       const CentralityOptions& opt = {}) {
    if (h.hyperedges.empty())
        throw std::invalid_argument("centrality_max: hypergraph has no hyperedges");
    const std::size_t n = h.n_nodes;

    CentralityVector out;
    out.values.assign(n, 0.0);
    out.covered.assign(n, false);
    for (const auto& he : h.hyperedges)
        for (std::uint32_t v : he) out.covered[v] = true;

    // connected components over covered nodes via union-find
    std::vector<std::uint32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto& he : h.hyperedges)
        for (std::size_t k = 1; k < he.size(); ++k) {
            const std::uint32_t a = find(he[0]), b = find(he[k]);
            if (a != b) parent[a] = b;
        }

    std::vector<std::vector<std::size_t>> incident(n);
    for (std::size_t j = 0; j < h.hyperedges.size(); ++j)
        for (std::uint32_t v : h.hyperedges[j]) incident[v].push_back(j);

    std::vector<std::uint32_t> roots;
    for (std::uint32_t v = 0; v < n; ++v)
        if (out.covered[v] && find(v) == v) roots.push_back(v);
    // hyperedges keep components connected, so every covered root owns one

    std::vector<double> component_mass;
    std::vector<std::vector<std::uint32_t>> component_nodes;
    for (std::uint32_t root : roots) {
        std::vector<std::uint32_t> nodes;
        for (std::uint32_t v = 0; v < n; ++v)
            if (out.covered[v] && find(v) == root) nodes.push_back(v);
        std::vector<std::size_t> edges;
        for (std::size_t j = 0; j < h.hyperedges.size(); ++j)
            if (find(h.hyperedges[j][0]) == root) edges.push_back(j);

        std::vector<double> c(n, 0.0);
        for (std::uint32_t v : nodes) c[v] = 1.0 / static_cast<double>(nodes.size());
        double lambda = 0.0;
        bool converged = false;
        std::size_t it = 0;
        std::vector<double> escore(h.hyperedges.size(), 0.0);
        std::vector<double> next(n, 0.0);
        for (; it < opt.max_iter; ++it) {
            for (std::size_t j : edges) {
                double mx = 0.0;
                for (std::uint32_t v : h.hyperedges[j]) mx = std::max(mx, c[v]);
                if (mx <= 0.0) {
                    escore[j] = 0.0;
                    continue;
                }
                double acc = 0.0;
                for (std::uint32_t v : h.hyperedges[j])
                    acc += std::pow(c[v] / mx, opt.p_norm);
                escore[j] = h.weights[j] * mx * std::pow(acc, 1.0 / opt.p_norm);
            }
            double total = 0.0;
            for (std::uint32_t v : nodes) {
                double s = 0.0;
                for (std::size_t j : incident[v]) s += escore[j];
                next[v] = std::sqrt(c[v] * s);
                total += next[v];
            }
            if (total <= 0.0)
                throw NumericalError("centrality_max: iteration collapsed to zero");
            lambda = total;
            double resid = 0.0;
            for (std::uint32_t v : nodes) {
                next[v] /= total;
                resid += std::abs(next[v] - c[v]);
                c[v] = next[v];
            }
            if (resid < opt.tol) {
                converged = true;
                out.iterations = std::max(out.iterations, it + 1);
                out.residual = std::max(out.residual, resid);
                break;
            }
            if (it + 1 == opt.max_iter)
                throw NumericalError("centrality_max: no convergence after " +
                                     std::to_string(opt.max_iter) +
                                     " iterations (residual " + std::to_string(resid) + ")");
        }
        if (!converged)
            throw NumericalError("centrality_max: empty iteration budget");
        component_mass.push_back(lambda);
        component_nodes.push_back(std::move(nodes));
        for (std::uint32_t v : component_nodes.back()) out.values[v] = c[v];
    }

    const double mass_total =
        std::accumulate(component_mass.begin(), component_mass.end(), 0.0);
    for (std::size_t b = 0; b < component_nodes.size(); ++b) {
        const double share = component_mass[b] / mass_total;
        for (std::uint32_t v : component_nodes[b]) out.values[v] *= share;
    }
    return out;
}

}  // namespace hypertda
