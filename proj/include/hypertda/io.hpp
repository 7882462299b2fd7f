#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypertda/community.hpp"
#include "hypertda/curve.hpp"
#include "hypertda/generators.hpp"
#include "hypertda/hypergraph.hpp"
#include "hypertda/interpolation.hpp"
#include "hypertda/persistence.hpp"

namespace hypertda {

using json = nlohmann::ordered_json;

namespace io {

inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

/// Read a curve from CSV with one vertex per line (columns x,y,z). A header
/// line is skipped if present. Two-column input is accepted only with
/// time_as_z, which fills z with row_index * time_step.
inline Curve read_curve_csv(const std::string& path, bool time_as_z = false,
                            double time_step = 1.0) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open curve file: " + path);
    std::vector<Vec3> pts;
    std::string line;
    std::size_t row = 0;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double x, y, z;
        if (!(ss >> x >> y)) {
            if (first) {
                first = false;
                continue;  // header
            }
            throw std::invalid_argument(path + ": malformed row " + std::to_string(row));
        }
        first = false;
        if (ss >> z) {
            pts.push_back({x, y, z});
        } else if (time_as_z) {
            pts.push_back({x, y, static_cast<double>(row) * time_step});
        } else {
            throw std::invalid_argument(
                path + ": 2-column input needs --time-as-z");
        }
        ++row;
    }
    return Curve(std::move(pts));
}

/// Atomically write `content` to `path` (temp file + rename).
inline void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, target);
}

inline std::string curve_to_csv(const Curve& curve) {
    std::string out = "x,y,z\n";
    for (const Vec3& p : curve.points()) {
        out += format_double(p.x);
        out += ',';
        out += format_double(p.y);
        out += ',';
        out += format_double(p.z);
        out += '\n';
    }
    return out;
}

inline void write_curve_csv(const std::string& path, const Curve& curve) {
    write_file_atomic(path, curve_to_csv(curve));
}

inline json interpolation_map_to_json(const InterpolationMap& map) {
    json j;
    j["n_orig"] = map.n_orig;
    j["n_interp"] = map.n_interp;
    json trips = json::array();
    for (const auto& [r, c, w] : map.triplets) trips.push_back({r, c, w});
    j["triplets"] = std::move(trips);
    return j;
}

inline InterpolationMap interpolation_map_from_json(const json& j) {
    InterpolationMap map;
    map.n_orig = j.at("n_orig").get<std::size_t>();
    map.n_interp = j.at("n_interp").get<std::size_t>();
    for (const auto& t : j.at("triplets"))
        map.triplets.emplace_back(t.at(0).get<std::size_t>(), t.at(1).get<std::size_t>(),
                                  t.at(2).get<double>());
    return map;
}

inline json diagram_to_json(const Filtration& f, const PersistenceDiagram& diagram,
                            const GeneratorSet* generators = nullptr) {
    json pairs = json::array();
    for (std::size_t i = 0; i < diagram.pairs.size(); ++i) {
        const auto& p = diagram.pairs[i];
        const CycleChain& gen =
            generators ? generators->generators[i] : p.generator;
        json jp;
        jp["birth"] = p.birth;
        jp["death"] = p.death;
        jp["persistence"] = p.persistence();
        jp["generator_vertices"] = gen.vertex_set(f);
        json edges = json::array();
        for (std::uint32_t e : gen.edges)
            edges.push_back({f.edges()[e].i, f.edges()[e].j});
        jp["generator_edges"] = std::move(edges);
        if (generators) jp["non_loop"] = static_cast<bool>(generators->non_loop[i]);
        pairs.push_back(std::move(jp));
    }
    json j;
    if (generators) j["policy"] = to_string(generators->policy);
    j["pairs"] = std::move(pairs);
    return j;
}

inline json hypergraph_to_json(const PHHypergraph& h) {
    json j;
    j["n_nodes"] = h.n_nodes;
    j["hyperedges"] = h.hyperedges;
    j["weights"] = h.weights;
    return j;
}

inline std::string incidence_matrix_csv(const PHHypergraph& h) {
    std::string out;
    for (std::size_t v = 0; v < h.n_nodes; ++v) {
        if (v) out += ',';
        out += 'v' + std::to_string(v);
    }
    out += '\n';
    std::vector<char> row(h.n_nodes);
    for (const auto& he : h.hyperedges) {
        std::fill(row.begin(), row.end(), '0');
        for (std::uint32_t v : he) row[v] = '1';
        for (std::size_t v = 0; v < h.n_nodes; ++v) {
            if (v) out += ',';
            out += row[v];
        }
        out += '\n';
    }
    return out;
}

inline json centrality_to_json(const CentralityVector& c) {
    json j;
    j["values"] = c.values;
    j["covered"] = c.covered;
    j["iterations"] = c.iterations;
    j["residual"] = c.residual;
    return j;
}

inline json communities_to_json(const CommunityMatrix& m,
                                const CommunityMetrics* metrics = nullptr) {
    json j;
    j["k"] = m.k();
    j["seed"] = m.seed;
    json cols = json::array();
    bool binary = true;
    for (const auto& col : m.columns)
        for (const auto& [v, w] : col)
            if (w != 1.0) binary = false;
    for (const auto& col : m.columns) {
        json jc = json::array();
        for (const auto& [v, w] : col) {
            if (binary)
                jc.push_back(v);
            else
                jc.push_back({v, w});
        }
        cols.push_back(std::move(jc));
    }
    j["columns"] = std::move(cols);
    j["singletons"] = m.singletons;
    if (metrics) {
        json jm;
        json per = json::array();
        for (const auto& cs : metrics->per_community) {
            json c;
            c["size"] = cs.size;
            c["volume"] = cs.volume;
            c["geodesic_size"] = cs.geodesic_size;
            per.push_back(std::move(c));
        }
        jm["per_community"] = std::move(per);
        jm["pairwise_p"] = metrics->pairwise_p;
        jm["ambient_assortativity"] = metrics->ambient_assortativity;
        jm["intrinsic_assortativity"] = metrics->intrinsic_assortativity;
        jm["modularity"] = m.modularity;
        j["metrics"] = std::move(jm);
    }
    return j;
}

}  // namespace io
}  // namespace hypertda
