#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "hypertda/community.hpp"
#include "hypertda/curve.hpp"
#include "hypertda/generators.hpp"
#include "hypertda/hypergraph.hpp"
#include "hypertda/interpolation.hpp"
#include "hypertda/io.hpp"
#include "hypertda/persistence.hpp"
#include "hypertda/random_curves.hpp"
#include "hypertda/stats.hpp"

namespace hypertda {

inline constexpr int kSchemaVersion = 1;

struct RunConfig {
    std::vector<std::string> inputs;
    std::string output_dir = ".";
    GeneratorPolicy policy = GeneratorPolicy::reduction;
    double density_radius = 2.0;
    double centrality_p = 10.0;
    double centrality_tol = 1e-8;
    std::size_t centrality_max_iter = 1000;
    std::uint64_t louvain_seed = 0;
    double louvain_resolution = 1.0;
    std::size_t interpolate_target = 0;  // 0 disables interpolation
    std::vector<double> sigmas = {0.05, 0.1, 0.15, 0.2};
    std::uint64_t seed = 0;  // base seed for stochastic stages
    int smooth_window = 3;
    int smooth_passes = 5;
    double max_scale = 0.0;  // 0 means the curve diameter
    FlattenWeight flatten_weight = FlattenWeight::count;
    bool time_as_z = false;
    double time_step = 1.0;
    std::size_t jobs = 1;

    json echo() const {
        json j;
        j["inputs"] = inputs;
        j["output_dir"] = output_dir;
        j["policy"] = to_string(policy);
        j["density_radius"] = density_radius;
        j["centrality_p"] = centrality_p;
        j["centrality_tol"] = centrality_tol;
        j["centrality_max_iter"] = centrality_max_iter;
        j["louvain_seed"] = louvain_seed;
        j["louvain_resolution"] = louvain_resolution;
        j["interpolate_target"] = interpolate_target;
        j["sigmas"] = sigmas;
        j["seed"] = seed;
        j["smooth_window"] = smooth_window;
        j["smooth_passes"] = smooth_passes;
        j["max_scale"] = max_scale;
        j["flatten_weight"] =
            flatten_weight == FlattenWeight::count ? "count" : "persistence";
        j["time_as_z"] = time_as_z;
        j["time_step"] = time_step;
        j["jobs"] = jobs;
        return j;
    }

    CentralityOptions centrality_options() const {
        return {centrality_p, centrality_tol, centrality_max_iter};
    }
};

/// Everything the pipeline derives from one curve. When interpolation is
/// active the diagram/hypergraph/centrality/communities live on the
/// interpolated curve and the uninterpolated fields map them back.
struct CurveAnalysis {
    std::string label;
    std::size_t n_vertices = 0;  // original curve
    bool trivial_ph = false;

    std::vector<double> curvature_vec, torsion_vec, density_vec;

    json diagram;  // serialized with generators
    PHHypergraph hypergraph;
    CentralityVector centrality;
    CommunityMatrix communities;
    CommunityMetrics metrics;

    bool interpolated = false;
    std::optional<InterpolationMap> interpolation;
    std::vector<double> uninterp_centrality;
    CommunityMatrix uninterp_communities;

    /// Centrality in original-vertex space (uninterpolated when needed).
    const std::vector<double>& comparison_centrality() const {
        return interpolated ? uninterp_centrality : centrality.values;
    }
    stats::Partition comparison_partition() const {
        return interpolated ? uninterp_communities.to_partition()
                            : communities.to_partition();
    }
};

namespace detail {

inline CommunityMatrix uninterpolate_matrix(const InterpolationMap& map,
                                            const CommunityMatrix& m) {
    std::vector<std::vector<double>> dense(map.n_interp,
                                           std::vector<double>(m.k(), 0.0));
    for (std::size_t c = 0; c < m.k(); ++c)
        for (const auto& [v, w] : m.columns[c]) dense[v][c] = w;
    const auto mapped = map.apply(dense);
    CommunityMatrix out;
    out.n_rows = map.n_orig;
    out.seed = m.seed;
    out.modularity = m.modularity;
    out.columns.resize(m.k());
    std::vector<bool> has_mass(map.n_orig, false);
    for (std::size_t r = 0; r < map.n_orig; ++r)
        for (std::size_t c = 0; c < m.k(); ++c)
            if (mapped[r][c] > 1e-12) {
                out.columns[c].emplace_back(static_cast<std::uint32_t>(r), mapped[r][c]);
                has_mass[r] = true;
            }
    for (std::size_t r = 0; r < map.n_orig; ++r)
        if (!has_mass[r]) out.singletons.push_back(static_cast<std::uint32_t>(r));
    return out;
}

inline void parallel_for(std::size_t n, std::size_t jobs,
                         const std::function<void(std::size_t)>& fn) {
    if (jobs == 0) jobs = 1;
    jobs = std::min(jobs, n);
    if (jobs <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (std::size_t w = 0; w < jobs; ++w) {
        workers.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) break;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : workers) t.join();
    if (error) std::rethrow_exception(error);
}

/// Pearson with the degenerate case pinned: identical constant vectors
/// correlate perfectly, anything else with zero variance is reported as 0.
inline double safe_correlation(const std::vector<double>& a, const std::vector<double>& b) {
    try {
        return stats::pearson(a, b);
    } catch (const std::invalid_argument&) {
        double max_diff = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            max_diff = std::max(max_diff, std::abs(a[i] - b[i]));
        return max_diff < 1e-12 ? 1.0 : 0.0;
    }
}

inline double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline double quantile(std::vector<double> v, double q) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const double pos = q * static_cast<double>(v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

struct VariantRow {
    std::string input, variant;
    bool trivial = false;
    double correlation = 0.0, ami = 0.0;
};

struct CompareRow {
    std::string input;
    bool trivial = false;
    double correlation = 0.0, ami = 0.0;
    std::vector<double> jaccard;
};

}  // namespace detail

/// Full hyperTDA pipeline on one curve: distances, VR dimension-1
/// persistence, generators under the configured policy, PH-hypergraph,
/// centrality, communities and metrics. Curves with trivial PH skip all
/// hypergraph stages.
inline CurveAnalysis analyze_curve(const Curve& input, const RunConfig& cfg,
                                   std::string label = {}) {
    CurveAnalysis a;
    a.label = std::move(label);
    a.n_vertices = input.size();
    a.curvature_vec = curvature(input);
    if (input.size() >= 4) a.torsion_vec = torsion(input);
    a.density_vec = density(input, cfg.density_radius);

    const Curve* analysis_curve = &input;
    Curve interp_curve;
    if (cfg.interpolate_target > 0) {
        auto [c, map] = interpolate(input, cfg.interpolate_target);
        interp_curve = std::move(c);
        a.interpolation = std::move(map);
        a.interpolated = true;
        analysis_curve = &interp_curve;
    }

    const DistanceMatrix d = distance_matrix(*analysis_curve);
    const double scale = cfg.max_scale > 0.0 ? cfg.max_scale : d.max();
    const Filtration f = build_filtration(d, scale);
    const Dim1Persistence ph = persistence_dim1(f);

    if (ph.diagram().pairs.empty()) {
        a.trivial_ph = true;
        a.diagram = io::diagram_to_json(f, ph.diagram());
        return a;
    }

    const GeneratorSet gens = compute_generators(cfg.policy, f, ph);
    a.diagram = io::diagram_to_json(f, ph.diagram(), &gens);
    a.hypergraph = build_hypergraph(analysis_curve->size(), f, ph.diagram(), gens);
    a.centrality = centrality_max(a.hypergraph, cfg.centrality_options());
    const FlatGraph flat = flatten(a.hypergraph, cfg.flatten_weight);
    a.communities = louvain(flat, cfg.louvain_seed, cfg.louvain_resolution);

    if (a.interpolated) {
        a.uninterp_centrality = a.interpolation->apply(a.centrality.values);
        a.uninterp_communities = detail::uninterpolate_matrix(*a.interpolation, a.communities);
        a.metrics = community_metrics(a.uninterp_communities, input);
    } else {
        a.metrics = community_metrics(a.communities, input);
    }
    return a;
}

inline json bundle_json(const CurveAnalysis& a, const RunConfig& cfg) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["config"] = cfg.echo();
    j["input"] = a.label;
    j["n_vertices"] = a.n_vertices;
    j["trivial_ph"] = a.trivial_ph;
    json desc;
    desc["curvature"] = a.curvature_vec;
    desc["torsion"] = a.torsion_vec;
    desc["density"] = a.density_vec;
    j["descriptors"] = std::move(desc);
    j["diagram"] = a.diagram;
    if (!a.trivial_ph) {
        j["hypergraph"] = io::hypergraph_to_json(a.hypergraph);
        j["centrality"] = io::centrality_to_json(a.centrality);
        j["communities"] = io::communities_to_json(
            a.communities, a.interpolated ? nullptr : &a.metrics);
        if (a.interpolated) {
            j["interpolation"] = io::interpolation_map_to_json(*a.interpolation);
            json u;
            u["centrality"] = a.uninterp_centrality;
            u["communities"] = io::communities_to_json(a.uninterp_communities, &a.metrics);
            j["uninterpolated"] = std::move(u);
        }
    }
    return j;
}

struct BatchResult {
    std::vector<CurveAnalysis> analyses;
    std::size_t trivial_count = 0;
    json summary;
};

inline Curve load_input_curve(const std::string& path, const RunConfig& cfg) {
    return io::read_curve_csv(path, cfg.time_as_z, cfg.time_step);
}

/// Analyze every input curve (optionally in parallel), write one bundle per
/// curve plus a batch summary. Returns the analyses in input order.
inline BatchResult run_pipeline(const RunConfig& cfg, bool write_outputs = true) {
    BatchResult result;
    result.analyses.resize(cfg.inputs.size());
    detail::parallel_for(cfg.inputs.size(), cfg.jobs, [&](std::size_t i) {
        const Curve curve = load_input_curve(cfg.inputs[i], cfg);
        result.analyses[i] = analyze_curve(curve, cfg, cfg.inputs[i]);
        if (write_outputs) {
            const std::string stem =
                std::filesystem::path(cfg.inputs[i]).stem().string();
            io::write_file_atomic(cfg.output_dir + "/" + stem + ".bundle.json",
                                  bundle_json(result.analyses[i], cfg).dump(2) + "\n");
        }
    });
    json rows = json::array();
    for (const auto& a : result.analyses) {
        if (a.trivial_ph) ++result.trivial_count;
        json r;
        r["input"] = a.label;
        r["n_vertices"] = a.n_vertices;
        r["trivial_ph"] = a.trivial_ph;
        r["pairs"] = a.diagram.at("pairs").size();
        r["k_communities"] = a.trivial_ph ? 0 : a.communities.k();
        rows.push_back(std::move(r));
    }
    result.summary["schema_version"] = kSchemaVersion;
    result.summary["config"] = cfg.echo();
    result.summary["curves"] = std::move(rows);
    result.summary["trivial_count"] = result.trivial_count;
    if (write_outputs)
        io::write_file_atomic(cfg.output_dir + "/summary.json",
                              result.summary.dump(2) + "\n");
    return result;
}

/// Robustness sweep: each curve is re-analyzed after Gaussian perturbation
/// at every sigma and after smoothing; centrality correlation and partition
/// AMI against the unperturbed run are reported per (curve, variant) with
/// per-variant median/quartile aggregates.
inline json run_robustness(const RunConfig& cfg, bool write_outputs = true) {
    std::vector<std::string> variants;
    for (double s : cfg.sigmas) variants.push_back("sigma=" + io::format_double(s));
    variants.push_back("smooth");

    std::vector<std::vector<detail::VariantRow>> rows(cfg.inputs.size());
    detail::parallel_for(cfg.inputs.size(), cfg.jobs, [&](std::size_t i) {
        const Curve base_curve = load_input_curve(cfg.inputs[i], cfg);
        const CurveAnalysis base = analyze_curve(base_curve, cfg, cfg.inputs[i]);
        for (std::size_t v = 0; v < variants.size(); ++v) {
            detail::VariantRow row{cfg.inputs[i], variants[v], false, 0.0, 0.0};
            Curve variant_curve =
                v < cfg.sigmas.size()
                    ? perturb(base_curve, cfg.sigmas[v],
                              cfg.seed + 1000 * i + v)
                    : smooth(base_curve, cfg.smooth_window, cfg.smooth_passes);
            const CurveAnalysis va = analyze_curve(variant_curve, cfg);
            if (base.trivial_ph || va.trivial_ph) {
                row.trivial = true;
            } else {
                row.correlation = detail::safe_correlation(base.comparison_centrality(),
                                                           va.comparison_centrality());
                row.ami = stats::ami(base.comparison_partition(), va.comparison_partition());
            }
            rows[i].push_back(std::move(row));
        }
    });

    json report;
    report["schema_version"] = kSchemaVersion;
    report["config"] = cfg.echo();
    json jrows = json::array();
    for (const auto& per_curve : rows)
        for (const auto& r : per_curve) {
            json jr;
            jr["input"] = r.input;
            jr["variant"] = r.variant;
            jr["trivial_ph"] = r.trivial;
            if (!r.trivial) {
                jr["centrality_correlation"] = r.correlation;
                jr["partition_ami"] = r.ami;
            }
            jrows.push_back(std::move(jr));
        }
    report["rows"] = std::move(jrows);
    json agg = json::array();
    for (std::size_t v = 0; v < variants.size(); ++v) {
        std::vector<double> corr, amis;
        for (const auto& per_curve : rows) {
            if (per_curve[v].trivial) continue;
            corr.push_back(per_curve[v].correlation);
            amis.push_back(per_curve[v].ami);
        }
        json ja;
        ja["variant"] = variants[v];
        ja["n"] = corr.size();
        ja["correlation_median"] = detail::median(corr);
        ja["correlation_q25"] = detail::quantile(corr, 0.25);
        ja["correlation_q75"] = detail::quantile(corr, 0.75);
        ja["ami_median"] = detail::median(amis);
        ja["ami_q25"] = detail::quantile(amis, 0.25);
        ja["ami_q75"] = detail::quantile(amis, 0.75);
        agg.push_back(std::move(ja));
    }
    report["aggregates"] = std::move(agg);
    if (write_outputs)
        io::write_file_atomic(cfg.output_dir + "/robustness.json", report.dump(2) + "\n");
    return report;
}

/// Run both generator policies on every curve and report centrality
/// correlation, partition AMI and per-pair generator Jaccard similarity.
inline json run_generator_compare(const RunConfig& cfg, bool write_outputs = true) {
    std::vector<detail::CompareRow> rows(cfg.inputs.size());
    detail::parallel_for(cfg.inputs.size(), cfg.jobs, [&](std::size_t i) {
        const Curve curve = load_input_curve(cfg.inputs[i], cfg);
        RunConfig reduction_cfg = cfg;
        reduction_cfg.policy = GeneratorPolicy::reduction;
        RunConfig minimal_cfg = cfg;
        minimal_cfg.policy = GeneratorPolicy::minimal;
        const CurveAnalysis ra = analyze_curve(curve, reduction_cfg, cfg.inputs[i]);
        detail::CompareRow row;
        row.input = cfg.inputs[i];
        if (ra.trivial_ph) {
            row.trivial = true;
        } else {
            const CurveAnalysis ma = analyze_curve(curve, minimal_cfg, cfg.inputs[i]);
            row.correlation = detail::safe_correlation(ra.comparison_centrality(),
                                                       ma.comparison_centrality());
            row.ami = stats::ami(ra.comparison_partition(), ma.comparison_partition());
            for (std::size_t p = 0; p < ra.hypergraph.hyperedges.size(); ++p) {
                const auto& a = ra.hypergraph.hyperedges[p];
                const auto& b = ma.hypergraph.hyperedges[p];
                std::vector<std::uint32_t> inter, uni;
                std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                                      std::back_inserter(inter));
                std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                               std::back_inserter(uni));
                row.jaccard.push_back(static_cast<double>(inter.size()) /
                                      static_cast<double>(uni.size()));
            }
        }
        rows[i] = std::move(row);
    });

    json report;
    report["schema_version"] = kSchemaVersion;
    report["config"] = cfg.echo();
    json jrows = json::array();
    std::vector<double> corrs, amis, jaccards;
    for (const auto& r : rows) {
        json jr;
        jr["input"] = r.input;
        jr["trivial_ph"] = r.trivial;
        if (!r.trivial) {
            jr["centrality_correlation"] = r.correlation;
            jr["partition_ami"] = r.ami;
            jr["generator_jaccard"] = r.jaccard;
            corrs.push_back(r.correlation);
            amis.push_back(r.ami);
            jaccards.insert(jaccards.end(), r.jaccard.begin(), r.jaccard.end());
        }
        jrows.push_back(std::move(jr));
    }
    report["rows"] = std::move(jrows);
    report["correlation_median"] = detail::median(corrs);
    report["ami_median"] = detail::median(amis);
    report["jaccard_median"] = detail::median(jaccards);
    if (write_outputs)
        io::write_file_atomic(cfg.output_dir + "/generator_compare.json",
                              report.dump(2) + "\n");
    return report;
}

/// Export the CNN input features: the 0/1 incidence matrix H and the node
/// centrality vector V, one pair of CSV files per curve.
inline json export_features(const RunConfig& cfg) {
    json report;
    report["schema_version"] = kSchemaVersion;
    report["config"] = cfg.echo();
    json files = json::array();
    detail::parallel_for(cfg.inputs.size(), cfg.jobs, [&](std::size_t i) {
        const Curve curve = load_input_curve(cfg.inputs[i], cfg);
        const CurveAnalysis a = analyze_curve(curve, cfg, cfg.inputs[i]);
        const std::string stem = std::filesystem::path(cfg.inputs[i]).stem().string();
        PHHypergraph h = a.hypergraph;
        if (a.trivial_ph) {
            h.n_nodes = a.interpolated ? cfg.interpolate_target : a.n_vertices;
            h.hyperedges.clear();
        }
        io::write_file_atomic(cfg.output_dir + "/" + stem + ".H.csv",
                              io::incidence_matrix_csv(h));
        std::string vcsv = "centrality\n";
        const std::vector<double> values =
            a.trivial_ph ? std::vector<double>(h.n_nodes, 0.0) : a.centrality.values;
        for (double v : values) {
            vcsv += io::format_double(v);
            vcsv += '\n';
        }
        io::write_file_atomic(cfg.output_dir + "/" + stem + ".V.csv", vcsv);
    });
    for (const auto& input : cfg.inputs) {
        const std::string stem = std::filesystem::path(input).stem().string();
        json f;
        f["input"] = input;
        f["incidence"] = stem + ".H.csv";
        f["centrality"] = stem + ".V.csv";
        files.push_back(std::move(f));
    }
    report["files"] = std::move(files);
    io::write_file_atomic(cfg.output_dir + "/features.json", report.dump(2) + "\n");
    return report;
}

}  // namespace hypertda
