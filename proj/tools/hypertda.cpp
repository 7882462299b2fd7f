// hyperTDA command line: curve generation and preprocessing, dimension-1
// persistence with generators, PH-hypergraph analysis, and the batch
// experiment harnesses.

#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hypertda/hypertda.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitTrivialPh = 4;

struct CliState {
    hypertda::RunConfig cfg;
    std::string input;
    std::string output;
    std::string policy = "reduction";
    std::string flatten_weight = "count";
    std::string sigma_list;
    std::uint64_t seed = 0;
    bool seed_given = false;
};

void add_common_options(CLI::App* cmd, CliState& st) {
    cmd->add_option("--policy", st.policy, "generator policy: reduction|minimal")
        ->check(CLI::IsMember({"reduction", "minimal"}));
    cmd->add_option("--density-radius", st.cfg.density_radius,
                    "radius for the vertex density descriptor");
    cmd->add_option("--centrality-p", st.cfg.centrality_p, "p-norm of the edge aggregation");
    cmd->add_option("--centrality-tol", st.cfg.centrality_tol, "fixed-point tolerance");
    cmd->add_option("--centrality-max-iter", st.cfg.centrality_max_iter,
                    "iteration cap for the centrality fixed point");
    cmd->add_option("--louvain-seed", st.cfg.louvain_seed, "seed for the Louvain node order");
    cmd->add_option("--resolution", st.cfg.louvain_resolution, "Louvain resolution");
    cmd->add_option("--interpolate-target", st.cfg.interpolate_target,
                    "interpolate curves to this length before analysis (0 = off)");
    cmd->add_option("--max-scale", st.cfg.max_scale,
                    "cap the filtration scale (0 = curve diameter; capped runs may "
                    "miss features that die beyond the cap)");
    cmd->add_option("--flatten-weight", st.flatten_weight,
                    "clique-expansion weighting: count|persistence")
        ->check(CLI::IsMember({"count", "persistence"}));
    cmd->add_flag("--time-as-z", st.cfg.time_as_z,
                  "accept 2-column CSV, filling z with row_index * time-step");
    cmd->add_option("--time-step", st.cfg.time_step, "z increment per row for --time-as-z");
    cmd->add_option("-j,--jobs", st.cfg.jobs, "parallel curves in batch commands");
    cmd->add_option("-O,--output-dir", st.cfg.output_dir, "directory for batch outputs");
}

void finalize_config(CliState& st) {
    st.cfg.policy = hypertda::parse_policy(st.policy);
    st.cfg.flatten_weight = st.flatten_weight == "count"
                                ? hypertda::FlattenWeight::count
                                : hypertda::FlattenWeight::persistence;
    st.cfg.seed = st.seed;
    if (!st.sigma_list.empty()) {
        st.cfg.sigmas.clear();
        std::string item;
        std::istringstream ss(st.sigma_list);
        while (std::getline(ss, item, ','))
            if (!item.empty()) st.cfg.sigmas.push_back(std::stod(item));
        if (st.cfg.sigmas.empty())
            throw std::invalid_argument("--sigmas: empty list");
    }
}

hypertda::Curve load(const CliState& st) {
    return hypertda::io::read_curve_csv(st.input, st.cfg.time_as_z, st.cfg.time_step);
}

void emit(const std::string& output, const std::string& content) {
    if (output.empty() || output == "-")
        std::cout << content;
    else
        hypertda::io::write_file_atomic(output, content);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hyperTDA: persistent-homology hypergraph analysis of spatial curves"};
    app.require_subcommand(1);

    CliState st;
    std::function<int()> action;

    // --- curve generation and preprocessing -------------------------------
    std::size_t length = 100;
    double sigma = 0.05;
    double min_separation = 1.0;
    std::size_t target = 0;
    std::string map_out;

    auto* gen = app.add_subcommand("generate-sarw", "generate an equilateral SARW");
    gen->add_option("--length", length, "number of vertices")->required();
    gen->add_option("--seed", st.seed, "RNG seed")->required();
    gen->add_option("--min-separation", min_separation,
                    "hard-sphere exclusion between non-adjacent vertices");
    gen->add_option("-o,--output", st.output, "output CSV (default stdout)");
    gen->callback([&] {
        action = [&]() {
            hypertda::SarwOptions opt;
            opt.min_separation = min_separation;
            const auto curve = hypertda::generate_sarw(length, st.seed, opt);
            emit(st.output, hypertda::io::curve_to_csv(curve));
            return kExitOk;
        };
    });

    auto* pert = app.add_subcommand("perturb", "add Gaussian noise to a curve");
    pert->add_option("-i,--input", st.input, "curve CSV")->required();
    pert->add_option("--sigma", sigma, "noise standard deviation")->required();
    pert->add_option("--seed", st.seed, "RNG seed")->required();
    pert->add_option("-o,--output", st.output, "output CSV (default stdout)");
    add_common_options(pert, st);
    pert->callback([&] {
        action = [&]() {
            const auto curve = hypertda::perturb(load(st), sigma, st.seed);
            emit(st.output, hypertda::io::curve_to_csv(curve));
            return kExitOk;
        };
    });

    auto* smo = app.add_subcommand("smooth", "moving-average smoothing");
    smo->add_option("-i,--input", st.input, "curve CSV")->required();
    smo->add_option("--window", st.cfg.smooth_window, "odd window size");
    smo->add_option("--passes", st.cfg.smooth_passes, "smoothing passes");
    smo->add_option("-o,--output", st.output, "output CSV (default stdout)");
    add_common_options(smo, st);
    smo->callback([&] {
        action = [&]() {
            const auto curve =
                hypertda::smooth(load(st), st.cfg.smooth_window, st.cfg.smooth_passes);
            emit(st.output, hypertda::io::curve_to_csv(curve));
            return kExitOk;
        };
    });

    auto* interp = app.add_subcommand("interpolate", "greedy even-spread interpolation");
    interp->add_option("-i,--input", st.input, "curve CSV")->required();
    interp->add_option("--target", target, "target vertex count")->required();
    interp->add_option("-o,--output", st.output, "output CSV (default stdout)");
    interp->add_option("--map-out", map_out, "write the interpolation map JSON here");
    add_common_options(interp, st);
    interp->callback([&] {
        action = [&]() {
            const auto [curve, map] = hypertda::interpolate(load(st), target);
            emit(st.output, hypertda::io::curve_to_csv(curve));
            if (!map_out.empty())
                hypertda::io::write_file_atomic(
                    map_out, hypertda::io::interpolation_map_to_json(map).dump(2) + "\n");
            return kExitOk;
        };
    });

    // --- single-curve pipeline stages --------------------------------------
    auto add_stage = [&](const char* name, const char* desc) {
        auto* cmd = app.add_subcommand(name, desc);
        cmd->add_option("-i,--input", st.input, "curve CSV")->required();
        cmd->add_option("-o,--output", st.output, "output file (default stdout)");
        add_common_options(cmd, st);
        return cmd;
    };

    auto analyze_one = [&]() {
        finalize_config(st);
        return hypertda::analyze_curve(load(st), st.cfg, st.input);
    };

    auto* ph = add_stage("ph", "dimension-1 persistence diagram with reduction generators");
    ph->callback([&] {
        action = [&]() {
            finalize_config(st);
            const auto curve = load(st);
            const auto d = hypertda::distance_matrix(curve);
            const double scale = st.cfg.max_scale > 0.0 ? st.cfg.max_scale : d.max();
            const hypertda::Filtration f(d, scale);
            const auto ph_result = hypertda::persistence_dim1(f);
            emit(st.output,
                 hypertda::io::diagram_to_json(f, ph_result.diagram()).dump(2) + "\n");
            return kExitOk;
        };
    });

    auto* gens = add_stage("generators", "diagram with generators under a policy");
    gens->callback([&] {
        action = [&]() {
            finalize_config(st);
            const auto curve = load(st);
            const auto d = hypertda::distance_matrix(curve);
            const double scale = st.cfg.max_scale > 0.0 ? st.cfg.max_scale : d.max();
            const hypertda::Filtration f(d, scale);
            const auto ph_result = hypertda::persistence_dim1(f);
            const auto gset =
                hypertda::compute_generators(st.cfg.policy, f, ph_result);
            emit(st.output,
                 hypertda::io::diagram_to_json(f, ph_result.diagram(), &gset).dump(2) + "\n");
            return kExitOk;
        };
    });

    std::string incidence_out;
    auto* hg = add_stage("hypergraph", "PH-hypergraph of a curve");
    hg->add_option("--incidence", incidence_out, "also write the 0/1 incidence CSV here");
    hg->callback([&] {
        action = [&]() {
            const auto a = analyze_one();
            if (a.trivial_ph) {
                std::cerr << "trivial PH: no hyperedges\n";
                return kExitTrivialPh;
            }
            emit(st.output, hypertda::io::hypergraph_to_json(a.hypergraph).dump(2) + "\n");
            if (!incidence_out.empty())
                hypertda::io::write_file_atomic(
                    incidence_out, hypertda::io::incidence_matrix_csv(a.hypergraph));
            return kExitOk;
        };
    });

    auto* cen = add_stage("centrality", "max-flavour PH-centrality");
    cen->callback([&] {
        action = [&]() {
            const auto a = analyze_one();
            if (a.trivial_ph) {
                std::cerr << "trivial PH: no hyperedges\n";
                return kExitTrivialPh;
            }
            emit(st.output, hypertda::io::centrality_to_json(a.centrality).dump(2) + "\n");
            return kExitOk;
        };
    });

    auto* com = add_stage("communities", "Louvain PH-communities and metrics");
    com->callback([&] {
        action = [&]() {
            const auto a = analyze_one();
            if (a.trivial_ph) {
                std::cerr << "trivial PH: no communities\n";
                return kExitTrivialPh;
            }
            const auto& m = a.interpolated ? a.uninterp_communities : a.communities;
            emit(st.output, hypertda::io::communities_to_json(m, &a.metrics).dump(2) + "\n");
            return kExitOk;
        };
    });

    // --- batch harnesses ----------------------------------------------------
    auto add_batch = [&](const char* name, const char* desc, bool needs_seed = false) {
        auto* cmd = app.add_subcommand(name, desc);
        cmd->add_option("inputs", st.cfg.inputs, "curve CSV files")
            ->required()
            ->expected(-1);
        add_common_options(cmd, st);
        auto* seed_opt = cmd->add_option("--seed", st.seed, "base seed for stochastic stages");
        if (needs_seed) seed_opt->required();
        return cmd;
    };

    auto* analyze = add_batch("analyze", "full pipeline: one analysis bundle per curve");
    analyze->callback([&] {
        action = [&]() {
            finalize_config(st);
            const auto result = hypertda::run_pipeline(st.cfg);
            std::cout << result.summary.dump(2) << "\n";
            if (result.trivial_count == st.cfg.inputs.size()) return kExitTrivialPh;
            return kExitOk;
        };
    });

    auto* rob = add_batch("robustness", "perturbation/smoothing consistency sweep", true);
    rob->add_option("--sigmas", st.sigma_list, "comma-separated noise levels");
    rob->callback([&] {
        action = [&]() {
            finalize_config(st);
            const auto report = hypertda::run_robustness(st.cfg);
            std::cout << report["aggregates"].dump(2) << "\n";
            std::size_t usable = 0;
            for (const auto& row : report["rows"])
                if (!row["trivial_ph"].get<bool>()) ++usable;
            if (usable == 0) return kExitTrivialPh;
            return kExitOk;
        };
    });

    auto* cmpg = add_batch("compare-generators",
                           "reduction vs minimal generators on every curve");
    cmpg->callback([&] {
        action = [&]() {
            finalize_config(st);
            const auto report = hypertda::run_generator_compare(st.cfg);
            std::cout << "correlation_median " << report["correlation_median"]
                      << "\nami_median " << report["ami_median"] << "\n";
            bool any = false;
            for (const auto& row : report["rows"])
                if (!row["trivial_ph"].get<bool>()) any = true;
            if (!any) return kExitTrivialPh;
            return kExitOk;
        };
    });

    auto* feat = add_batch("export-features",
                           "incidence matrix H and centrality V per curve");
    feat->callback([&] {
        action = [&]() {
            finalize_config(st);
            hypertda::export_features(st.cfg);
            return kExitOk;
        };
    });

    CLI11_PARSE(app, argc, argv);

    try {
        return action ? action() : kExitInvalidInput;
    } catch (const hypertda::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
}
