// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <vector>

#include "hypertda/hypertda.hpp"
#include "oracles.hpp"

using namespace hypertda;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Report {
    bool all_ok = true;
    void criterion(int n, bool ok, const std::string& what, const std::string& detail) {
        all_ok &= ok;
        std::printf("[%s] criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", n,
                    what.c_str(), detail.c_str());
        std::fflush(stdout);
    }
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

DistanceMatrix random_cloud(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Vec3> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back({u(rng), u(rng), u(rng)});
    return distance_matrix(Curve(std::move(pts)));
}

Curve unit_square() {
    return Curve({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}});
}

Curve unit_hexagon() {
    std::vector<Vec3> pts;
    for (int i = 0; i < 6; ++i) {
        const double a = std::numbers::pi / 3.0 * i;
        pts.push_back({std::cos(a), std::sin(a), 0.0});
    }
    return Curve(std::move(pts));
}

PHHypergraph random_connected_hypergraph(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> n_edges(2, 6);
    std::uniform_int_distribution<std::uint32_t> size_dist(3, 6);
    std::uniform_real_distribution<double> w(0.05, 1.0);
    const std::size_t ne = n_edges(rng);
    PHHypergraph h;
    std::uint32_t n = 0, anchor = 0;
    for (std::size_t j = 0; j < ne; ++j) {
        const std::uint32_t k = size_dist(rng);
        std::vector<std::uint32_t> he = {anchor};
        for (std::uint32_t i = 1; i < k; ++i) he.push_back(n + i);
        n += k;
        anchor = he.back();
        std::sort(he.begin(), he.end());
        h.hyperedges.push_back(he);
        h.weights.push_back(w(rng));
    }
    h.n_nodes = n + 1;
    return h;
}

// worst centrality iteration count across every hypergraph the suite touches
std::size_t g_worst_iterations = 0;
bool g_convergence_ok = true;

CurveAnalysis analyze_tracked(const Curve& c, const RunConfig& cfg) {
    CurveAnalysis a = analyze_curve(c, cfg);
    if (!a.trivial_ph) {
        g_worst_iterations = std::max(g_worst_iterations, a.centrality.iterations);
        if (a.centrality.iterations >= 1000 || a.centrality.residual >= 1e-8)
            g_convergence_ok = false;
    }
    return a;
}

}  // namespace

// --- criterion 1: oracle equivalence on 100 random point sets ---------------
static void criterion_1(Report& rep) {
    const auto t0 = Clock::now();
    bool ok = true;
    std::string detail;
    for (std::uint64_t seed = 0; seed < 100 && ok; ++seed) {
        const std::size_t n = 5 + seed % 6;  // 5..10
        const auto d = random_cloud(n, 1000 + seed);
        const Filtration f(d, d.max());
        const auto got = persistence_dim1(f);
        std::vector<std::pair<double, double>> pairs;
        for (const auto& p : got.diagram().pairs) pairs.push_back({p.birth, p.death});
        std::sort(pairs.begin(), pairs.end());
        const auto expect = oracles::oracle_diagram_dim1(d).pairs;
        if (pairs.size() != expect.size()) {
            ok = false;
            detail = "pair count mismatch at seed " + std::to_string(seed);
            break;
        }
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if (pairs[i] != expect[i]) {
                ok = false;
                detail = "pair value mismatch at seed " + std::to_string(seed);
            }
    }
    const double dt = seconds_since(t0);
    if (ok && dt >= 60.0) {
        ok = false;
        detail = "runtime " + fmt(dt) + "s >= 60s";
    }
    if (ok) detail = "100 diagrams equal, " + fmt(dt) + "s";
    rep.criterion(1, ok, "diagram equals brute-force F2-rank oracle", detail);
}

// --- criterion 2: analytic diagrams ------------------------------------------
static void criterion_2(Report& rep) {
    bool ok = true;
    std::string detail = "square (1, sqrt2); hexagon (1, sqrt3)";
    {
        const auto d = distance_matrix(unit_square());
        const auto ph = persistence_dim1(Filtration(d, d.max()));
        ok &= ph.diagram().pairs.size() == 1;
        if (ok) {
            ok &= std::abs(ph.diagram().pairs[0].birth - 1.0) < 1e-9;
            ok &= std::abs(ph.diagram().pairs[0].death - std::sqrt(2.0)) < 1e-9;
        }
    }
    {
        const auto d = distance_matrix(unit_hexagon());
        const auto ph = persistence_dim1(Filtration(d, d.max()));
        ok &= ph.diagram().pairs.size() == 1;
        if (ok) {
            ok &= std::abs(ph.diagram().pairs[0].birth - 1.0) < 1e-9;
            ok &= std::abs(ph.diagram().pairs[0].death - std::sqrt(3.0)) < 1e-9;
        }
    }
    if (!ok) detail = "analytic diagram mismatch";
    rep.criterion(2, ok, "unit square and hexagon diagrams", detail);
}

// --- criterion 3: generator validity + small-instance optimality -------------
static void criterion_3(Report& rep) {
    const auto t0 = Clock::now();
    bool ok = true;
    std::string detail;
    std::size_t generators_checked = 0;

    for (std::size_t c = 0; c < 50 && ok; ++c) {
        const std::size_t length = c < 30 ? 100 : 200;
        const Curve curve = generate_sarw(length, 2000 + c);
        const auto d = distance_matrix(curve);
        const Filtration f(d, d.max());
        const auto ph = persistence_dim1(f);
        for (const GeneratorPolicy policy :
             {GeneratorPolicy::reduction, GeneratorPolicy::minimal}) {
            const auto gens = compute_generators(policy, f, ph);
            const auto& pairs = ph.diagram().pairs;
            for (std::size_t i = 0; i < pairs.size() && ok; ++i) {
                const auto& g = gens.generators[i];
                ++generators_checked;
                if (!g.is_cycle(f)) {
                    ok = false;
                    detail = "nonzero boundary (curve " + std::to_string(c) + ")";
                } else if (ph.is_boundary_at(g, pairs[i].birth)) {
                    ok = false;
                    detail = "bounding at birth (curve " + std::to_string(c) + ")";
                } else if (!ph.is_boundary_at(g, pairs[i].death)) {
                    ok = false;
                    detail = "non-bounding at death (curve " + std::to_string(c) + ")";
                }
            }
        }
    }

    // exhaustive length optimality on n <= 8 instances
    std::size_t optimality_checked = 0;
    for (std::uint64_t seed = 0; seed < 40 && ok; ++seed) {
        const std::size_t n = 6 + seed % 3;
        const auto d = random_cloud(n, 3000 + seed);
        const Filtration f(d, d.max());
        const auto ph = persistence_dim1(f);
        for (const auto& p : ph.diagram().pairs) {
            const double oracle = oracles::oracle_min_cycle_length(f, p.generator, p.birth);
            if (oracle < 0.0) continue;
            const auto got = length_minimize(f, ph, p.generator, p.birth);
            ++optimality_checked;
            if (std::abs(got.total_length(f) - oracle) > 1e-9) {
                ok = false;
                detail = "suboptimal length at cloud seed " + std::to_string(seed);
                break;
            }
        }
    }

    const double dt = seconds_since(t0);
    if (ok && dt >= 600.0) {
        ok = false;
        detail = "runtime " + fmt(dt) + "s >= 600s";
    }
    if (ok)
        detail = std::to_string(generators_checked) + " generators, " +
                 std::to_string(optimality_checked) + " optimality checks, " + fmt(dt) + "s";
    rep.criterion(3, ok, "generator validity and minimal-length optimality", detail);
}

// --- criterion 4: jump minimization fills collinear runs ---------------------
static void criterion_4(Report& rep) {
    const Curve c({{0, 0, 0},
                   {0.5, 0, 0},
                   {1.0, 0, 0},
                   {1.5, 0, 0},
                   {2.0, 0, 0},
                   {2.2, 0.7, 0},
                   {1.0, 1.4, 0},
                   {-0.2, 0.7, 0}});
    const auto d = distance_matrix(c);
    const Filtration f(d, d.max());
    const auto ph = persistence_dim1(f);
    bool ok = !ph.diagram().pairs.empty();
    std::string detail = "no pairs";
    if (ok) {
        const auto gens = compute_generators(GeneratorPolicy::minimal, f, ph);
        std::size_t main_pair = 0;
        for (std::size_t i = 0; i < ph.diagram().pairs.size(); ++i)
            if (ph.diagram().pairs[i].persistence() >
                ph.diagram().pairs[main_pair].persistence())
                main_pair = i;
        const auto vs = gens.generators[main_pair].vertex_set(f);
        for (std::uint32_t v = 0; v <= 4; ++v)
            ok &= std::binary_search(vs.begin(), vs.end(), v);
        detail = ok ? "all 5 collinear vertices included"
                    : "collinear vertex missing from the minimal generator";
    }
    rep.criterion(4, ok, "jump minimization includes every collinear vertex", detail);
}

// --- criterion 5: correlations with geometric descriptors --------------------
static void criterion_5(Report& rep) {
    const auto t0 = Clock::now();
    RunConfig cfg;  // reduction policy, defaults
    std::vector<double> codist, cden, ccur, ctor;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Curve curve = generate_sarw(100, 4000 + seed);
        const auto a = analyze_tracked(curve, cfg);
        if (a.trivial_ph) continue;
        const auto d = distance_matrix(curve);
        const auto part = a.communities.to_partition();
        std::vector<double> com, dist;
        for (std::size_t i = 0; i < curve.size(); ++i)
            for (std::size_t j = i + 1; j < curve.size(); ++j) {
                com.push_back(part.labels[i] >= 0 && part.labels[i] == part.labels[j]
                                  ? 1.0
                                  : 0.0);
                dist.push_back(d(i, j));
            }
        codist.push_back(stats::pearson(com, dist));
        cden.push_back(stats::pearson(a.centrality.values, a.density_vec));
        ccur.push_back(stats::pearson(a.centrality.values, a.curvature_vec));
        ctor.push_back(stats::pearson(a.centrality.values, a.torsion_vec));
    }
    const double m_codist = median(codist), m_cden = median(cden),
                 m_ccur = median(ccur), m_ctor = median(ctor);
    bool ok = codist.size() >= 45;
    ok &= m_codist >= -0.75 && m_codist <= -0.25;
    ok &= m_cden > 0.0;
    ok &= std::abs(m_ccur) < 0.4;
    ok &= std::abs(m_ctor) < 0.4;
    const double dt = seconds_since(t0);
    if (ok && dt >= 900.0) ok = false;
    rep.criterion(5, ok, "descriptor correlations over 50 SARWs",
                  "comembership-dist " + fmt(m_codist) + ", density " + fmt(m_cden) +
                      ", curvature " + fmt(m_ccur) + ", torsion " + fmt(m_ctor) + ", " +
                      fmt(dt) + "s");
}

// --- criterion 6: generator-choice robustness --------------------------------
static void criterion_6(Report& rep) {
    RunConfig reduction_cfg, minimal_cfg;
    minimal_cfg.policy = GeneratorPolicy::minimal;
    std::vector<double> corrs, amis;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Curve curve = generate_sarw(100, 5000 + seed);
        const auto ra = analyze_tracked(curve, reduction_cfg);
        if (ra.trivial_ph) continue;
        const auto ma = analyze_tracked(curve, minimal_cfg);
        corrs.push_back(stats::pearson(ra.centrality.values, ma.centrality.values));
        amis.push_back(
            stats::ami(ra.communities.to_partition(), ma.communities.to_partition()));
    }
    const double mc = median(corrs), ma = median(amis);
    const bool ok = corrs.size() >= 18 && mc > 0.5 && ma > 0.3;
    rep.criterion(6, ok, "reduction vs minimal generators over 20 SARWs",
                  "centrality corr " + fmt(mc) + ", ami " + fmt(ma));
}

// --- criterion 7: noise robustness -------------------------------------------
static void criterion_7(Report& rep) {
    RunConfig cfg;
    const std::vector<double> sigmas = {0.05, 0.1, 0.15, 0.2};
    std::vector<std::vector<double>> corr_by_sigma(sigmas.size()),
        ami_by_sigma(sigmas.size());
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Curve curve = generate_sarw(100, 6000 + seed);
        const auto base = analyze_tracked(curve, cfg);
        if (base.trivial_ph) continue;
        for (std::size_t s = 0; s < sigmas.size(); ++s) {
            const Curve noisy = perturb(curve, sigmas[s], 7000 + 10 * seed + s);
            const auto va = analyze_tracked(noisy, cfg);
            if (va.trivial_ph) continue;
            corr_by_sigma[s].push_back(
                stats::pearson(base.centrality.values, va.centrality.values));
            ami_by_sigma[s].push_back(
                stats::ami(base.communities.to_partition(), va.communities.to_partition()));
        }
    }
    std::vector<double> corr_med, ami_med;
    for (std::size_t s = 0; s < sigmas.size(); ++s) {
        corr_med.push_back(median(corr_by_sigma[s]));
        ami_med.push_back(median(ami_by_sigma[s]));
    }
    auto inversions = [](const std::vector<double>& m) {
        std::size_t inv = 0;
        for (std::size_t i = 0; i + 1 < m.size(); ++i)
            if (m[i + 1] > m[i] + 1e-12) ++inv;
        return inv;
    };
    bool ok = corr_med[0] > 0.7 && ami_med[0] > 0.4;
    ok &= inversions(corr_med) <= 1 && inversions(ami_med) <= 1;
    std::string detail = "corr medians";
    for (double v : corr_med) detail += " " + fmt(v);
    detail += "; ami medians";
    for (double v : ami_med) detail += " " + fmt(v);
    rep.criterion(7, ok, "noise robustness over the sigma sweep", detail);
}

// --- criterion 8: centrality properties --------------------------------------
static void criterion_8(Report& rep) {
    bool ok = true;
    std::string why;

    {  // exact symmetry on a single hyperedge
        PHHypergraph h;
        h.n_nodes = 5;
        h.hyperedges = {{0, 1, 2}};
        h.weights = {2.5};
        const auto c = centrality_max(h);
        for (std::uint32_t v : {0u, 1u, 2u})
            if (std::abs(c.values[v] - 1.0 / 3.0) > 1e-15) ok = false;
        if (!ok) why = "single-hyperedge symmetry";
    }

    if (ok) {  // weight-scale invariance
        for (std::uint64_t seed = 0; seed < 10 && ok; ++seed) {
            const auto h = random_connected_hypergraph(8000 + seed);
            auto scaled = h;
            for (double& w : scaled.weights) w *= 7.0;
            const auto a = centrality_max(h);
            const auto b = centrality_max(scaled);
            for (std::size_t v = 0; v < h.n_nodes; ++v)
                if (std::abs(a.values[v] - b.values[v]) > 1e-10) ok = false;
        }
        if (!ok) why = "weight-scale invariance";
    }

    if (ok) {  // oracle agreement on 50 random hypergraphs
        for (std::uint64_t seed = 0; seed < 50 && ok; ++seed) {
            const auto h = random_connected_hypergraph(9000 + seed);
            const auto got = centrality_max(h);
            g_worst_iterations = std::max(g_worst_iterations, got.iterations);
            const auto expect = oracles::oracle_centrality(h, 10.0, 1e-10, 5000);
            for (std::size_t v = 0; v < h.n_nodes; ++v)
                if (std::abs(got.values[v] - expect[v]) > 1e-6) ok = false;
        }
        if (!ok) why = "oracle agreement";
    }

    if (ok && !g_convergence_ok) {
        ok = false;
        why = "a pipeline hypergraph needed >= 1000 iterations or missed tol";
    }
    rep.criterion(8, ok, "centrality convergence, symmetry, invariance, oracle",
                  ok ? "worst iteration count " + std::to_string(g_worst_iterations)
                     : why);
}

// --- criterion 9: statistics oracles ------------------------------------------
static void criterion_9(Report& rep) {
    bool ok = true;
    std::string why;
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> val(0, 4);
    for (std::size_t nx = 1; nx <= 9 && ok; ++nx) {
        for (std::size_t ny = 1; ny + nx <= 10 && ok; ++ny) {
            for (int rep_i = 0; rep_i < 3 && ok; ++rep_i) {
                std::vector<double> x(nx), y(ny);
                for (double& v : x) v = val(rng);
                for (double& v : y) v = val(rng);
                const double got = stats::mann_whitney(x, y);
                const double expect = oracles::oracle_mann_whitney(x, y);
                if (std::abs(got - expect) > 1e-12) {
                    ok = false;
                    why = "mann-whitney enumeration mismatch";
                }
            }
        }
    }
    if (ok) {
        stats::Partition a{{0, 0, 1, 1, 2, 2}};
        stats::Partition one{{0, 0, 0, 0, 0, 0}};
        if (std::abs(stats::ami(a, a) - 1.0) > 1e-12 || stats::ami(one, a) != 0.0) {
            ok = false;
            why = "ami degenerate values";
        }
    }
    if (ok) {
        const std::vector<double> x = {1, 2, 3}, y = {11, 12, 13};
        const auto same = stats::ks_two_sample(x, x);
        const auto disjoint = stats::ks_two_sample(x, y);
        const auto half =
            stats::ks_two_sample(std::vector<double>{1, 2}, std::vector<double>{1.5, 2.5});
        if (same.statistic != 0.0 || same.p_value != 1.0 || disjoint.statistic != 1.0 ||
            half.statistic != 0.5) {
            ok = false;
            why = "ks example values";
        }
    }
    rep.criterion(9, ok, "mann-whitney, ami and ks oracles", ok ? "all exact" : why);
}

// --- criterion 10: interpolation contract --------------------------------------
static void criterion_10(Report& rep) {
    bool ok = true;
    std::string why;
    const Curve c = generate_sarw(199, 4242);
    const auto [interp, map] = interpolate(c, 500);
    if (interp.size() != 500 || map.n_interp != 500 || map.n_orig != 199) {
        ok = false;
        why = "vertex counts";
    }
    std::size_t inserted = 0;
    for (const auto& fr : map.segment_fractions) inserted += fr.size();
    if (inserted != 301) {
        ok = false;
        why = "insertion count " + std::to_string(inserted);
    }
    std::vector<double> colsum(map.n_interp, 0.0);
    for (const auto& [r, col, w] : map.triplets) colsum[col] += w;
    for (double s : colsum)
        if (std::abs(s - 1.0) > 1e-12) {
            ok = false;
            why = "column sum " + fmt(s);
        }
    // all-ones matrix: mass conservation
    std::vector<std::vector<double>> ones(500, std::vector<double>(3, 1.0));
    const auto mapped = map.apply(ones);
    double mass = 0.0;
    for (const auto& row : mapped)
        for (double v : row) mass += v;
    if (std::abs(mass - 1500.0) > 1e-12) {
        ok = false;
        why = "mass " + fmt(mass);
    }
    rep.criterion(10, ok, "199 -> 500 interpolation contract",
                  ok ? "301 insertions, unit columns, mass conserved" : why);
}

// --- criterion 11: byte-identical determinism ----------------------------------
static void criterion_11(Report& rep) {
    const fs::path dir = fs::temp_directory_path() / "hypertda_acceptance_determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);
    RunConfig cfg;
    cfg.output_dir = dir.string();
    cfg.jobs = 4;
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto file = dir / ("curve" + std::to_string(seed) + ".csv");
        io::write_curve_csv(file.string(), generate_sarw(80, 500 + seed));
        cfg.inputs.push_back(file.string());
    }
    {
        const auto sq = dir / "square.csv";
        io::write_curve_csv(sq.string(), unit_square());
        cfg.inputs.push_back(sq.string());
        const auto ln = dir / "line.csv";
        io::write_curve_csv(ln.string(),
                            Curve({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}}));
        cfg.inputs.push_back(ln.string());
    }
    run_pipeline(cfg);
    std::map<std::string, std::string> first;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() != ".json") continue;
        std::ifstream in(entry.path(), std::ios::binary);
        first[entry.path().filename().string()] =
            std::string(std::istreambuf_iterator<char>(in), {});
    }
    run_pipeline(cfg);  // same config, same directory
    bool ok = !first.empty();
    std::string why = first.empty() ? "no outputs" : "";
    for (const auto& [name, content] : first) {
        std::ifstream in(dir / name, std::ios::binary);
        const std::string again(std::istreambuf_iterator<char>(in), {});
        if (again != content) {
            ok = false;
            why = "byte difference in " + name;
        }
    }
    fs::remove_all(dir);
    rep.criterion(11, ok, "re-running analyze is byte-identical",
                  ok ? std::to_string(first.size()) + " files compared" : why);
}

int main() {
    Report rep;
    criterion_1(rep);
    criterion_2(rep);
    criterion_3(rep);
    criterion_4(rep);
    criterion_5(rep);
    criterion_6(rep);
    criterion_7(rep);
    criterion_8(rep);
    criterion_9(rep);
    criterion_10(rep);
    criterion_11(rep);
    std::printf("%s\n", rep.all_ok ? "ACCEPTANCE: all criteria passed"
                                   : "ACCEPTANCE: FAILURES PRESENT");
    return rep.all_ok ? 0 : 1;
}
