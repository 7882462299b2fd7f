#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypertda {

/// Thrown when an iterative numerical routine fails to reach its contract
/// (non-convergence, unbounded LP, ...). Distinct from invalid_argument so
/// callers can map it to a dedicated exit code.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// min c.x subject to A x = b, x >= 0, with A given column-wise in sparse
/// form. The caller supplies an initial feasible basis whose columns form a
/// permuted identity (unit columns), so no phase-1 is needed.
struct SparseLP {
    std::size_t rows = 0;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> cols;
    std::vector<double> cost;
    std::vector<double> rhs;
    std::vector<std::uint32_t> initial_basis;  // one unit column per row, in row order
};

struct LPSolution {
    std::vector<double> x;
    double objective = 0.0;
    std::size_t iterations = 0;
};

/// Dense revised simplex with explicit basis inverse. Dantzig pricing with a
/// Bland fallback after a degenerate stall; the inverse is refactorized
/// periodically to keep the arithmetic honest.
class SimplexSolver {
public:
    explicit SimplexSolver(const SparseLP& lp) : lp_(lp) {}

    LPSolution solve(std::size_t max_iterations = 200000) {
        const std::size_t m = lp_.rows;
        const std::size_t ncols = lp_.cols.size();
        basis_ = lp_.initial_basis;
        if (basis_.size() != m)
            throw std::invalid_argument("SimplexSolver: initial basis size != rows");
        in_basis_.assign(ncols, false);
        for (std::uint32_t j : basis_) in_basis_[j] = true;
        binv_.assign(m * m, 0.0);
        for (std::size_t r = 0; r < m; ++r) binv_[r * m + r] = 1.0;
        // unit columns may carry -1 entries; normalize the inverse for them
        for (std::size_t r = 0; r < m; ++r) {
            const auto& col = lp_.cols[basis_[r]];
            if (col.size() != 1 || col[0].first != r)
                throw std::invalid_argument("SimplexSolver: initial basis not a unit basis");
            binv_[r * m + r] = 1.0 / col[0].second;
        }
        xb_.resize(m);
        compute_xb();
        for (double v : xb_)
            if (v < -1e-7) throw NumericalError("SimplexSolver: initial basis infeasible");

        // duals kept incrementally; recomputed at refactorization points and
        // to confirm optimality before stopping
        y_.resize(m);
        compute_duals();

        std::vector<double> d(m);
        std::size_t iters = 0;
        std::size_t stall = 0;
        bool bland = false;
        while (iters < max_iterations) {
            ++iters;
            std::int64_t enter = -1;
            double best_rc = -kReducedCostTol;
            for (std::size_t j = 0; j < ncols; ++j) {
                if (in_basis_[j]) continue;
                double rc = lp_.cost[j];
                for (const auto& [r, v] : lp_.cols[j]) rc -= y_[r] * v;
                if (bland) {
                    if (rc < -kReducedCostTol) {
                        enter = static_cast<std::int64_t>(j);
                        best_rc = rc;
                        break;
                    }
                } else if (rc < best_rc) {
                    best_rc = rc;
                    enter = static_cast<std::int64_t>(j);
                }
            }
            if (enter < 0) {
                // confirm against freshly computed duals before accepting
                compute_duals();
                bool really_done = true;
                for (std::size_t j = 0; j < ncols && really_done; ++j) {
                    if (in_basis_[j]) continue;
                    double rc = lp_.cost[j];
                    for (const auto& [r, v] : lp_.cols[j]) rc -= y_[r] * v;
                    if (rc < -10.0 * kReducedCostTol) really_done = false;
                }
                if (really_done) break;
                continue;  // price again with exact duals
            }

            // direction d = Binv * A_enter
            std::fill(d.begin(), d.end(), 0.0);
            for (const auto& [r, v] : lp_.cols[static_cast<std::size_t>(enter)])
                for (std::size_t i = 0; i < m; ++i) d[i] += binv_[i * m + r] * v;

            // ratio test
            std::int64_t leave = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < m; ++r) {
                if (d[r] > kPivotTol) {
                    const double ratio = xb_[r] / d[r];
                    if (ratio < best_ratio - 1e-12 ||
                        (ratio < best_ratio + 1e-12 &&
                         (leave < 0 || basis_[r] < basis_[static_cast<std::size_t>(leave)]))) {
                        best_ratio = ratio;
                        leave = static_cast<std::int64_t>(r);
                    }
                }
            }
            if (leave < 0) throw NumericalError("SimplexSolver: unbounded LP");

            if (best_ratio < 1e-12) {
                if (++stall > 32 && !bland) {  // anti-cycling
                    bland = true;
                    refactorize();
                    compute_duals();
                }
            } else if (best_ratio > 1e-9) {
                // leave Bland mode only on genuine progress
                stall = 0;
                bland = false;
            }

            pivot(static_cast<std::size_t>(enter), static_cast<std::size_t>(leave), d,
                  best_ratio, best_rc);
            if (iters % kRefactorPeriod == 0) {
                refactorize();
                compute_duals();
            }
        }
        if (iters >= max_iterations)
            throw NumericalError("SimplexSolver: iteration limit reached (" +
                                 std::to_string(max_iterations) + ")");

        LPSolution sol;
        sol.x.assign(ncols, 0.0);
        double obj = 0.0;
        for (std::size_t r = 0; r < m; ++r) {
            sol.x[basis_[r]] = xb_[r];
            obj += lp_.cost[basis_[r]] * xb_[r];
        }
        sol.objective = obj;
        sol.iterations = iters;
        return sol;
    }

private:
    static constexpr double kReducedCostTol = 1e-9;
    static constexpr double kPivotTol = 1e-9;
    static constexpr std::size_t kRefactorPeriod = 512;

    void compute_xb() {
        const std::size_t m = lp_.rows;
        for (std::size_t r = 0; r < m; ++r) {
            double acc = 0.0;
            for (std::size_t c = 0; c < m; ++c) acc += binv_[r * m + c] * lp_.rhs[c];
            xb_[r] = acc;
        }
    }

    void compute_duals() {
        const std::size_t m = lp_.rows;
        for (std::size_t c = 0; c < m; ++c) {
            double acc = 0.0;
            for (std::size_t r = 0; r < m; ++r)
                acc += lp_.cost[basis_[r]] * binv_[r * m + c];
            y_[c] = acc;
        }
    }

    void pivot(std::size_t enter, std::size_t leave, const std::vector<double>& d,
               double step, double enter_rc) {
        const std::size_t m = lp_.rows;
        const double piv = d[leave];
        for (std::size_t c = 0; c < m; ++c) binv_[leave * m + c] /= piv;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == leave) continue;
            const double factor = d[r];
            if (factor == 0.0) continue;
            const double* src = &binv_[leave * m];
            double* dst = &binv_[r * m];
            for (std::size_t c = 0; c < m; ++c) dst[c] -= factor * src[c];
        }
        in_basis_[basis_[leave]] = false;
        in_basis_[enter] = true;
        basis_[leave] = static_cast<std::uint32_t>(enter);
        // incremental basic values and duals (exact in exact arithmetic;
        // refreshed at refactorization points)
        for (std::size_t r = 0; r < m; ++r) {
            xb_[r] -= step * d[r];
            if (xb_[r] < 0.0 && xb_[r] > -1e-9) xb_[r] = 0.0;
        }
        xb_[leave] = step;
        const double* row = &binv_[leave * m];
        for (std::size_t c = 0; c < m; ++c) y_[c] += enter_rc * row[c];
    }

    // Rebuild Binv from scratch by Gauss-Jordan on the basis columns.
    void refactorize() {
        const std::size_t m = lp_.rows;
        std::vector<double> b(m * m, 0.0);
        for (std::size_t j = 0; j < m; ++j)
            for (const auto& [r, v] : lp_.cols[basis_[j]]) b[r * m + j] = v;
        std::vector<double> inv(m * m, 0.0);
        for (std::size_t r = 0; r < m; ++r) inv[r * m + r] = 1.0;
        for (std::size_t c = 0; c < m; ++c) {
            std::size_t pr = c;
            double pmax = std::abs(b[c * m + c]);
            for (std::size_t r = c + 1; r < m; ++r) {
                if (std::abs(b[r * m + c]) > pmax) {
                    pmax = std::abs(b[r * m + c]);
                    pr = r;
                }
            }
            if (pmax < 1e-12) throw NumericalError("SimplexSolver: singular basis");
            if (pr != c) {
                for (std::size_t k = 0; k < m; ++k) {
                    std::swap(b[pr * m + k], b[c * m + k]);
                    std::swap(inv[pr * m + k], inv[c * m + k]);
                }
            }
            const double piv = b[c * m + c];
            for (std::size_t k = 0; k < m; ++k) {
                b[c * m + k] /= piv;
                inv[c * m + k] /= piv;
            }
            for (std::size_t r = 0; r < m; ++r) {
                if (r == c) continue;
                const double f = b[r * m + c];
                if (f == 0.0) continue;
                for (std::size_t k = 0; k < m; ++k) {
                    b[r * m + k] -= f * b[c * m + k];
                    inv[r * m + k] -= f * inv[c * m + k];
                }
            }
        }
        binv_ = std::move(inv);
        compute_xb();
    }

    const SparseLP& lp_;
    std::vector<std::uint32_t> basis_;
    std::vector<bool> in_basis_;
    std::vector<double> binv_;
    std::vector<double> xb_;
    std::vector<double> y_;
};

inline LPSolution solve_lp(const SparseLP& lp) { return SimplexSolver(lp).solve(); }

}  // namespace hypertda
