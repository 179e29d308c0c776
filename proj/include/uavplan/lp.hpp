#ifndef UAVPLAN_LP_HPP
#define UAVPLAN_LP_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "uavplan/transport.hpp"

namespace uavplan {

// Equality-form LP of a balanced transportation problem: one row-sum equation
// per source, one column-sum equation per sink, variables x_ij >= 0 with no
// upper bound, objective = flattened cost matrix. Variable (i, j) is column
// i * n_sinks + j.
struct LpModel {
    std::size_t n_sources = 0;
    std::size_t n_sinks = 0;
    std::vector<std::vector<double>> equality;  // (n_sources + n_sinks) x vars
    std::vector<double> rhs;
    std::vector<double> objective;

    std::size_t n_rows() const { return equality.size(); }
    std::size_t n_vars() const { return objective.size(); }
};

inline LpModel build_lp_model(const TransportationProblem& tp) {
    if (!tp.balanced())
        throw std::invalid_argument("build_lp_model: unbalanced problem");
    LpModel m;
    m.n_sources = tp.sources.size();
    m.n_sinks = tp.sinks.size();
    const std::size_t vars = m.n_sources * m.n_sinks;

    for (std::size_t i = 0; i < m.n_sources; ++i) {
        std::vector<double> row(vars, 0.0);
        for (std::size_t j = 0; j < m.n_sinks; ++j) row[i * m.n_sinks + j] = 1.0;
        m.equality.push_back(std::move(row));
        m.rhs.push_back(static_cast<double>(tp.sources[i].supply));
    }
    for (std::size_t j = 0; j < m.n_sinks; ++j) {
        std::vector<double> row(vars, 0.0);
        for (std::size_t i = 0; i < m.n_sources; ++i) row[i * m.n_sinks + j] = 1.0;
        m.equality.push_back(std::move(row));
        m.rhs.push_back(static_cast<double>(tp.sinks[j].demand));
    }
    m.objective.resize(vars);
    for (std::size_t i = 0; i < m.n_sources; ++i)
        for (std::size_t j = 0; j < m.n_sinks; ++j)
            m.objective[i * m.n_sinks + j] = tp.cost[i][j];
    return m;
}

namespace detail {

// Dense-tableau primal simplex over equality rows with artificial variables.
// Bland's rule (lowest-index entering and leaving) guards against cycling.
// Minimizes; returns false when the phase hits an unbounded ray.
class SimplexTableau {
public:
    SimplexTableau(const std::vector<std::vector<double>>& a,
                   const std::vector<double>& rhs, std::size_t n_structural)
        : n_struct_(n_structural), n_rows_(a.size()) {
        n_cols_ = n_struct_ + n_rows_;  // structural + artificial
        t_.assign(n_rows_, std::vector<double>(n_cols_ + 1, 0.0));
        basis_.resize(n_rows_);
        for (std::size_t r = 0; r < n_rows_; ++r) {
            for (std::size_t c = 0; c < n_struct_; ++c) t_[r][c] = a[r][c];
            t_[r][n_struct_ + r] = 1.0;
            t_[r][n_cols_] = rhs[r];
            basis_[r] = n_struct_ + r;
        }
    }

    bool minimize(const std::vector<double>& cost, std::size_t usable_cols) {
        const double kTol = 1e-9;
        for (;;) {
            // Reduced costs z_j = c_j - c_B . B^-1 A_j, computed on the fly.
            std::size_t enter = usable_cols;
            for (std::size_t c = 0; c < usable_cols; ++c) {
                if (is_basic(c)) continue;
                double rc = cost[c];
                for (std::size_t r = 0; r < n_rows_; ++r)
                    rc -= cost[basis_[r]] * t_[r][c];
                if (rc < -kTol) {
                    enter = c;  // Bland: lowest index
                    break;
                }
            }
            if (enter == usable_cols) return true;  // optimal

            // Ratio test, Bland tie-break on the leaving basic variable index.
            std::size_t leave = n_rows_;
            double best_ratio = 0.0;
            for (std::size_t r = 0; r < n_rows_; ++r) {
                if (t_[r][enter] <= kTol) continue;
                double ratio = t_[r][n_cols_] / t_[r][enter];
                if (leave == n_rows_ || ratio < best_ratio - kTol ||
                    (std::abs(ratio - best_ratio) <= kTol && basis_[r] < basis_[leave])) {
                    leave = r;
                    best_ratio = ratio;
                }
            }
            if (leave == n_rows_) return false;  // unbounded
            pivot(leave, enter);
        }
    }

    // Drives artificial variables out of the basis after phase 1, dropping
    // rows that turned out redundant (transportation systems have one).
    void purge_artificials() {
        for (std::size_t r = 0; r < n_rows_; ++r) {
            if (basis_[r] < n_struct_) continue;
            std::size_t c = 0;
            for (; c < n_struct_; ++c)
                if (!is_basic(c) && std::abs(t_[r][c]) > 1e-7) break;
            if (c < n_struct_) pivot(r, c);
            // else: zero row, the artificial stays basic at value zero.
        }
    }

    double value(std::size_t col) const {
        for (std::size_t r = 0; r < n_rows_; ++r)
            if (basis_[r] == col) return t_[r][n_cols_];
        return 0.0;
    }

    std::size_t n_struct() const { return n_struct_; }
    std::size_t n_cols() const { return n_cols_; }

private:
    bool is_basic(std::size_t col) const {
        for (std::size_t r = 0; r < n_rows_; ++r)
            if (basis_[r] == col) return true;
        return false;
    }

    void pivot(std::size_t row, std::size_t col) {
        double p = t_[row][col];
        for (auto& v : t_[row]) v /= p;
        for (std::size_t r = 0; r < n_rows_; ++r) {
            if (r == row) continue;
            double f = t_[r][col];
            if (f == 0.0) continue;
            for (std::size_t c = 0; c <= n_cols_; ++c) t_[r][c] -= f * t_[row][c];
        }
        basis_[row] = col;
    }

    std::size_t n_struct_, n_rows_, n_cols_;
    std::vector<std::vector<double>> t_;
    std::vector<std::size_t> basis_;
};

}  // namespace detail

// Two-phase primal simplex on the LP relaxation. The transportation equality
// matrix is totally unimodular, so the optimal vertex is integral; flows are
// rounded to the nearest integer and the objective is reported against the
// model's (unperturbed) costs. Shares the canonical tie-break perturbation
// with the transportation simplex so both return the same flow among
// alternate optima.
inline Flow solve_lp_simplex(const LpModel& model) {
    const std::size_t vars = model.n_vars();
    const std::size_t rows = model.n_rows();
    detail::SimplexTableau tab(model.equality, model.rhs, vars);

    // Phase 1: minimize the sum of artificials.
    std::vector<double> phase1(tab.n_cols(), 0.0);
    for (std::size_t c = vars; c < tab.n_cols(); ++c) phase1[c] = 1.0;
    if (!tab.minimize(phase1, tab.n_cols()))
        throw std::logic_error("lp simplex: phase 1 unbounded");
    double infeas = 0.0;
    for (std::size_t c = vars; c < tab.n_cols(); ++c) infeas += tab.value(c);
    if (infeas > 1e-6)
        throw std::invalid_argument("lp simplex: infeasible model");
    tab.purge_artificials();

    // Phase 2 on the perturbed objective, artificial columns frozen out.
    std::vector<double> phase2(tab.n_cols(), 0.0);
    for (std::size_t i = 0; i < model.n_sources; ++i)
        for (std::size_t j = 0; j < model.n_sinks; ++j)
            phase2[i * model.n_sinks + j] =
                model.objective[i * model.n_sinks + j] + detail::tie_break_noise(i, j);
    if (!tab.minimize(phase2, vars))
        throw std::logic_error("lp simplex: phase 2 unbounded");

    Flow out;
    out.units.assign(model.n_sources, std::vector<long long>(model.n_sinks, 0));
    for (std::size_t i = 0; i < model.n_sources; ++i)
        for (std::size_t j = 0; j < model.n_sinks; ++j) {
            double v = tab.value(i * model.n_sinks + j);
            long long q = std::llround(v);
            if (std::abs(v - static_cast<double>(q)) > 1e-6)
                throw std::logic_error("lp simplex: non-integral vertex");
            out.units[i][j] = q;
            out.objective +=
                static_cast<double>(q) * model.objective[i * model.n_sinks + j];
        }
    (void)rows;
    return out;
}

}  // namespace uavplan

#endif  // UAVPLAN_LP_HPP
