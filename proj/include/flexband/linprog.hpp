#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "flexband/errors.hpp"

namespace flexband {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Rel { LessEq, Equal, GreaterEq };
enum class Sense { Minimize, Maximize };

struct LinearProgram {
    struct Row {
        std::vector<std::pair<int, double>> terms;
        Rel rel = Rel::LessEq;
        double rhs = 0.0;
    };

    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<double> objective;
    std::vector<Row> rows;
    Sense sense = Sense::Maximize;

    int num_vars() const { return static_cast<int>(lower.size()); }

    int add_var(double lb, double ub, double obj = 0.0) {
        lower.push_back(lb);
        upper.push_back(ub);
        objective.push_back(obj);
        return num_vars() - 1;
    }

    void add_row(std::vector<std::pair<int, double>> terms, Rel rel, double rhs) {
        rows.push_back(Row{std::move(terms), rel, rhs});
    }

    void validate() const {
        const int n = num_vars();
        if (upper.size() != lower.size() || objective.size() != lower.size())
            throw ValidationError("lp: bound/objective vectors have mismatched dimensions");
        for (int j = 0; j < n; ++j) {
            if (std::isnan(lower[j]) || std::isnan(upper[j]) || std::isnan(objective[j]))
                throw ValidationError("lp: NaN coefficient in variable " + std::to_string(j));
            if (lower[j] > upper[j])
                throw ValidationError("lp: variable " + std::to_string(j) + " has lower bound above upper bound");
        }
        for (size_t i = 0; i < rows.size(); ++i) {
            if (std::isnan(rows[i].rhs)) throw ValidationError("lp: NaN rhs in row " + std::to_string(i));
            for (const auto& [j, a] : rows[i].terms) {
                if (j < 0 || j >= n)
                    throw ValidationError("lp: row " + std::to_string(i) + " references variable " + std::to_string(j));
                if (std::isnan(a)) throw ValidationError("lp: NaN coefficient in row " + std::to_string(i));
            }
        }
    }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpOutcome {
    LpStatus status = LpStatus::Infeasible;
    std::vector<double> x;            // primal values of the original variables
    std::vector<double> row_duals;    // duals of the internal minimization
    std::vector<double> reduced;      // reduced costs (internal minimization), structural vars
    double objective = 0.0;           // in the original sense
    double infeasibility = 0.0;       // phase-1 residual when infeasible
    int iterations = 0;
};

inline constexpr double kFeasTol = 1e-7;  // absolute row/bound residual tolerance
inline constexpr double kOptTol = 1e-9;   // reduced-cost tolerance

namespace detail {

// Pivoting policy. The defaults favor speed; the safe policy trades pivots
// for numerical headroom and is used to retry after a numerical failure.
struct SimplexOptions {
    bool bland_start = false;
    int refactor_interval = 200;
    double pivot_tol = 1e-9;
};

inline SimplexOptions safe_options() { return {false, 30, 1e-8}; }

class Simplex {
public:
    explicit Simplex(const LinearProgram& lp, SimplexOptions opt = {}) : lp_(lp), opt_(opt) {
        lp.validate();
        n_ = lp.num_vars();
        m_ = static_cast<int>(lp.rows.size());
        build_columns();
    }

    LpOutcome run(bool phase1_only) {
        // A near-singular basis aborts the attempt; retry with progressively
        // more conservative pivoting from a fresh start.
        for (int attempt = 0;; ++attempt) {
            try {
                return run_once(phase1_only);
            } catch (const SingularBasis&) {
                if (attempt >= 2) throw NumericalError("lp: singular basis during refactorization");
                opt_.bland_start = (attempt >= 1);
                opt_.refactor_interval = std::max(15, opt_.refactor_interval / 3);
                opt_.pivot_tol = std::max(opt_.pivot_tol, attempt == 0 ? 1e-8 : 1e-6);
                cols_.resize(nart_begin_);
                lb_.resize(nart_begin_);
                ub_.resize(nart_begin_);
                ncols_ = nart_begin_;
            }
        }
    }

private:
    struct SingularBasis {};

    LpOutcome run_once(bool phase1_only) {
        init_basis();
        set_phase1_costs();
        iterate(/*allow_unbounded=*/false);
        const double p1 = phase1_objective();
        LpOutcome out;
        out.iterations = iterations_;
        if (p1 > 1e-8) {
            out.status = LpStatus::Infeasible;
            out.infeasibility = p1;
            return out;
        }
        fix_artificials();
        if (phase1_only) {
            out.status = LpStatus::Optimal;
            extract_primal(out);
            return out;
        }
        set_phase2_costs();
        const bool bounded = iterate(/*allow_unbounded=*/true);
        out.iterations = iterations_;
        if (!bounded) {
            out.status = LpStatus::Unbounded;
            return out;
        }
        out.status = LpStatus::Optimal;
        extract_primal(out);
        extract_duals(out);
        double obj = 0.0;
        for (int j = 0; j < n_; ++j) obj += lp_.objective[j] * value_[j];
        out.objective = obj;
        return out;
    }

    enum class VState : unsigned char { Basic, AtLower, AtUpper, FreeZero };

    const LinearProgram& lp_;
    SimplexOptions opt_;
    int n_ = 0, m_ = 0, ncols_ = 0, nart_begin_ = 0;
    std::vector<std::vector<std::pair<int, double>>> cols_; // (row, coef)
    std::vector<double> lb_, ub_, cost_, value_, b_;
    std::vector<VState> state_;
    std::vector<int> basic_;      // var index per row
    std::vector<double> binv_;    // m x m, row-major
    int iterations_ = 0;
    int pivots_since_refactor_ = 0;
    bool bland_ = false;
    int stall_ = 0;
    double last_obj_ = kInf;

    double& binv(int i, int k) { return binv_[static_cast<size_t>(i) * m_ + k]; }

    void build_columns() {
        // structural columns, then one slack per row, then artificials appended later.
        cols_.resize(n_ + m_);
        lb_.assign(n_ + m_, 0.0);
        ub_.assign(n_ + m_, 0.0);
        b_.resize(m_);
        for (int j = 0; j < n_; ++j) {
            lb_[j] = lp_.lower[j];
            ub_[j] = lp_.upper[j];
        }
        for (int i = 0; i < m_; ++i) {
            const auto& row = lp_.rows[i];
            b_[i] = row.rhs;
            for (const auto& [j, a] : row.terms)
                if (a != 0.0) cols_[j].push_back({i, a});
            const int s = n_ + i;
            cols_[s].push_back({i, 1.0});
            switch (row.rel) {
                case Rel::LessEq:    lb_[s] = 0.0;   ub_[s] = kInf; break;
                case Rel::GreaterEq: lb_[s] = -kInf; ub_[s] = 0.0;  break;
                case Rel::Equal:     lb_[s] = 0.0;   ub_[s] = 0.0;  break;
            }
        }
        ncols_ = n_ + m_;
        nart_begin_ = ncols_;
    }

    void init_basis() {
        value_.assign(ncols_, 0.0);
        state_.assign(ncols_, VState::FreeZero);
        for (int j = 0; j < ncols_; ++j) {
            if (lb_[j] > -kInf) {
                value_[j] = lb_[j];
                state_[j] = VState::AtLower;
            } else if (ub_[j] < kInf) {
                value_[j] = ub_[j];
                state_[j] = VState::AtUpper;
            } else {
                value_[j] = 0.0;
                state_[j] = VState::FreeZero;
            }
        }
        // residual of each row with everything at its initial value (slack included)
        std::vector<double> act(m_, 0.0);
        for (int j = 0; j < ncols_; ++j) {
            if (value_[j] == 0.0) continue;
            for (const auto& [i, a] : cols_[j]) act[i] += a * value_[j];
        }
        basic_.assign(m_, -1);
        // Prefer the slack as the initial basic variable; where the implied slack
        // value breaks its own bounds, park the slack at its nearest bound and
        // cover the residual with an artificial.
        for (int i = 0; i < m_; ++i) {
            const int s = n_ + i;
            const double others = act[i] - value_[s];
            double sval = b_[i] - others;
            if (sval >= lb_[s] - 1e-12 && sval <= ub_[s] + 1e-12) {
                basic_[i] = s;
                state_[s] = VState::Basic;
                value_[s] = sval;
            } else {
                value_[s] = (sval < lb_[s]) ? lb_[s] : ub_[s];
                const double r = b_[i] - others - value_[s];
                const int t = static_cast<int>(cols_.size());
                cols_.push_back({{i, r >= 0.0 ? 1.0 : -1.0}});
                lb_.push_back(0.0);
                ub_.push_back(kInf);
                value_.push_back(std::abs(r));
                state_.push_back(VState::Basic);
                basic_[i] = t;
            }
        }
        ncols_ = static_cast<int>(cols_.size());
        cost_.assign(ncols_, 0.0);
        binv_.assign(static_cast<size_t>(m_) * m_, 0.0);
        refactorize();
    }

    void set_phase1_costs() {
        cost_.assign(ncols_, 0.0);
        for (int j = nart_begin_; j < ncols_; ++j) cost_[j] = 1.0;
        bland_ = opt_.bland_start;
        stall_ = 0;
        last_obj_ = kInf;
    }

    void set_phase2_costs() {
        cost_.assign(ncols_, 0.0);
        const double sgn = (lp_.sense == Sense::Maximize) ? -1.0 : 1.0;
        for (int j = 0; j < n_; ++j) cost_[j] = sgn * lp_.objective[j];
        bland_ = opt_.bland_start;
        stall_ = 0;
        last_obj_ = kInf;
    }

    double phase1_objective() const {
        double v = 0.0;
        for (int j = nart_begin_; j < ncols_; ++j) v += value_[j];
        return v;
    }

    void fix_artificials() {
        for (int j = nart_begin_; j < ncols_; ++j) {
            ub_[j] = 0.0;
            if (state_[j] != VState::Basic) {
                state_[j] = VState::AtLower;
                value_[j] = 0.0;
            }
        }
    }

    void refactorize() {
        // Rebuild B^-1 by Gauss-Jordan on the basis columns.
        std::vector<double> B(static_cast<size_t>(m_) * m_, 0.0);
        for (int r = 0; r < m_; ++r)
            for (const auto& [i, a] : cols_[basic_[r]]) B[static_cast<size_t>(i) * m_ + r] = a;
        std::vector<double> inv(static_cast<size_t>(m_) * m_, 0.0);
        for (int i = 0; i < m_; ++i) inv[static_cast<size_t>(i) * m_ + i] = 1.0;
        for (int col = 0; col < m_; ++col) {
            int piv = -1;
            double best = 1e-11;
            for (int r = col; r < m_; ++r) {
                const double v = std::abs(B[static_cast<size_t>(r) * m_ + col]);
                if (v > best) { best = v; piv = r; }
            }
            if (piv < 0) throw SingularBasis{};
            if (piv != col) {
                for (int k = 0; k < m_; ++k) {
                    std::swap(B[static_cast<size_t>(piv) * m_ + k], B[static_cast<size_t>(col) * m_ + k]);
                    std::swap(inv[static_cast<size_t>(piv) * m_ + k], inv[static_cast<size_t>(col) * m_ + k]);
                }
            }
            const double d = B[static_cast<size_t>(col) * m_ + col];
            for (int k = 0; k < m_; ++k) {
                B[static_cast<size_t>(col) * m_ + k] /= d;
                inv[static_cast<size_t>(col) * m_ + k] /= d;
            }
            for (int r = 0; r < m_; ++r) {
                if (r == col) continue;
                const double f = B[static_cast<size_t>(r) * m_ + col];
                if (f == 0.0) continue;
                for (int k = 0; k < m_; ++k) {
                    B[static_cast<size_t>(r) * m_ + k] -= f * B[static_cast<size_t>(col) * m_ + k];
                    inv[static_cast<size_t>(r) * m_ + k] -= f * inv[static_cast<size_t>(col) * m_ + k];
                }
            }
        }
        binv_ = std::move(inv);
        recompute_basic_values();
        pivots_since_refactor_ = 0;
    }

    void recompute_basic_values() {
        std::vector<double> rhs = b_;
        for (int j = 0; j < ncols_; ++j) {
            if (state_[j] == VState::Basic || value_[j] == 0.0) continue;
            for (const auto& [i, a] : cols_[j]) rhs[i] -= a * value_[j];
        }
        for (int r = 0; r < m_; ++r) {
            double v = 0.0;
            const double* row = &binv_[static_cast<size_t>(r) * m_];
            for (int k = 0; k < m_; ++k) v += row[k] * rhs[k];
            value_[basic_[r]] = v;
        }
    }

    void compute_y(std::vector<double>& y) const {
        y.assign(m_, 0.0);
        for (int r = 0; r < m_; ++r) {
            const double c = cost_[basic_[r]];
            if (c == 0.0) continue;
            const double* row = &binv_[static_cast<size_t>(r) * m_];
            for (int k = 0; k < m_; ++k) y[k] += c * row[k];
        }
    }

    double reduced_cost(int j, const std::vector<double>& y) const {
        double d = cost_[j];
        for (const auto& [i, a] : cols_[j]) d -= y[i] * a;
        return d;
    }

    double current_objective() const {
        double v = 0.0;
        for (int j = 0; j < ncols_; ++j) v += cost_[j] * value_[j];
        return v;
    }

    // Returns false on unboundedness (only possible when allow_unbounded).
    bool iterate(bool allow_unbounded) {
        const long iter_cap = 20000 + 60L * (m_ + ncols_);
        std::vector<double> y, w(m_);
        long local_iters = 0;
        compute_y(y);
        while (true) {
            if (++local_iters > iter_cap) throw NumericalError("lp: iteration limit exceeded");
            int enter = -1;
            double enter_dir = 0.0, enter_d = 0.0;
            double best_score = kOptTol;
            for (int j = 0; j < ncols_; ++j) {
                if (state_[j] == VState::Basic) continue;
                if (lb_[j] == ub_[j] && state_[j] != VState::FreeZero) continue; // fixed
                const double d = reduced_cost(j, y);
                double dir = 0.0;
                switch (state_[j]) {
                    case VState::AtLower:
                        if (d < -kOptTol) dir = 1.0;
                        break;
                    case VState::AtUpper:
                        if (d > kOptTol) dir = -1.0;
                        break;
                    case VState::FreeZero:
                        if (d < -kOptTol) dir = 1.0;
                        else if (d > kOptTol) dir = -1.0;
                        break;
                    case VState::Basic:
                        break;
                }
                if (dir == 0.0) continue;
                if (bland_) { enter = j; enter_dir = dir; enter_d = d; break; }
                const double score = std::abs(d);
                if (score > best_score) { best_score = score; enter = j; enter_dir = dir; enter_d = d; }
            }
            if (enter < 0) {
                // verify on a fresh factorization before declaring optimality
                if (pivots_since_refactor_ > 0) {
                    refactorize();
                    compute_y(y);
                    bool clean = true;
                    for (int j = 0; j < ncols_ && clean; ++j) {
                        if (state_[j] == VState::Basic || (lb_[j] == ub_[j] && state_[j] != VState::FreeZero)) continue;
                        const double d = reduced_cost(j, y);
                        if ((state_[j] == VState::AtLower && d < -10 * kOptTol) ||
                            (state_[j] == VState::AtUpper && d > 10 * kOptTol) ||
                            (state_[j] == VState::FreeZero && std::abs(d) > 10 * kOptTol))
                            clean = false;
                    }
                    if (clean) return true;
                    continue;
                }
                return true;
            }

            // direction through the basis
            std::fill(w.begin(), w.end(), 0.0);
            for (const auto& [k, a] : cols_[enter])
                for (int i = 0; i < m_; ++i) w[i] += a * binv(i, k);

            // Harris two-pass ratio test. Pass 1 finds the largest step that
            // keeps every basic variable within a tiny expansion (kHarrisTol)
            // of its bounds; pass 2 picks, among rows whose exact ratio fits
            // under that limit, the one with the largest pivot magnitude.
            // This trades bound violations of at most kHarrisTol for
            // well-conditioned pivots on degenerate vertices.
            constexpr double kHarrisTol = 1e-9;
            const double range = ub_[enter] - lb_[enter];
            double t_limit = std::isfinite(range) ? range : kInf;
            const double w_skip = 1e-10;
            for (int r = 0; r < m_; ++r) {
                if (std::abs(w[r]) < w_skip) continue;
                const int bj = basic_[r];
                const double rate = -enter_dir * w[r]; // d value[bj] / dt
                double t;
                if (rate > 0.0) {
                    if (ub_[bj] >= kInf) continue;
                    t = (ub_[bj] - value_[bj] + kHarrisTol) / rate;
                } else {
                    if (lb_[bj] <= -kInf) continue;
                    t = (lb_[bj] - value_[bj] - kHarrisTol) / rate;
                }
                if (t < t_limit) t_limit = t;
            }
            if (t_limit >= kInf) {
                if (!allow_unbounded) throw NumericalError("lp: unbounded phase-1 subproblem");
                return false;
            }
            if (t_limit < 0.0) t_limit = 0.0;
            int leave_row = -1; // -1 means bound flip
            double leave_bound = 0.0, t_best = 0.0, best_piv = 0.0;
            double bland_t = std::isfinite(range) ? range : kInf;
            for (int r = 0; r < m_; ++r) {
                if (std::abs(w[r]) < w_skip) continue;
                const int bj = basic_[r];
                const double rate = -enter_dir * w[r];
                double t;
                if (rate > 0.0) {
                    if (ub_[bj] >= kInf) continue;
                    t = (ub_[bj] - value_[bj]) / rate;
                } else {
                    if (lb_[bj] <= -kInf) continue;
                    t = (lb_[bj] - value_[bj]) / rate;
                }
                if (t < 0.0) t = 0.0;
                bool take;
                if (bland_) {
                    // exact minimal ratio, smallest variable index on ties
                    take = (t < bland_t - 1e-12) ||
                           (t <= bland_t + 1e-12 && (leave_row < 0 || bj < basic_[leave_row]));
                    if (take) bland_t = std::min(bland_t, t);
                } else {
                    if (t > t_limit + 1e-15 + 1e-12 * t_limit) continue;
                    take = std::abs(w[r]) > best_piv;
                }
                if (take) {
                    leave_row = r;
                    best_piv = std::abs(w[r]);
                    t_best = t;
                    leave_bound = (rate > 0.0) ? ub_[bj] : lb_[bj];
                }
            }
            if (leave_row < 0) t_best = std::isfinite(range) ? range : t_limit;

            // A pivot below tolerance on a stale factorization is distrusted:
            // resharpen and retry. On a fresh factorization it is genuine;
            // accept it but refactorize immediately after the update.
            bool force_refactor = false;
            if (leave_row >= 0 && best_piv < opt_.pivot_tol) {
                if (pivots_since_refactor_ > 0) {
                    refactorize();
                    compute_y(y);
                    continue;
                }
                force_refactor = true;
            }

            ++iterations_;
            // move
            value_[enter] += enter_dir * t_best;
            for (int r = 0; r < m_; ++r) {
                if (w[r] == 0.0) continue;
                value_[basic_[r]] -= enter_dir * w[r] * t_best;
            }
            if (leave_row < 0) {
                // bound flip
                state_[enter] = (enter_dir > 0.0) ? VState::AtUpper : VState::AtLower;
                value_[enter] = (enter_dir > 0.0) ? ub_[enter] : lb_[enter];
            } else {
                const int leave = basic_[leave_row];
                value_[leave] = leave_bound;
                state_[leave] = (leave_bound == ub_[leave] && ub_[leave] != lb_[leave]) ? VState::AtUpper : VState::AtLower;
                if (lb_[leave] <= -kInf && ub_[leave] >= kInf) state_[leave] = VState::FreeZero;
                state_[enter] = VState::Basic;
                basic_[leave_row] = enter;
                // pivot update of B^-1
                const double piv = w[leave_row];
                double* prow = &binv_[static_cast<size_t>(leave_row) * m_];
                for (int k = 0; k < m_; ++k) prow[k] /= piv;
                for (int r = 0; r < m_; ++r) {
                    if (r == leave_row) continue;
                    const double f = w[r];
                    if (f == 0.0) continue;
                    double* row = &binv_[static_cast<size_t>(r) * m_];
                    for (int k = 0; k < m_; ++k) row[k] -= f * prow[k];
                }
                // dual update: y' = y + d_enter * (new pivot row of B^-1)
                if (enter_d != 0.0)
                    for (int k = 0; k < m_; ++k) y[k] += enter_d * prow[k];
                if (force_refactor || ++pivots_since_refactor_ >= opt_.refactor_interval) {
                    refactorize();
                    compute_y(y);
                }
            }

            // anti-cycling: fall back to Bland's rule after a long stretch of
            // degenerate pivots, drop back to Dantzig once real steps resume
            if (t_best > 1e-10) {
                stall_ = 0;
                bland_ = opt_.bland_start;
            } else if (++stall_ > std::max(200, m_)) {
                bland_ = true;
            }
        }
    }

    void extract_primal(LpOutcome& out) {
        refactorize(); // sharpen basic values before reporting
        out.x.assign(value_.begin(), value_.begin() + n_);
    }

    void extract_duals(LpOutcome& out) {
        std::vector<double> y;
        compute_y(y);
        out.row_duals = y;
        out.reduced.resize(n_);
        for (int j = 0; j < n_; ++j)
            out.reduced[j] = (state_[j] == VState::Basic) ? 0.0 : reduced_cost(j, y);
    }
};

} // namespace detail

namespace detail {

inline LpOutcome solve_with(const LinearProgram& lp, const SimplexOptions& opt) {
    Simplex s(lp, opt);
    LpOutcome out = s.run(/*phase1_only=*/false);
    if (out.status == LpStatus::Optimal) {
        // enforce the outcome invariant: row residuals within the feasibility tolerance
        for (size_t i = 0; i < lp.rows.size(); ++i) {
            double act = 0.0;
            for (const auto& [j, a] : lp.rows[i].terms) act += a * out.x[j];
            const double r = act - lp.rows[i].rhs;
            const bool bad = (lp.rows[i].rel == Rel::LessEq && r > kFeasTol) ||
                             (lp.rows[i].rel == Rel::GreaterEq && r < -kFeasTol) ||
                             (lp.rows[i].rel == Rel::Equal && std::abs(r) > kFeasTol);
            if (bad) throw NumericalError("lp: optimal point violates row " + std::to_string(i));
        }
    }
    return out;
}

} // namespace detail

inline LpOutcome solve(const LinearProgram& lp) {
    try {
        return detail::solve_with(lp, {});
    } catch (const NumericalError&) {
        // retry once with conservative pivoting before giving up
        return detail::solve_with(lp, detail::safe_options());
    }
}

inline bool check_feasible(const LinearProgram& lp) {
    try {
        detail::Simplex s(lp);
        return s.run(/*phase1_only=*/true).status == LpStatus::Optimal;
    } catch (const NumericalError&) {
        detail::Simplex s(lp, detail::safe_options());
        return s.run(/*phase1_only=*/true).status == LpStatus::Optimal;
    }
}

// Dual objective at an optimal outcome; matches the primal objective up to
// roundoff. Used as a cross-check only.
inline double dual_objective(const LinearProgram& lp, const LpOutcome& out) {
    double v = 0.0;
    for (size_t i = 0; i < lp.rows.size(); ++i) v += out.row_duals[i] * lp.rows[i].rhs;
    for (int j = 0; j < lp.num_vars(); ++j) {
        const double d = out.reduced[j];
        if (d == 0.0) continue;
        // nonbasic contribution at whichever bound the variable sits on
        if (std::abs(out.x[j] - lp.lower[j]) <= std::abs(out.x[j] - lp.upper[j]))
            v += d * lp.lower[j];
        else
            v += d * lp.upper[j];
    }
    return (lp.sense == Sense::Maximize) ? -v : v;
}

// CPLEX LP text format, for cross-checking against external solvers.
inline void write_lp_format(const LinearProgram& lp, std::ostream& os) {
    auto num = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.12g", v);
        return std::string(buf);
    };
    os << (lp.sense == Sense::Maximize ? "Maximize\n obj:" : "Minimize\n obj:");
    bool any = false;
    for (int j = 0; j < lp.num_vars(); ++j) {
        if (lp.objective[j] == 0.0) continue;
        os << (lp.objective[j] >= 0.0 ? " + " : " - ") << num(std::abs(lp.objective[j])) << " x" << j;
        any = true;
    }
    if (!any) os << " 0 x0";
    os << "\nSubject To\n";
    for (size_t i = 0; i < lp.rows.size(); ++i) {
        os << " c" << i << ":";
        for (const auto& [j, a] : lp.rows[i].terms)
            os << (a >= 0.0 ? " + " : " - ") << num(std::abs(a)) << " x" << j;
        switch (lp.rows[i].rel) {
            case Rel::LessEq: os << " <= "; break;
            case Rel::Equal: os << " = "; break;
            case Rel::GreaterEq: os << " >= "; break;
        }
        os << num(lp.rows[i].rhs) << "\n";
    }
    os << "Bounds\n";
    for (int j = 0; j < lp.num_vars(); ++j) {
        const double l = lp.lower[j], u = lp.upper[j];
        if (l <= -kInf && u >= kInf) os << " x" << j << " free\n";
        else if (l <= -kInf) os << " -inf <= x" << j << " <= " << num(u) << "\n";
        else if (u >= kInf) os << " " << num(l) << " <= x" << j << "\n";
        else os << " " << num(l) << " <= x" << j << " <= " << num(u) << "\n";
    }
    os << "End\n";
}

} // namespace flexband
