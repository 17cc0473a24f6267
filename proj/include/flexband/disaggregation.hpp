#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "flexband/aggregation.hpp"
#include "flexband/case.hpp"
#include "flexband/polyhedron.hpp"

namespace flexband {

enum class Strategy { Enumeration, Rectangular, Envelope, Greedy };

inline const char* strategy_name(Strategy s) {
    switch (s) {
        case Strategy::Enumeration: return "enumeration";
        case Strategy::Rectangular: return "rectangular";
        case Strategy::Envelope: return "envelope";
        case Strategy::Greedy: return "greedy";
    }
    return "?";
}

struct PeriodDispatch {
    double setpoint = 0.0;
    std::vector<double> loads, gens, ess_dis, ess_chg, theta, flows;
    std::vector<double> soc_after;
    double cost = 0.0;
};

struct DispatchLog {
    std::vector<PeriodDispatch> periods;
    double total_cost = 0.0;
    bool completed = false;
    int failed_period = -1;  // 0-based period of the first failure
    std::string failure;
};

struct RollingState {
    int t0 = 0;                   // next period to dispatch, 0-based
    std::vector<double> soc;      // stored energy after period t0-1
    std::vector<double> realized; // accepted setpoints so far
};

namespace detail {

// Setpoints within a small relative tolerance outside the band are clamped;
// anything further out is a hard rejection.
inline bool clamp_setpoint(double& p, double lo, double hi, std::string& err, int t0) {
    const double tol_lo = 1e-6 * std::max(1.0, std::abs(lo));
    const double tol_hi = 1e-6 * std::max(1.0, std::abs(hi));
    if (p < lo - tol_lo || p > hi + tol_hi) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "setpoint %.9g outside band [%.9g, %.9g] in period %d", p, lo, hi, t0 + 1);
        err = buf;
        return false;
    }
    p = std::min(std::max(p, lo), hi);
    return true;
}

inline PeriodDispatch read_dispatch(const Case& c, const BlockVars& bv, const std::vector<double>& x,
                                    const std::vector<int>& e_vars, double setpoint) {
    PeriodDispatch d;
    d.setpoint = setpoint;
    for (int v : bv.load) d.loads.push_back(x[v]);
    for (int v : bv.gen) d.gens.push_back(x[v]);
    for (int v : bv.ess_dis) d.ess_dis.push_back(x[v]);
    for (int v : bv.ess_chg) d.ess_chg.push_back(x[v]);
    for (int v : bv.theta) d.theta.push_back(x[v]);
    for (int v : bv.flow) d.flows.push_back(x[v]);
    for (int v : e_vars) d.soc_after.push_back(x[v]);
    d.cost = period_cost(c, bv, x);
    return d;
}

} // namespace detail

// One rolling step: realize the setpoint for period state.t0, minimizing the
// period cost subject to the strategy's future-feasibility constraints.
// Throws InfeasibleError when no dispatch exists.
inline PeriodDispatch disaggregation_step(const Case& c, const AggregationResult& agg,
                                          RollingState& state, double setpoint, Strategy strategy,
                                          bool minimize_cost = true) {
    const int t0 = state.t0;
    if (t0 < 0 || t0 >= c.periods) throw ValidationError("rolling horizon already exhausted");
    std::string err;
    if (!detail::clamp_setpoint(setpoint, agg.band.lower[t0], agg.band.upper[t0], err, t0))
        throw ValidationError(err);

    LinearProgram lp;
    lp.sense = Sense::Minimize;
    BlockOptions opt;
    opt.agg_fixed = setpoint;
    opt.with_cost = minimize_cost;
    BlockVars bv = append_period_block(lp, c, t0, opt);

    // stored energy after this period
    std::vector<int> e_now;
    for (size_t i = 0; i < c.esses.size(); ++i) {
        double lo = c.esses[i].e_min, hi = c.esses[i].e_max;
        if (strategy == Strategy::Rectangular) {
            if (agg.certificate != CertificateKind::Box)
                throw ValidationError("rectangular strategy needs a SoC-box certificate");
            lo = std::max(lo, agg.box.lo[i][t0 + 1]);
            hi = std::min(hi, agg.box.hi[i][t0 + 1]);
        }
        e_now.push_back(lp.add_var(lo, hi));
        add_soc_row(lp, c, bv, i, e_now[i], state.soc[i]);
    }

    if (strategy == Strategy::Envelope) {
        if (agg.certificate != CertificateKind::Envelope)
            throw ValidationError("envelope strategy needs an envelope certificate");
        for (size_t i = 0; i < c.esses.size(); ++i) {
            const auto& env = agg.envelopes;
            lp.add_row({{bv.ess_dis[i], 1.0}, {bv.ess_chg[i], -1.0}}, Rel::GreaterEq, env.p_lo[i][t0]);
            lp.add_row({{bv.ess_dis[i], 1.0}, {bv.ess_chg[i], -1.0}}, Rel::LessEq, env.p_hi[i][t0]);
            std::vector<std::pair<int, double>> terms;
            append_delta_terms(terms, bv, c, i);
            lp.add_row(terms, Rel::GreaterEq, env.delta_lo[i][t0]);
            lp.add_row(std::move(terms), Rel::LessEq, env.delta_hi[i][t0]);
        }
    } else if (strategy == Strategy::Enumeration) {
        if (agg.certificate != CertificateKind::Tree)
            throw ValidationError("enumeration strategy needs a scenario-tree certificate");
        // recourse must exist for every endpoint pattern of the remaining periods
        const int remaining = c.periods - 1 - t0;
        if (remaining > 0) {
            std::vector<TreeNode> future = enumerate_prefixes(remaining);
            std::vector<std::vector<int>> soc(future.size());
            for (const TreeNode& node : future) {
                const int t = t0 + node.depth;
                BlockOptions fopt;
                fopt.agg_fixed = node.last_bit() ? agg.band.upper[t] : agg.band.lower[t];
                BlockVars fbv = append_period_block(lp, c, t, fopt);
                for (size_t i = 0; i < c.esses.size(); ++i) {
                    soc[node.index].push_back(lp.add_var(c.esses[i].e_min, c.esses[i].e_max));
                    const int prev = (node.parent < 0) ? e_now[i] : soc[node.parent][i];
                    add_soc_row(lp, c, fbv, i, soc[node.index][i], prev);
                }
            }
        }
    }

    LpOutcome out = solve(lp);
    if (out.status != LpStatus::Optimal)
        throw InfeasibleError("no feasible dispatch for setpoint " + std::to_string(setpoint) +
                              " in period " + std::to_string(t0 + 1) + " (" +
                              strategy_name(strategy) + " strategy)");

    PeriodDispatch d = detail::read_dispatch(c, bv, out.x, e_now, setpoint);
    state.soc = d.soc_after;
    state.realized.push_back(setpoint);
    ++state.t0;
    return d;
}

// Rolls the whole trajectory through disaggregation_step. A failure is
// recorded in the log, not thrown, so infeasible bands can be demonstrated.
inline DispatchLog run_rolling(const Case& c, const AggregationResult& agg,
                               const std::vector<double>& trajectory, Strategy strategy,
                               bool minimize_cost = true) {
    validate_case(c);
    if (static_cast<int>(trajectory.size()) != c.periods)
        throw ValidationError("trajectory must supply one setpoint per period");
    RollingState state;
    for (const auto& s : c.esses) state.soc.push_back(s.e0);
    DispatchLog log;
    for (int t = 0; t < c.periods; ++t) {
        try {
            PeriodDispatch d = disaggregation_step(c, agg, state, trajectory[t], strategy, minimize_cost);
            log.total_cost += d.cost;
            log.periods.push_back(std::move(d));
        } catch (const InfeasibleError& e) {
            log.failed_period = t;
            log.failure = e.what();
            return log;
        } catch (const ValidationError& e) {
            log.failed_period = t;
            log.failure = e.what();
            return log;
        }
    }
    log.completed = true;
    return log;
}

} // namespace flexband
