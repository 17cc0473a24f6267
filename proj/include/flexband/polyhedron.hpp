#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "flexband/case.hpp"
#include "flexband/ess.hpp"
#include "flexband/linprog.hpp"

namespace flexband {

// Variable indices of one period's operational block inside a LinearProgram.
// Period indices are 0-based throughout the in-process API; diagnostics print
// them 1-based.
struct BlockVars {
    int agg = -1; // aggregate power drawn from the transmission system; -1 when fixed
    std::vector<int> load;
    std::vector<int> gen;
    std::vector<int> ess_dis;
    std::vector<int> ess_chg;
    std::vector<int> theta;
    std::vector<int> flow;
};

struct BlockOptions {
    bool mixing_row = true; // p_dis/P_dis + p_chg/P_chg <= 1
    int agg_var = -1;       // reuse an existing variable as the aggregate power
    double agg_fixed = std::numeric_limits<double>::quiet_NaN(); // or pin it
    bool with_cost = false; // put the period operation cost into the objective
};

// Appends the time-decoupled constraint set of period t: device bounds, ESS
// power split (optionally with the mixing row), DC power flow, and nodal
// balance. The aggregate power enters node 1's balance as an injection from
// the upstream system, so in a lossless network it equals load minus local
// generation minus ESS discharge.
inline BlockVars append_period_block(LinearProgram& lp, const Case& c, int t,
                                     const BlockOptions& opt = {}) {
    if (t < 0 || t >= c.periods)
        throw ValidationError("period index " + std::to_string(t + 1) + " outside horizon");
    BlockVars bv;
    const bool fixed_agg = !std::isnan(opt.agg_fixed);
    if (!fixed_agg) bv.agg = (opt.agg_var >= 0) ? opt.agg_var : lp.add_var(-kInf, kInf);

    for (const auto& d : c.loads) bv.load.push_back(lp.add_var(d.p_min[t], d.p_max[t]));
    for (const auto& g : c.gens)
        bv.gen.push_back(lp.add_var(g.p_min[t], g.p_max[t], opt.with_cost ? g.cost * c.tau : 0.0));
    for (const auto& s : c.esses) {
        const double w = opt.with_cost ? s.cost * c.tau : 0.0;
        bv.ess_dis.push_back(lp.add_var(0.0, s.p_dis_max, w));
        bv.ess_chg.push_back(lp.add_var(0.0, s.p_chg_max, w));
        if (opt.mixing_row)
            lp.add_row({{bv.ess_dis.back(), 1.0 / s.p_dis_max}, {bv.ess_chg.back(), 1.0 / s.p_chg_max}},
                       Rel::LessEq, 1.0);
    }

    for (int n = 0; n < c.node_count; ++n)
        bv.theta.push_back(lp.add_var(n == 0 ? 0.0 : -kInf, n == 0 ? 0.0 : kInf));
    for (const auto& l : c.lines) {
        const int f = lp.add_var(-l.flow_limit, l.flow_limit);
        bv.flow.push_back(f);
        lp.add_row({{f, 1.0},
                    {bv.theta[l.from - 1], -l.susceptance},
                    {bv.theta[l.to - 1], l.susceptance}},
                   Rel::Equal, 0.0);
    }

    // nodal balance: device injections + upstream injection at node 1 = net outflow
    for (int n = 1; n <= c.node_count; ++n) {
        std::vector<std::pair<int, double>> terms;
        double rhs = 0.0;
        for (size_t k = 0; k < c.loads.size(); ++k)
            if (c.loads[k].node == n) terms.push_back({bv.load[k], -1.0});
        for (size_t k = 0; k < c.gens.size(); ++k)
            if (c.gens[k].node == n) terms.push_back({bv.gen[k], 1.0});
        for (size_t k = 0; k < c.esses.size(); ++k)
            if (c.esses[k].node == n) {
                terms.push_back({bv.ess_dis[k], 1.0});
                terms.push_back({bv.ess_chg[k], -1.0});
            }
        if (n == 1) {
            if (fixed_agg) rhs -= opt.agg_fixed;
            else terms.push_back({bv.agg, 1.0});
        }
        for (size_t k = 0; k < c.lines.size(); ++k) {
            if (c.lines[k].from == n) terms.push_back({bv.flow[k], -1.0});
            if (c.lines[k].to == n) terms.push_back({bv.flow[k], 1.0});
        }
        lp.add_row(std::move(terms), Rel::Equal, rhs);
    }
    return bv;
}

// Split-model energy drawn from ESS i over the period, as LP terms.
inline void append_delta_terms(std::vector<std::pair<int, double>>& terms, const BlockVars& bv,
                               const Case& c, size_t i, double scale = 1.0) {
    const auto& s = c.esses[i];
    terms.push_back({bv.ess_dis[i], scale * c.tau / s.eta_d});
    terms.push_back({bv.ess_chg[i], -scale * c.tau * s.eta_c});
}

// e_next_var = kappa * e_prev - delta_i, with e_prev a variable.
inline void add_soc_row(LinearProgram& lp, const Case& c, const BlockVars& bv, size_t i,
                        int e_next_var, int e_prev_var) {
    std::vector<std::pair<int, double>> terms{{e_next_var, 1.0}, {e_prev_var, -c.esses[i].kappa}};
    append_delta_terms(terms, bv, c, i);
    lp.add_row(std::move(terms), Rel::Equal, 0.0);
}

// Same, with a known previous stored energy.
inline void add_soc_row(LinearProgram& lp, const Case& c, const BlockVars& bv, size_t i,
                        int e_next_var, double e_prev) {
    std::vector<std::pair<int, double>> terms{{e_next_var, 1.0}};
    append_delta_terms(terms, bv, c, i);
    lp.add_row(std::move(terms), Rel::Equal, c.esses[i].kappa * e_prev);
}

// lo_var <= kappa * e_prev_var - delta_i <= hi_var, without materializing the
// next stored energy.
inline void add_soc_window_rows(LinearProgram& lp, const Case& c, const BlockVars& bv, size_t i,
                                int e_prev_var, int lo_var, int hi_var) {
    std::vector<std::pair<int, double>> terms{{e_prev_var, c.esses[i].kappa}, {lo_var, -1.0}};
    append_delta_terms(terms, bv, c, i, -1.0);
    lp.add_row(terms, Rel::GreaterEq, 0.0);
    terms[1] = {hi_var, -1.0};
    lp.add_row(std::move(terms), Rel::LessEq, 0.0);
}

// Range of the aggregate power in period t when the previous stored energies
// are known and the next ones must stay within bounds. Uses the convex split
// ESS model, optionally without the mixing row.
inline std::pair<double, double> aggregate_interval(const Case& c, int t,
                                                    const std::vector<double>& e_prev,
                                                    bool mixing_row = true) {
    if (e_prev.size() != c.esses.size())
        throw ValidationError("aggregate_interval: one previous stored energy per ESS required");
    LinearProgram lp;
    BlockOptions opt;
    opt.mixing_row = mixing_row;
    BlockVars bv = append_period_block(lp, c, t, opt);
    for (size_t i = 0; i < c.esses.size(); ++i) {
        const int e = lp.add_var(c.esses[i].e_min, c.esses[i].e_max);
        add_soc_row(lp, c, bv, i, e, e_prev[i]);
    }
    lp.objective[bv.agg] = 1.0;
    lp.sense = Sense::Minimize;
    LpOutcome lo = solve(lp);
    if (lo.status != LpStatus::Optimal)
        throw InfeasibleError("aggregate_interval: period " + std::to_string(t + 1) + " has no feasible dispatch");
    lp.sense = Sense::Maximize;
    LpOutcome hi = solve(lp);
    if (hi.status != LpStatus::Optimal)
        throw InfeasibleError("aggregate_interval: period " + std::to_string(t + 1) + " has no feasible dispatch");
    return {lo.objective, hi.objective};
}

// Exact (nonconvex ESS) aggregate power interval for single-node, line-free
// cases, by interval arithmetic over device ranges. The exact per-ESS power
// range is an interval, so the sum is too.
inline std::pair<double, double> exact_aggregate_interval(const Case& c, int t,
                                                          const std::vector<double>& e_prev) {
    if (c.node_count != 1 || !c.lines.empty())
        throw ValidationError("exact_aggregate_interval: only single-node cases are supported");
    if (e_prev.size() != c.esses.size())
        throw ValidationError("exact_aggregate_interval: one previous stored energy per ESS required");
    double lo = 0.0, hi = 0.0;
    for (const auto& d : c.loads) { lo += d.p_min[t]; hi += d.p_max[t]; }
    for (const auto& g : c.gens) { lo -= g.p_max[t]; hi -= g.p_min[t]; }
    for (size_t i = 0; i < c.esses.size(); ++i) {
        auto [plo, phi] = ess_feasible_power_range(e_prev[i], c.esses[i], c.tau);
        if (plo > phi + 1e-12)
            throw InfeasibleError("exact_aggregate_interval: ESS " + std::to_string(i) +
                                  " has no feasible power in period " + std::to_string(t + 1));
        lo -= phi;
        hi -= plo;
    }
    return {lo, hi};
}

// Linear period operation cost of a dispatch, matching the with_cost objective.
inline double period_cost(const Case& c, const BlockVars& bv, const std::vector<double>& x) {
    double v = 0.0;
    for (size_t k = 0; k < c.gens.size(); ++k) v += c.gens[k].cost * x[bv.gen[k]] * c.tau;
    for (size_t i = 0; i < c.esses.size(); ++i)
        v += c.esses[i].cost * (x[bv.ess_dis[i]] + x[bv.ess_chg[i]]) * c.tau;
    return v;
}

} // namespace flexband
