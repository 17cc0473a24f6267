#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "flexband/case.hpp"
#include "flexband/disaggregation.hpp"

namespace fixtures {

// Largest violation of the physical constraints across a dispatch log:
// nodal balance, flow definition, line and device limits, mixing rows, and
// the stored-energy recursion.
inline double max_residual(const flexband::Case& c, const flexband::DispatchLog& log) {
    double worst = 0.0;
    auto bump = [&](double v) { worst = std::max(worst, v); };
    std::vector<double> e_prev;
    for (const auto& s : c.esses) e_prev.push_back(s.e0);
    for (size_t t = 0; t < log.periods.size(); ++t) {
        const auto& d = log.periods[t];
        std::vector<double> inj(static_cast<size_t>(c.node_count) + 1, 0.0);
        inj[1] += d.setpoint;
        for (size_t k = 0; k < c.loads.size(); ++k) {
            inj[c.loads[k].node] -= d.loads[k];
            bump(c.loads[k].p_min[t] - d.loads[k]);
            bump(d.loads[k] - c.loads[k].p_max[t]);
        }
        for (size_t k = 0; k < c.gens.size(); ++k) {
            inj[c.gens[k].node] += d.gens[k];
            bump(c.gens[k].p_min[t] - d.gens[k]);
            bump(d.gens[k] - c.gens[k].p_max[t]);
        }
        for (size_t k = 0; k < c.esses.size(); ++k) {
            const auto& s = c.esses[k];
            inj[s.node] += d.ess_dis[k] - d.ess_chg[k];
            bump(-d.ess_dis[k]);
            bump(-d.ess_chg[k]);
            bump(d.ess_dis[k] / s.p_dis_max + d.ess_chg[k] / s.p_chg_max - 1.0);
            const double delta = d.ess_dis[k] * c.tau / s.eta_d - d.ess_chg[k] * c.tau * s.eta_c;
            bump(std::abs(d.soc_after[k] - (s.kappa * e_prev[k] - delta)));
            bump(s.e_min - d.soc_after[k]);
            bump(d.soc_after[k] - s.e_max);
        }
        for (size_t k = 0; k < c.lines.size(); ++k) {
            const auto& l = c.lines[k];
            inj[l.from] -= d.flows[k];
            inj[l.to] += d.flows[k];
            bump(std::abs(d.flows[k] - l.susceptance * (d.theta[l.from - 1] - d.theta[l.to - 1])));
            bump(std::abs(d.flows[k]) - l.flow_limit);
        }
        for (int n = 1; n <= c.node_count; ++n) bump(std::abs(inj[n]));
        e_prev = d.soc_after;
    }
    return worst;
}

} // namespace fixtures
