#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "flexband/errors.hpp"

namespace flexband {

// All quantities are in MW / MWh / hours / $ per MWh. Node ids are 1-based;
// node 1 is the reference node carrying the aggregate injection.

struct LoadSpec {
    int node = 1;
    std::vector<double> p_min; // per period, MW
    std::vector<double> p_max;
};

struct GenSpec {
    int node = 1;
    std::vector<double> p_min;
    std::vector<double> p_max;
    double cost = 0.0; // $/MWh generated
};

struct EssParams {
    int node = 1;
    double kappa = 1.0;     // dissipation per period, in (0, 1]
    double eta_d = 1.0;     // discharging efficiency, in (0, 1]
    double eta_c = 1.0;     // charging efficiency, in (0, 1]
    double p_dis_max = 1.0; // max discharging power, MW, > 0
    double p_chg_max = 1.0; // max charging power, MW, > 0
    double e_min = 0.0;     // MWh
    double e_max = 1.0;
    double e0 = 0.0;        // stored energy before period 1
    double cost = 0.0;      // $/MWh of throughput (discharge + charge)
};

struct LineSpec {
    int from = 1;
    int to = 2;
    double susceptance = 1.0;
    double flow_limit = 1.0; // MW, > 0
};

struct Case {
    int periods = 1;    // T
    double tau = 1.0;   // period length, hours
    int node_count = 1; // nodes are 1..node_count
    std::vector<LineSpec> lines;
    std::vector<LoadSpec> loads;
    std::vector<GenSpec> gens;
    std::vector<EssParams> esses;
    std::vector<double> weights; // per-period flexibility weight, >= 0
    unsigned long long seed = 0;
};

namespace detail {
inline bool finite(double v) { return std::isfinite(v); }
}

inline void validate_ess(const EssParams& s, const std::string& where) {
    using detail::finite;
    if (!(s.kappa > 0.0 && s.kappa <= 1.0)) throw ValidationError(where + ".kappa must be in (0, 1]");
    if (!(s.eta_d > 0.0 && s.eta_d <= 1.0)) throw ValidationError(where + ".eta_d must be in (0, 1]");
    if (!(s.eta_c > 0.0 && s.eta_c <= 1.0)) throw ValidationError(where + ".eta_c must be in (0, 1]");
    if (!(s.p_dis_max > 0.0) || !finite(s.p_dis_max)) throw ValidationError(where + ".p_dis_max must be > 0");
    if (!(s.p_chg_max > 0.0) || !finite(s.p_chg_max)) throw ValidationError(where + ".p_chg_max must be > 0");
    if (!finite(s.e_min) || !finite(s.e_max) || s.e_min > s.e_max)
        throw ValidationError(where + ".e_min must not exceed e_max");
    if (s.e0 < s.e_min || s.e0 > s.e_max) throw ValidationError(where + ".e0 must lie in [e_min, e_max]");
    if (s.cost < 0.0) throw ValidationError(where + ".cost must be >= 0");
}

// Throws ValidationError naming the offending field on the first violation.
inline void validate_case(const Case& c) {
    using detail::finite;
    if (c.periods < 1) throw ValidationError("case.periods must be >= 1");
    if (!(c.tau > 0.0) || !finite(c.tau)) throw ValidationError("case.tau must be > 0");
    if (c.node_count < 1) throw ValidationError("case.node_count must be >= 1 (node 1 is the reference node)");
    if (c.weights.size() != static_cast<size_t>(c.periods))
        throw ValidationError("case.weights must have one entry per period");
    for (size_t t = 0; t < c.weights.size(); ++t)
        if (!(c.weights[t] >= 0.0) || !finite(c.weights[t]))
            throw ValidationError("case.weights[" + std::to_string(t + 1) + "] must be >= 0");
    auto check_node = [&](int node, const std::string& where) {
        if (node < 1 || node > c.node_count)
            throw ValidationError(where + ".node " + std::to_string(node) + " is not a valid node id");
    };
    for (size_t k = 0; k < c.lines.size(); ++k) {
        const auto& l = c.lines[k];
        const std::string where = "case.lines[" + std::to_string(k) + "]";
        check_node(l.from, where);
        check_node(l.to, where);
        if (l.from == l.to) throw ValidationError(where + " connects a node to itself");
        if (!(l.flow_limit > 0.0) || !finite(l.flow_limit)) throw ValidationError(where + ".flow_limit must be > 0");
        if (!(l.susceptance != 0.0) || !finite(l.susceptance)) throw ValidationError(where + ".susceptance must be nonzero");
    }
    for (size_t k = 0; k < c.loads.size(); ++k) {
        const auto& d = c.loads[k];
        const std::string where = "case.loads[" + std::to_string(k) + "]";
        check_node(d.node, where);
        if (d.p_min.size() != static_cast<size_t>(c.periods) || d.p_max.size() != static_cast<size_t>(c.periods))
            throw ValidationError(where + " bounds must have one entry per period");
        for (int t = 0; t < c.periods; ++t)
            if (!finite(d.p_min[t]) || !finite(d.p_max[t]) || d.p_min[t] > d.p_max[t])
                throw ValidationError(where + ".p_min exceeds p_max in period " + std::to_string(t + 1));
    }
    for (size_t k = 0; k < c.gens.size(); ++k) {
        const auto& g = c.gens[k];
        const std::string where = "case.gens[" + std::to_string(k) + "]";
        check_node(g.node, where);
        if (g.p_min.size() != static_cast<size_t>(c.periods) || g.p_max.size() != static_cast<size_t>(c.periods))
            throw ValidationError(where + " bounds must have one entry per period");
        for (int t = 0; t < c.periods; ++t)
            if (!finite(g.p_min[t]) || !finite(g.p_max[t]) || g.p_min[t] > g.p_max[t])
                throw ValidationError(where + ".p_min exceeds p_max in period " + std::to_string(t + 1));
        if (g.cost < 0.0) throw ValidationError(where + ".cost must be >= 0");
    }
    for (size_t k = 0; k < c.esses.size(); ++k) {
        check_node(c.esses[k].node, "case.esses[" + std::to_string(k) + "]");
        validate_ess(c.esses[k], "case.esses[" + std::to_string(k) + "]");
    }
}

} // namespace flexband
