#pragma once

#include <chrono>
#include <cmath>
#include <string>
#include <vector>

#include "flexband/case.hpp"
#include "flexband/linprog.hpp"
#include "flexband/polyhedron.hpp"
#include "flexband/scenario.hpp"

namespace flexband {

struct FlexBand {
    std::vector<double> lower;
    std::vector<double> upper;
    int periods() const { return static_cast<int>(lower.size()); }
};

inline double flexibility_index(const FlexBand& band, const std::vector<double>& weights) {
    if (band.lower.size() != band.upper.size() || band.lower.size() != weights.size())
        throw ValidationError("flexibility_index: band and weight lengths differ");
    double v = 0.0;
    for (size_t t = 0; t < weights.size(); ++t) v += weights[t] * (band.upper[t] - band.lower[t]);
    return v;
}

// Rectangular SoC ranges, indexed [ess][t] with t = 0..T (t = 0 holds the
// initial range around e0).
struct SocBox {
    std::vector<std::vector<double>> lo;
    std::vector<std::vector<double>> hi;
};

// Per-ESS power envelopes [ess][t] (t = 1..T stored at t-1), the energy-delta
// range they admit, and the stored-energy bounds they induce (t = 0..T).
struct Envelopes {
    std::vector<std::vector<double>> p_lo, p_hi;
    std::vector<std::vector<double>> delta_lo, delta_hi;
    std::vector<std::vector<double>> e_lo, e_hi;
};

enum class CertificateKind { None, Box, Envelope, Tree };
enum class SolveMode { Full, Lazy };

struct AggregationResult {
    FlexBand band;
    double objective = 0.0;
    CertificateKind certificate = CertificateKind::None;
    SocBox box;
    Envelopes envelopes;
    int lp_iterations = 0;
    double wall_seconds = 0.0;
    int lazy_rounds = 0;     // master re-solves beyond the first
    int lazy_added = 0;      // corners or endpoint patterns added lazily
    std::string model;
};

namespace detail {

struct BandLp {
    LinearProgram lp;
    std::vector<int> lower_var, upper_var;

    explicit BandLp(const Case& c) {
        lp.sense = Sense::Maximize;
        for (int t = 0; t < c.periods; ++t) {
            lower_var.push_back(lp.add_var(-kInf, kInf, -c.weights[t]));
            upper_var.push_back(lp.add_var(-kInf, kInf, c.weights[t]));
            lp.add_row({{upper_var[t], 1.0}, {lower_var[t], -1.0}}, Rel::GreaterEq, 0.0);
        }
    }

    int band_var(int t, bool up) const { return up ? upper_var[t] : lower_var[t]; }
};

inline FlexBand extract_band(const BandLp& b, const LpOutcome& out) {
    FlexBand band;
    for (size_t t = 0; t < b.lower_var.size(); ++t) {
        double lo = out.x[b.lower_var[t]], hi = out.x[b.upper_var[t]];
        if (hi < lo) hi = lo;
        band.lower.push_back(lo);
        band.upper.push_back(hi);
    }
    return band;
}

inline LpOutcome solve_master(const LinearProgram& lp, const std::string& model) {
    LpOutcome out = solve(lp);
    if (out.status == LpStatus::Infeasible)
        throw InfeasibleError(model + ": case admits no feasible band (initial stored energy or device bounds inconsistent)");
    if (out.status == LpStatus::Unbounded)
        throw NumericalError(model + ": band is unbounded, case lacks binding device limits");
    for (double v : out.x)
        if (!std::isfinite(v)) throw NumericalError(model + ": non-finite solution component");
    return out;
}

class Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

// p^{S}_i and its split energy delta as LP terms, for sandwiching rows.
inline std::vector<std::pair<int, double>> power_diff_terms(const BlockVars& a, const BlockVars& b, size_t i) {
    return {{a.ess_dis[i], 1.0}, {a.ess_chg[i], -1.0}, {b.ess_dis[i], -1.0}, {b.ess_chg[i], 1.0}};
}

inline std::vector<std::pair<int, double>> delta_diff_terms(const Case& c, const BlockVars& a,
                                                            const BlockVars& b, size_t i) {
    std::vector<std::pair<int, double>> terms;
    append_delta_terms(terms, a, c, i);
    append_delta_terms(terms, b, c, i, -1.0);
    return terms;
}

} // namespace detail

// Envelope model: a band plus per-ESS power envelopes whose induced
// stored-energy corridor stays in bounds. Solved as two LPs: the band
// maximization, then envelope widening at the fixed optimum.
inline AggregationResult solve_envelope(const Case& c, bool widen = true) {
    validate_case(c);
    detail::Stopwatch clock;
    const size_t n = c.esses.size();
    detail::BandLp b(c);
    LinearProgram& lp = b.lp;

    // envelope gadget: one split pair per ESS, period, and side
    std::vector<std::vector<BlockVars>> env_dn(c.periods), env_up(c.periods);
    std::vector<std::vector<int>> e_dn(n), e_up(n); // induced stored energy, t = 1..T
    for (int t = 0; t < c.periods; ++t) {
        for (size_t i = 0; i < n; ++i) {
            const auto& s = c.esses[i];
            for (auto* side : {&env_dn, &env_up}) {
                BlockVars gv;
                gv.ess_dis.assign(n, -1);
                gv.ess_chg.assign(n, -1);
                gv.ess_dis[i] = lp.add_var(0.0, s.p_dis_max);
                gv.ess_chg[i] = lp.add_var(0.0, s.p_chg_max);
                lp.add_row({{gv.ess_dis[i], 1.0 / s.p_dis_max}, {gv.ess_chg[i], 1.0 / s.p_chg_max}},
                           Rel::LessEq, 1.0);
                (*side)[t].push_back(gv);
            }
            // lower envelope power below the upper one
            lp.add_row(detail::power_diff_terms(env_up[t][i], env_dn[t][i], i), Rel::GreaterEq, 0.0);
        }
    }
    for (size_t i = 0; i < n; ++i) {
        const auto& s = c.esses[i];
        for (int t = 0; t < c.periods; ++t) {
            e_dn[i].push_back(lp.add_var(s.e_min, s.e_max));
            e_up[i].push_back(lp.add_var(s.e_min, s.e_max));
            // the upper energy bound falls with the lower envelope's delta and
            // vice versa; at t = 0 both start from e0
            const int prev_up = (t == 0) ? -1 : e_up[i][t - 1];
            const int prev_dn = (t == 0) ? -1 : e_dn[i][t - 1];
            if (t == 0) {
                add_soc_row(lp, c, env_dn[t][i], i, e_up[i][t], s.e0);
                add_soc_row(lp, c, env_up[t][i], i, e_dn[i][t], s.e0);
            } else {
                add_soc_row(lp, c, env_dn[t][i], i, e_up[i][t], prev_up);
                add_soc_row(lp, c, env_up[t][i], i, e_dn[i][t], prev_dn);
            }
        }
    }

    // recourse for both band endpoints, sandwiched inside the envelopes in
    // both power and energy delta
    for (int t = 0; t < c.periods; ++t) {
        for (bool up : {false, true}) {
            BlockOptions opt;
            opt.agg_var = b.band_var(t, up);
            BlockVars bv = append_period_block(lp, c, t, opt);
            for (size_t i = 0; i < n; ++i) {
                lp.add_row(detail::power_diff_terms(bv, env_dn[t][i], i), Rel::GreaterEq, 0.0);
                lp.add_row(detail::power_diff_terms(bv, env_up[t][i], i), Rel::LessEq, 0.0);
                lp.add_row(detail::delta_diff_terms(c, bv, env_dn[t][i], i), Rel::GreaterEq, 0.0);
                lp.add_row(detail::delta_diff_terms(c, bv, env_up[t][i], i), Rel::LessEq, 0.0);
            }
        }
    }

    LpOutcome out = detail::solve_master(lp, "envelope");
    const double index_opt = out.objective;
    int iters = out.iterations;

    if (widen && n > 0) {
        // keep the band optimal, then maximize the envelopes' own widths
        std::vector<std::pair<int, double>> keep;
        for (int t = 0; t < c.periods; ++t) {
            if (c.weights[t] == 0.0) continue;
            keep.push_back({b.upper_var[t], c.weights[t]});
            keep.push_back({b.lower_var[t], -c.weights[t]});
        }
        LinearProgram wide = lp;
        if (!keep.empty()) wide.add_row(std::move(keep), Rel::GreaterEq, index_opt - 1e-8);
        std::fill(wide.objective.begin(), wide.objective.end(), 0.0);
        for (int t = 0; t < c.periods; ++t)
            for (size_t i = 0; i < n; ++i) {
                wide.objective[env_up[t][i].ess_dis[i]] += c.weights[t];
                wide.objective[env_up[t][i].ess_chg[i]] -= c.weights[t];
                wide.objective[env_dn[t][i].ess_dis[i]] -= c.weights[t];
                wide.objective[env_dn[t][i].ess_chg[i]] += c.weights[t];
            }
        LpOutcome wout = detail::solve_master(wide, "envelope widening");
        iters += wout.iterations;
        out.x = wout.x;
    }

    AggregationResult r;
    r.model = "envelope";
    r.band = detail::extract_band(b, out);
    r.objective = index_opt;
    r.certificate = CertificateKind::Envelope;
    r.envelopes.p_lo.resize(n);
    r.envelopes.p_hi.resize(n);
    r.envelopes.delta_lo.resize(n);
    r.envelopes.delta_hi.resize(n);
    r.envelopes.e_lo.resize(n);
    r.envelopes.e_hi.resize(n);
    for (size_t i = 0; i < n; ++i) {
        const auto& s = c.esses[i];
        r.envelopes.e_lo[i].push_back(s.e0);
        r.envelopes.e_hi[i].push_back(s.e0);
        for (int t = 0; t < c.periods; ++t) {
            const double d_dn = out.x[env_dn[t][i].ess_dis[i]], c_dn = out.x[env_dn[t][i].ess_chg[i]];
            const double d_up = out.x[env_up[t][i].ess_dis[i]], c_up = out.x[env_up[t][i].ess_chg[i]];
            double p_lo = d_dn - c_dn, p_hi = d_up - c_up;
            double dl = d_dn * c.tau / s.eta_d - c_dn * c.tau * s.eta_c;
            double dh = d_up * c.tau / s.eta_d - c_up * c.tau * s.eta_c;
            if (p_hi < p_lo) p_hi = p_lo;
            if (dh < dl) dh = dl;
            r.envelopes.p_lo[i].push_back(p_lo);
            r.envelopes.p_hi[i].push_back(p_hi);
            r.envelopes.delta_lo[i].push_back(dl);
            r.envelopes.delta_hi[i].push_back(dh);
            r.envelopes.e_lo[i].push_back(out.x[e_dn[i][t]]);
            r.envelopes.e_hi[i].push_back(out.x[e_up[i][t]]);
        }
    }
    r.lp_iterations = iters;
    r.wall_seconds = clock.seconds();
    return r;
}

// Outer model: one recourse copy per extreme trajectory (all-lower and
// all-upper), each with its own stored-energy chain. Upper-bounds every other
// model.
inline AggregationResult solve_outer(const Case& c) {
    validate_case(c);
    detail::Stopwatch clock;
    detail::BandLp b(c);
    LinearProgram& lp = b.lp;
    for (bool up : {false, true}) {
        std::vector<int> e_prev;
        for (int t = 0; t < c.periods; ++t) {
            BlockOptions opt;
            opt.agg_var = b.band_var(t, up);
            BlockVars bv = append_period_block(lp, c, t, opt);
            std::vector<int> e_now;
            for (size_t i = 0; i < c.esses.size(); ++i) {
                const auto& s = c.esses[i];
                e_now.push_back(lp.add_var(s.e_min, s.e_max));
                if (t == 0) add_soc_row(lp, c, bv, i, e_now[i], s.e0);
                else add_soc_row(lp, c, bv, i, e_now[i], e_prev[i]);
            }
            e_prev = std::move(e_now);
        }
    }
    LpOutcome out = detail::solve_master(lp, "outer");
    AggregationResult r;
    r.model = "outer";
    r.band = detail::extract_band(b, out);
    r.objective = out.objective;
    r.lp_iterations = out.iterations;
    r.wall_seconds = clock.seconds();
    return r;
}

struct TreeSolution {
    std::vector<TreeNode> nodes;
    std::vector<std::vector<double>> soc; // [node breadth-first index][ess]
};

// Enumeration model: the exact multistage optimum under the convex split ESS
// model, via one variable block per scenario-tree node. Shared prefixes share
// blocks, which encodes nonanticipativity.
inline AggregationResult solve_enumeration(const Case& c, TreeSolution* tree_out = nullptr) {
    validate_case(c);
    detail::Stopwatch clock;
    std::vector<TreeNode> nodes = enumerate_prefixes(c.periods);
    detail::BandLp b(c);
    LinearProgram& lp = b.lp;
    std::vector<std::vector<int>> soc(nodes.size()); // per node, per ESS
    for (const TreeNode& node : nodes) {
        BlockOptions opt;
        opt.agg_var = b.band_var(node.depth - 1, node.last_bit());
        BlockVars bv = append_period_block(lp, c, node.depth - 1, opt);
        for (size_t i = 0; i < c.esses.size(); ++i) {
            const auto& s = c.esses[i];
            soc[node.index].push_back(lp.add_var(s.e_min, s.e_max));
            if (node.parent < 0) add_soc_row(lp, c, bv, i, soc[node.index][i], s.e0);
            else add_soc_row(lp, c, bv, i, soc[node.index][i], soc[node.parent][i]);
        }
    }
    LpOutcome out = detail::solve_master(lp, "enumeration");
    AggregationResult r;
    r.model = "enumeration";
    r.band = detail::extract_band(b, out);
    r.objective = out.objective;
    r.certificate = CertificateKind::Tree;
    r.lp_iterations = out.iterations;
    r.wall_seconds = clock.seconds();
    if (tree_out) {
        tree_out->nodes = nodes;
        tree_out->soc.resize(nodes.size());
        for (const TreeNode& node : nodes)
            for (size_t i = 0; i < c.esses.size(); ++i)
                tree_out->soc[node.index].push_back(out.x[soc[node.index][i]]);
    }
    return r;
}

namespace detail {

// Master LP of the Rectangular model restricted to a set of box corners.
struct RectangularMaster {
    BandLp b;
    std::vector<std::vector<int>> e_lo, e_hi; // [ess][t], t = 0..T

    RectangularMaster(const Case& c, const std::vector<VertexPattern>& corners) : b(c) {
        LinearProgram& lp = b.lp;
        const size_t n = c.esses.size();
        e_lo.resize(n);
        e_hi.resize(n);
        for (size_t i = 0; i < n; ++i) {
            const auto& s = c.esses[i];
            e_lo[i].push_back(lp.add_var(s.e_min, s.e0)); // t = 0 range must contain e0
            e_hi[i].push_back(lp.add_var(s.e0, s.e_max));
            for (int t = 1; t <= c.periods; ++t) {
                e_lo[i].push_back(lp.add_var(s.e_min, s.e_max));
                e_hi[i].push_back(lp.add_var(s.e_min, s.e_max));
                lp.add_row({{e_hi[i][t], 1.0}, {e_lo[i][t], -1.0}}, Rel::GreaterEq, 0.0);
            }
        }
        for (const VertexPattern& corner : corners) add_corner(c, corner);
    }

    void add_corner(const Case& c, const VertexPattern& corner) {
        LinearProgram& lp = b.lp;
        for (int t = 0; t < c.periods; ++t)
            for (bool up : {false, true}) {
                BlockOptions opt;
                opt.agg_var = b.band_var(t, up);
                BlockVars bv = append_period_block(lp, c, t, opt);
                for (size_t i = 0; i < c.esses.size(); ++i) {
                    const int prev = corner.upper(static_cast<int>(i)) ? e_hi[i][t] : e_lo[i][t];
                    add_soc_window_rows(lp, c, bv, i, prev, e_lo[i][t + 1], e_hi[i][t + 1]);
                }
            }
    }
};

// Can both band endpoints of period t be served from the given SoC corner
// while landing in the next SoC window?
inline bool corner_recourse_feasible(const Case& c, const FlexBand& band, const SocBox& box,
                                     const VertexPattern& corner, int t) {
    LinearProgram lp;
    for (bool up : {false, true}) {
        BlockOptions opt;
        opt.agg_fixed = up ? band.upper[t] : band.lower[t];
        BlockVars bv = append_period_block(lp, c, t, opt);
        for (size_t i = 0; i < c.esses.size(); ++i) {
            const double prev = corner.upper(static_cast<int>(i)) ? box.hi[i][t] : box.lo[i][t];
            std::vector<std::pair<int, double>> terms;
            append_delta_terms(terms, bv, c, i);
            const double base = c.esses[i].kappa * prev;
            lp.add_row(terms, Rel::LessEq, base - box.lo[i][t + 1]);      // next >= lo
            lp.add_row(std::move(terms), Rel::GreaterEq, base - box.hi[i][t + 1]); // next <= hi
        }
    }
    return check_feasible(lp);
}

inline SocBox extract_box(const RectangularMaster& m, const LpOutcome& out) {
    SocBox box;
    box.lo.resize(m.e_lo.size());
    box.hi.resize(m.e_lo.size());
    for (size_t i = 0; i < m.e_lo.size(); ++i)
        for (size_t t = 0; t < m.e_lo[i].size(); ++t) {
            double lo = out.x[m.e_lo[i][t]], hi = out.x[m.e_hi[i][t]];
            if (hi < lo) hi = lo;
            box.lo[i].push_back(lo);
            box.hi[i].push_back(hi);
        }
    return box;
}

} // namespace detail

// Rectangular model: band plus a per-period SoC box such that from every box
// corner, both band endpoints can be served while landing back in the box.
// Full mode instantiates all 2^n corners; lazy mode starts from the all-low
// and all-high corners and adds violated ones.
inline AggregationResult solve_rectangular(const Case& c, SolveMode mode = SolveMode::Full) {
    validate_case(c);
    detail::Stopwatch clock;
    const int n = static_cast<int>(c.esses.size());
    std::vector<VertexPattern> all = enumerate_soc_corners(n);

    std::vector<VertexPattern> active;
    if (mode == SolveMode::Full || all.size() <= 2) {
        active = all;
    } else {
        active.push_back(all.front());
        active.push_back(all.back());
    }

    detail::RectangularMaster master(c, active);
    LpOutcome out = detail::solve_master(master.b.lp, "rectangular");
    int iters = out.iterations, rounds = 0, added = 0;

    if (mode == SolveMode::Lazy) {
        std::vector<bool> in_master(all.size(), false);
        for (const VertexPattern& p : active) in_master[p.bits] = true;
        for (size_t guard = 0; guard <= all.size(); ++guard) {
            FlexBand band = detail::extract_band(master.b, out);
            SocBox box = detail::extract_box(master, out);
            std::vector<VertexPattern> violated;
            for (const VertexPattern& corner : all) {
                if (in_master[corner.bits]) continue;
                for (int t = 0; t < c.periods; ++t)
                    if (!detail::corner_recourse_feasible(c, band, box, corner, t)) {
                        violated.push_back(corner);
                        break;
                    }
            }
            if (violated.empty()) break;
            if (guard == all.size())
                throw NumericalError("rectangular: lazy corner generation failed to converge");
            for (const VertexPattern& corner : violated) {
                master.add_corner(c, corner);
                in_master[corner.bits] = true;
                ++added;
            }
            out = detail::solve_master(master.b.lp, "rectangular");
            iters += out.iterations;
            ++rounds;
        }
    }

    AggregationResult r;
    r.model = "rectangular";
    r.band = detail::extract_band(master.b, out);
    r.objective = out.objective;
    r.certificate = CertificateKind::Box;
    r.box = detail::extract_box(master, out);
    r.lp_iterations = iters;
    r.wall_seconds = clock.seconds();
    r.lazy_rounds = rounds;
    r.lazy_added = added;
    return r;
}

// Exact multistage solution for a single ESS: the Rectangular model with the
// two box corners spelled out (four recourse copies per period).
inline AggregationResult solve_single_ess(const Case& c) {
    validate_case(c);
    if (c.esses.size() != 1)
        throw ValidationError("single-ess model requires exactly one ESS, case has " +
                              std::to_string(c.esses.size()));
    AggregationResult r = solve_rectangular(c, SolveMode::Full);
    r.model = "single-ess";
    return r;
}

namespace detail {

inline void add_pattern_chain(const Case& c, BandLp& b, const VertexPattern& pat) {
    LinearProgram& lp = b.lp;
    std::vector<int> e_prev;
    for (int t = 0; t < c.periods; ++t) {
        BlockOptions opt;
        opt.agg_var = b.band_var(t, pat.upper(t));
        BlockVars bv = append_period_block(lp, c, t, opt);
        std::vector<int> e_now;
        for (size_t i = 0; i < c.esses.size(); ++i) {
            const auto& s = c.esses[i];
            e_now.push_back(lp.add_var(s.e_min, s.e_max));
            if (t == 0) add_soc_row(lp, c, bv, i, e_now[i], s.e0);
            else add_soc_row(lp, c, bv, i, e_now[i], e_prev[i]);
        }
        e_prev = std::move(e_now);
    }
}

inline bool pattern_recourse_feasible(const Case& c, const FlexBand& band, const VertexPattern& pat) {
    LinearProgram lp;
    std::vector<int> e_prev;
    for (int t = 0; t < c.periods; ++t) {
        BlockOptions opt;
        opt.agg_fixed = pat.upper(t) ? band.upper[t] : band.lower[t];
        BlockVars bv = append_period_block(lp, c, t, opt);
        std::vector<int> e_now;
        for (size_t i = 0; i < c.esses.size(); ++i) {
            const auto& s = c.esses[i];
            e_now.push_back(lp.add_var(s.e_min, s.e_max));
            if (t == 0) add_soc_row(lp, c, bv, i, e_now[i], s.e0);
            else add_soc_row(lp, c, bv, i, e_now[i], e_prev[i]);
        }
        e_prev = std::move(e_now);
    }
    return check_feasible(lp);
}

} // namespace detail

// Two-Stage model via endpoint-pattern enumeration: one full-horizon recourse
// copy per pattern in {lower, upper}^T. Convexity of the recourse makes the
// vertex set sufficient. Lazy mode adds patterns by feasibility separation.
inline AggregationResult solve_two_stage(const Case& c, SolveMode mode = SolveMode::Full) {
    validate_case(c);
    detail::Stopwatch clock;
    std::vector<VertexPattern> all = enumerate_endpoint_patterns(c.periods);

    std::vector<VertexPattern> active;
    if (mode == SolveMode::Full || all.size() <= 2) {
        active = all;
    } else {
        active.push_back(all.front());
        active.push_back(all.back());
    }

    detail::BandLp b(c);
    std::vector<bool> in_master(all.size(), false);
    for (const VertexPattern& p : active) {
        detail::add_pattern_chain(c, b, p);
        in_master[p.bits] = true;
    }
    LpOutcome out = detail::solve_master(b.lp, "two-stage");
    int iters = out.iterations, rounds = 0, added = 0;

    if (mode == SolveMode::Lazy) {
        for (size_t guard = 0; guard <= all.size(); ++guard) {
            FlexBand band = detail::extract_band(b, out);
            std::vector<VertexPattern> violated;
            for (const VertexPattern& pat : all)
                if (!in_master[pat.bits] && !detail::pattern_recourse_feasible(c, band, pat))
                    violated.push_back(pat);
            if (violated.empty()) break;
            if (guard == all.size())
                throw NumericalError("two-stage: lazy pattern generation failed to converge");
            for (const VertexPattern& pat : violated) {
                detail::add_pattern_chain(c, b, pat);
                in_master[pat.bits] = true;
                ++added;
            }
            out = detail::solve_master(b.lp, "two-stage");
            iters += out.iterations;
            ++rounds;
        }
    }

    AggregationResult r;
    r.model = "two-stage";
    r.band = detail::extract_band(b, out);
    r.objective = out.objective;
    r.lp_iterations = iters;
    r.wall_seconds = clock.seconds();
    r.lazy_rounds = rounds;
    r.lazy_added = added;
    return r;
}

} // namespace flexband
