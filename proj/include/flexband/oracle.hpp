#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "flexband/aggregation.hpp"
#include "flexband/case.hpp"
#include "flexband/polyhedron.hpp"

namespace flexband {

struct GridSpec {
    double power_step = 0.05; // MW
    double soc_step = 0.05;   // MWh
};

// Discretization is resolved in two directions: the conservative variant only
// marks what is provably feasible through grid points, the optimistic variant
// marks everything within half a step of feasibility. Truth sits in between.
enum class Rounding { Conservative, Optimistic };

namespace detail {

inline std::vector<double> grid_axis(double lo, double hi, double step) {
    std::vector<double> v;
    for (double x = lo; x < hi - 1e-12; x += step) v.push_back(x);
    v.push_back(hi);
    return v;
}

inline size_t nearest_index(const std::vector<double>& axis, double x) {
    size_t best = 0;
    for (size_t k = 1; k < axis.size(); ++k)
        if (std::abs(axis[k] - x) < std::abs(axis[best] - x)) best = k;
    return best;
}

} // namespace detail

// Grid approximation of the per-period feasible SoC sets induced by a band.
// sets[t] marks membership over the product grid of the per-ESS energy axes,
// flattened with ESS 0 as the fastest axis; t runs 0..T.
struct SocSetApprox {
    std::vector<std::vector<double>> axes;     // per ESS
    std::vector<std::vector<std::uint8_t>> sets; // per period 0..T
    Rounding rounding = Rounding::Conservative;

    size_t point_count() const {
        size_t n = 1;
        for (const auto& a : axes) n *= a.size();
        return n;
    }
    void unflatten(size_t idx, std::vector<size_t>& coords) const {
        coords.resize(axes.size());
        for (size_t i = 0; i < axes.size(); ++i) {
            coords[i] = idx % axes[i].size();
            idx /= axes[i].size();
        }
    }
    bool contains(int t, const std::vector<double>& e, double slack) const {
        std::vector<size_t> coords(axes.size());
        for (size_t i = 0; i < axes.size(); ++i) {
            coords[i] = detail::nearest_index(axes[i], e[i]);
            if (std::abs(axes[i][coords[i]] - e[i]) > slack) return false;
        }
        size_t idx = 0;
        for (size_t i = axes.size(); i-- > 0;) idx = idx * axes[i].size() + coords[i];
        return sets[t][idx] != 0;
    }
};

namespace detail {

// Is there a dispatch of period t at the given setpoint, starting from e_prev,
// that lands each stored energy within +-slack of target?
inline bool landing_feasible(const Case& c, int t, double setpoint,
                             const std::vector<double>& e_prev,
                             const std::vector<double>& target, double slack) {
    LinearProgram lp;
    BlockOptions opt;
    opt.agg_fixed = setpoint;
    BlockVars bv = append_period_block(lp, c, t, opt);
    for (size_t i = 0; i < c.esses.size(); ++i) {
        const auto& s = c.esses[i];
        const double lo = std::max(s.e_min, target[i] - slack);
        const double hi = std::min(s.e_max, target[i] + slack);
        if (lo > hi + 1e-12) return false;
        const int e = lp.add_var(lo, hi);
        add_soc_row(lp, c, bv, i, e, e_prev[i]);
    }
    return check_feasible(lp);
}

} // namespace detail

// Backward recursion over grid-discretized feasible SoC sets: a point belongs
// to sets[t-1] when every grid setpoint inside the period-t band can be served
// while landing on (conservative) or near (optimistic) a marked point of
// sets[t]. Ground truth for tiny instances only.
inline SocSetApprox backward_soc_sets(const Case& c, const FlexBand& band, const GridSpec& grid,
                                      Rounding rounding = Rounding::Conservative) {
    validate_case(c);
    if (c.esses.size() > 2)
        throw ValidationError("grid oracle supports at most 2 ESSs");
    if (c.periods > 4) throw ValidationError("grid oracle supports at most 4 periods");
    if (band.periods() != c.periods)
        throw ValidationError("band length does not match the case horizon");
    if (!(grid.power_step > 0.0) || !(grid.soc_step > 0.0))
        throw ValidationError("grid steps must be > 0");

    SocSetApprox approx;
    approx.rounding = rounding;
    for (const auto& s : c.esses)
        approx.axes.push_back(detail::grid_axis(s.e_min, s.e_max, grid.soc_step));
    const size_t npts = approx.point_count();
    if (npts > 1000000) throw ValidationError("SoC grid exceeds 10^6 points");
    approx.sets.assign(c.periods + 1, std::vector<std::uint8_t>(npts, 0));
    approx.sets[c.periods].assign(npts, 1); // no constraints beyond the horizon

    const double land_slack = (rounding == Rounding::Conservative) ? 1e-9 : grid.soc_step / 2.0;
    std::vector<size_t> coords;
    std::vector<double> e_prev(c.esses.size()), target(c.esses.size());
    for (int t = c.periods; t-- > 0;) {
        const std::vector<double> setpoints =
            detail::grid_axis(band.lower[t], std::max(band.lower[t], band.upper[t]), grid.power_step);
        for (size_t idx = 0; idx < npts; ++idx) {
            approx.unflatten(idx, coords);
            for (size_t i = 0; i < e_prev.size(); ++i) e_prev[i] = approx.axes[i][coords[i]];
            bool ok = true;
            for (double p : setpoints) {
                bool served = false;
                for (size_t nidx = 0; nidx < npts && !served; ++nidx) {
                    if (!approx.sets[t + 1][nidx]) continue;
                    approx.unflatten(nidx, coords);
                    for (size_t i = 0; i < target.size(); ++i) target[i] = approx.axes[i][coords[i]];
                    served = detail::landing_feasible(c, t, p, e_prev, target, land_slack);
                }
                if (!served) { ok = false; break; }
            }
            approx.sets[t][idx] = ok ? 1 : 0;
        }
    }
    return approx;
}

// True iff the initial stored-energy vector lands in the recursion's E_0.
inline bool verify_band(const Case& c, const FlexBand& band, const GridSpec& grid,
                        Rounding rounding = Rounding::Conservative) {
    for (int t = 0; t < band.periods(); ++t)
        if (band.lower[t] > band.upper[t] + 1e-12)
            throw ValidationError("band has lower above upper in period " + std::to_string(t + 1));
    if (c.esses.empty()) {
        // purely time-decoupled: check each period's aggregate range directly
        for (int t = 0; t < c.periods; ++t) {
            auto [lo, hi] = aggregate_interval(c, t, {});
            const double slack = (rounding == Rounding::Optimistic) ? grid.power_step / 2.0 : 1e-9;
            if (band.lower[t] < lo - slack || band.upper[t] > hi + slack) return false;
        }
        return true;
    }
    SocSetApprox approx = backward_soc_sets(c, band, grid, rounding);
    std::vector<double> e0;
    for (const auto& s : c.esses) e0.push_back(s.e0);
    return approx.contains(0, e0, grid.soc_step / 2.0 + 1e-9);
}

struct GridSearchResult {
    double conservative = 0.0; // under-approximates the multistage optimum
    double optimistic = 0.0;   // over-approximates it
    double error_bound = 0.0;
    FlexBand band;             // maximizer of the conservative search
};

namespace detail {

// Range of the split energy delta of the single ESS at a fixed setpoint,
// ignoring the stored-energy bounds. Empty when the setpoint is unservable.
inline bool delta_range(const Case& c, int t, double setpoint, double& dlo, double& dhi) {
    LinearProgram lp;
    lp.sense = Sense::Minimize;
    BlockOptions opt;
    opt.agg_fixed = setpoint;
    BlockVars bv = append_period_block(lp, c, t, opt);
    std::vector<std::pair<int, double>> terms;
    append_delta_terms(terms, bv, c, 0);
    for (const auto& [j, a] : terms) lp.objective[j] = a;
    LpOutcome lo = solve(lp);
    if (lo.status != LpStatus::Optimal) return false;
    lp.sense = Sense::Maximize;
    LpOutcome hi = solve(lp);
    if (hi.status != LpStatus::Optimal) return false;
    dlo = lo.objective;
    dhi = hi.objective;
    return true;
}

} // namespace detail

// Exhaustive search for the best grid-valued band under the backward SoC-set
// semantics, organized as a dynamic program over SoC-interval states (with
// one ESS the feasible SoC sets are intervals). For each period and grid
// setpoint, the achievable energy-delta range is precomputed by LP; interval
// transitions are then closed-form. Conservative and optimistic runs bracket
// the discretization error.
inline GridSearchResult grid_band_search(const Case& c, const std::vector<double>& weights,
                                         const GridSpec& grid) {
    validate_case(c);
    if (c.esses.size() != 1)
        throw ValidationError("grid band search supports exactly one ESS");
    if (c.periods > 4) throw ValidationError("grid band search supports at most 4 periods");
    if (weights.size() != static_cast<size_t>(c.periods))
        throw ValidationError("grid band search needs one weight per period");
    const EssParams& s = c.esses[0];
    const std::vector<double> e_axis = detail::grid_axis(s.e_min, s.e_max, grid.soc_step);
    const int ke = static_cast<int>(e_axis.size());

    // per period: grid of candidate setpoints and their delta ranges
    struct PeriodGrid {
        std::vector<double> p;
        std::vector<double> dlo, dhi;
        std::vector<bool> ok;
    };
    std::vector<PeriodGrid> pg(c.periods);
    for (int t = 0; t < c.periods; ++t) {
        // outer bound of servable setpoints: stored energy fully relaxed
        LinearProgram lp;
        BlockOptions opt;
        BlockVars bv = append_period_block(lp, c, t, opt);
        lp.objective[bv.agg] = 1.0;
        lp.sense = Sense::Minimize;
        LpOutcome lo = solve(lp);
        lp.sense = Sense::Maximize;
        LpOutcome hi = solve(lp);
        if (lo.status != LpStatus::Optimal || hi.status != LpStatus::Optimal)
            throw InfeasibleError("grid band search: period " + std::to_string(t + 1) + " is unservable");
        pg[t].p = detail::grid_axis(lo.objective, hi.objective, grid.power_step);
        const size_t np = pg[t].p.size();
        pg[t].dlo.resize(np);
        pg[t].dhi.resize(np);
        pg[t].ok.resize(np);
        for (size_t k = 0; k < np; ++k)
            pg[t].ok[k] = detail::delta_range(c, t, pg[t].p[k], pg[t].dlo[k], pg[t].dhi[k]);
    }

    GridSearchResult result;
    for (Rounding rounding : {Rounding::Conservative, Rounding::Optimistic}) {
        // state: SoC interval [a, b] as axis indices required after period t
        std::map<std::pair<int, int>, double> states;          // value of periods t+1..T
        std::map<std::pair<int, int>, std::vector<std::pair<double, double>>> plans;
        states[{0, ke - 1}] = 0.0;
        plans[{0, ke - 1}] = {};
        for (int t = c.periods; t-- > 0;) {
            std::map<std::pair<int, int>, double> next;
            std::map<std::pair<int, int>, std::vector<std::pair<double, double>>> next_plans;
            const PeriodGrid& g = pg[t];
            const size_t np = g.p.size();
            for (const auto& [iv, val] : states) {
                const double alpha = e_axis[iv.first], beta = e_axis[iv.second];
                for (size_t klo = 0; klo < np; ++klo) {
                    if (!g.ok[klo]) continue;
                    for (size_t khi = klo; khi < np; ++khi) {
                        if (!g.ok[khi]) continue;
                        // feasible previous energies for all p in [p_lo, p_hi]:
                        // the delta range's lower end is convex and its upper
                        // end concave in the setpoint, so endpoints suffice
                        const double dlo = std::max(g.dlo[klo], g.dlo[khi]);
                        const double dhi = std::min(g.dhi[klo], g.dhi[khi]);
                        double elo = std::max(s.e_min, (dlo + alpha) / s.kappa);
                        double ehi = std::min(s.e_max, (dhi + beta) / s.kappa);
                        if (elo > ehi + 1e-12) continue;
                        int a, b;
                        if (rounding == Rounding::Conservative) {
                            a = static_cast<int>(std::ceil((elo - s.e_min) / grid.soc_step - 1e-9));
                            b = static_cast<int>(std::floor((ehi - s.e_min) / grid.soc_step + 1e-9));
                        } else {
                            a = static_cast<int>(std::floor((elo - s.e_min) / grid.soc_step + 1e-9));
                            b = static_cast<int>(std::ceil((ehi - s.e_min) / grid.soc_step - 1e-9));
                        }
                        a = std::max(a, 0);
                        b = std::min(b, ke - 1);
                        if (ehi >= e_axis.back() - 1e-12) b = ke - 1; // top point is exact
                        if (a > b) continue;
                        const double v = val + weights[t] * (g.p[khi] - g.p[klo]);
                        auto key = std::make_pair(a, b);
                        auto it = next.find(key);
                        if (it == next.end() || v > it->second + 1e-12) {
                            next[key] = v;
                            auto plan = plans[iv];
                            plan.insert(plan.begin(), {g.p[klo], g.p[khi]});
                            next_plans[key] = std::move(plan);
                        }
                    }
                }
            }
            states = std::move(next);
            plans = std::move(next_plans);
        }
        double best = -1.0;
        std::vector<std::pair<double, double>> best_plan;
        for (const auto& [iv, val] : states) {
            if (s.e0 < e_axis[iv.first] - grid.soc_step / 2.0 - 1e-9) continue;
            if (s.e0 > e_axis[iv.second] + grid.soc_step / 2.0 + 1e-9) continue;
            if (rounding == Rounding::Conservative &&
                (s.e0 < e_axis[iv.first] - 1e-9 || s.e0 > e_axis[iv.second] + 1e-9))
                continue;
            if (val > best) {
                best = val;
                best_plan = plans[iv];
            }
        }
        if (best < 0.0)
            best = (rounding == Rounding::Conservative) ? 0.0 : 0.0;
        if (rounding == Rounding::Conservative) {
            result.conservative = best;
            for (const auto& [lo, hi] : best_plan) {
                result.band.lower.push_back(lo);
                result.band.upper.push_back(hi);
            }
        } else {
            result.optimistic = best;
        }
    }
    double wsum = 0.0;
    for (double w : weights) wsum += w;
    result.error_bound = 2.0 * wsum * (grid.power_step + c.periods * grid.soc_step / c.tau);
    return result;
}

} // namespace flexband
