#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "flexband/aggregation.hpp"
#include "flexband/case.hpp"
#include "flexband/disaggregation.hpp"

namespace flexband {

enum class TrajectoryMode { Uniform, Vertex, Adversarial };

inline const char* trajectory_mode_name(TrajectoryMode m) {
    switch (m) {
        case TrajectoryMode::Uniform: return "uniform";
        case TrajectoryMode::Vertex: return "vertex";
        case TrajectoryMode::Adversarial: return "adversarial";
    }
    return "?";
}

namespace detail {
inline double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}
} // namespace detail

// Deterministic setpoint trajectory inside the band. Uniform draws inside the
// interval, vertex picks endpoints, adversarial alternates endpoints starting
// from a random side.
inline std::vector<double> sample_trajectory(const FlexBand& band, std::uint64_t seed,
                                             TrajectoryMode mode) {
    std::mt19937_64 rng(seed);
    std::vector<double> traj;
    bool hi = (rng() & 1u) != 0;
    for (int t = 0; t < band.periods(); ++t) {
        const double lo = band.lower[t], up = band.upper[t];
        switch (mode) {
            case TrajectoryMode::Uniform:
                traj.push_back(lo + (up - lo) * detail::unit_uniform(rng));
                break;
            case TrajectoryMode::Vertex:
                traj.push_back((rng() & 1u) ? up : lo);
                break;
            case TrajectoryMode::Adversarial:
                traj.push_back(hi ? up : lo);
                hi = !hi;
                break;
        }
    }
    return traj;
}

inline AggregationResult solve_model(const Case& c, const std::string& model,
                                     SolveMode mode = SolveMode::Full) {
    if (model == "envelope") return solve_envelope(c);
    if (model == "rectangular") return solve_rectangular(c, mode);
    if (model == "single-ess") return solve_single_ess(c);
    if (model == "enumeration") return solve_enumeration(c);
    if (model == "two-stage") return solve_two_stage(c, mode);
    if (model == "outer") return solve_outer(c);
    throw ValidationError("unknown model \"" + model + "\" (expected envelope, rectangular, "
                          "single-ess, enumeration, two-stage, or outer)");
}

inline Strategy strategy_from_name(const std::string& name) {
    if (name == "enumeration") return Strategy::Enumeration;
    if (name == "rectangular") return Strategy::Rectangular;
    if (name == "envelope") return Strategy::Envelope;
    if (name == "greedy") return Strategy::Greedy;
    throw ValidationError("unknown strategy \"" + name + "\" (expected enumeration, rectangular, "
                          "envelope, or greedy)");
}

// Aggregation model whose certificate the strategy consumes. Greedy needs no
// certificate and rides the tightest sound band.
inline std::string strategy_model(Strategy s) {
    switch (s) {
        case Strategy::Enumeration: return "enumeration";
        case Strategy::Rectangular: return "rectangular";
        case Strategy::Envelope: return "envelope";
        case Strategy::Greedy: return "enumeration";
    }
    return "?";
}

struct ModelRow {
    std::string model;
    double objective = 0.0;
    FlexBand band;
    int lp_iterations = 0;
    int lazy_rounds = 0, lazy_added = 0;
    double wall_seconds = 0.0;
};

struct StrategyRow {
    std::string strategy;
    int trajectories = 0;
    int completed = 0;
    double avg_cost = 0.0;          // over completed runs of the cost-minimizing dispatch
    double avg_baseline_cost = 0.0; // same runs with the cost objective switched off
    double feasibility_rate = 0.0;
};

struct ComparisonReport {
    std::vector<ModelRow> models;
    std::vector<StrategyRow> strategies;
    FlexBand sample_band; // intersection of the strategy bands, trajectory source
};

namespace detail {

inline int chain_rank(const std::string& model) {
    if (model == "envelope") return 0;
    if (model == "rectangular") return 1;
    if (model == "single-ess" || model == "enumeration") return 2;
    if (model == "two-stage") return 3;
    if (model == "outer") return 4;
    return -1;
}

inline FlexBand intersect_bands(const std::vector<FlexBand>& bands) {
    FlexBand out = bands.at(0);
    for (size_t k = 1; k < bands.size(); ++k)
        for (int t = 0; t < out.periods(); ++t) {
            out.lower[t] = std::max(out.lower[t], bands[k].lower[t]);
            out.upper[t] = std::min(out.upper[t], bands[k].upper[t]);
        }
    for (int t = 0; t < out.periods(); ++t)
        if (out.lower[t] > out.upper[t] + 1e-9)
            throw NumericalError("strategy bands have empty intersection in period " +
                                 std::to_string(t + 1));
    return out;
}

} // namespace detail

// Solves the requested models, re-checks the tightness ordering of their
// objectives, then scores each strategy on a shared pool of seeded
// trajectories (alternating uniform and vertex draws).
inline ComparisonReport run_comparison(const Case& c, const std::vector<std::string>& models,
                                       const std::vector<std::string>& strategies, int n_traj,
                                       std::uint64_t seed, SolveMode mode = SolveMode::Full) {
    validate_case(c);
    ComparisonReport rep;
    std::vector<AggregationResult> solved;
    auto find_or_solve = [&](const std::string& model) -> const AggregationResult& {
        for (const auto& r : solved)
            if (r.model == model) return r;
        solved.push_back(solve_model(c, model, mode));
        return solved.back();
    };

    for (const auto& name : models) {
        const AggregationResult& r = find_or_solve(name);
        rep.models.push_back({r.model, r.objective, r.band, r.lp_iterations, r.lazy_rounds,
                              r.lazy_added, r.wall_seconds});
    }
    for (const auto& a : rep.models)
        for (const auto& b : rep.models)
            if (detail::chain_rank(a.model) < detail::chain_rank(b.model) &&
                a.objective > b.objective + 1e-6)
                throw NumericalError("model ordering violated: " + a.model + " (" +
                                     std::to_string(a.objective) + ") exceeds " + b.model + " (" +
                                     std::to_string(b.objective) + ")");

    if (strategies.empty() || n_traj <= 0) return rep;

    std::vector<Strategy> strats;
    std::vector<const AggregationResult*> aggs;
    // trajectories come from the intersection of the nonanticipative bands
    std::vector<FlexBand> bands;
    for (const auto& m : rep.models)
        if (detail::chain_rank(m.model) <= 2) bands.push_back(m.band);
    for (const auto& name : strategies) {
        Strategy s = strategy_from_name(name);
        strats.push_back(s);
        aggs.push_back(&find_or_solve(strategy_model(s)));
        bands.push_back(aggs.back()->band);
    }
    rep.sample_band = detail::intersect_bands(bands);

    std::vector<std::vector<double>> pool;
    for (int k = 0; k < n_traj; ++k)
        pool.push_back(sample_trajectory(rep.sample_band, seed + static_cast<std::uint64_t>(k),
                                         (k % 2 == 0) ? TrajectoryMode::Uniform
                                                      : TrajectoryMode::Vertex));

    for (size_t s = 0; s < strats.size(); ++s) {
        StrategyRow row;
        row.strategy = strategies[s];
        row.trajectories = n_traj;
        double cost = 0.0, base = 0.0;
        for (const auto& traj : pool) {
            DispatchLog log = run_rolling(c, *aggs[s], traj, strats[s], true);
            if (!log.completed) continue;
            DispatchLog ref = run_rolling(c, *aggs[s], traj, strats[s], false);
            ++row.completed;
            cost += log.total_cost;
            base += ref.total_cost;
        }
        if (row.completed > 0) {
            row.avg_cost = cost / row.completed;
            row.avg_baseline_cost = base / row.completed;
        }
        row.feasibility_rate = static_cast<double>(row.completed) / n_traj;
        rep.strategies.push_back(row);
    }
    return rep;
}

} // namespace flexband
