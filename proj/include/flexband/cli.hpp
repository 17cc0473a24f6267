#pragma once

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flexband/harness.hpp"
#include "flexband/io.hpp"
#include "flexband/oracle.hpp"

namespace flexband {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitSizeCap = 3;
inline constexpr int kExitInfeasible = 4;

namespace detail {

inline SolveMode parse_mode(const std::string& mode) {
    if (mode == "full") return SolveMode::Full;
    if (mode == "lazy") return SolveMode::Lazy;
    throw ValidationError("unknown mode \"" + mode + "\" (expected full or lazy)");
}

inline void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") std::cout << text;
    else write_text_file(path, text);
}

} // namespace detail

inline int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Aggregate power flexibility bands: compute, certify, and disaggregate"};
    app.require_subcommand(1);

    std::string case_path, result_path, out_path, traj_path;
    std::string model = "enumeration", mode = "full", strategy = "enumeration";
    std::vector<std::string> models{"envelope", "rectangular", "enumeration", "two-stage", "outer"};
    std::vector<std::string> strategies{"enumeration"};
    std::vector<std::string> plot_results;
    int n_traj = 100;
    std::uint64_t seed = 1;
    double grid_step = 0.05;
    bool timing = false;

    CLI::App* agg = app.add_subcommand("aggregate", "Compute a flexibility band for one model");
    agg->add_option("--case", case_path, "case file (JSON)")->required();
    agg->add_option("--model", model,
                    "envelope | rectangular | single-ess | enumeration | two-stage | outer");
    agg->add_option("--mode", mode, "full | lazy (rectangular and two-stage only)");
    agg->add_option("--out", out_path, "result file, - for stdout");

    CLI::App* dis = app.add_subcommand("disaggregate",
                                       "Roll a setpoint trajectory through per-period dispatch");
    dis->add_option("--case", case_path, "case file (JSON)")->required();
    dis->add_option("--result", result_path, "aggregation result file")->required();
    dis->add_option("--trajectory", traj_path, "trajectory file (JSON)")->required();
    dis->add_option("--strategy", strategy, "enumeration | rectangular | envelope | greedy");
    dis->add_option("--out", out_path, "dispatch log file, - for stdout");

    CLI::App* sim = app.add_subcommand("simulate",
                                       "Compare models and strategies on sampled trajectories");
    sim->add_option("--case", case_path, "case file (JSON)")->required();
    sim->add_option("--models", models, "models to solve")->delimiter(',');
    sim->add_option("--strategies", strategies, "strategies to score")->delimiter(',');
    sim->add_option("--n", n_traj, "trajectories per strategy");
    sim->add_option("--seed", seed, "trajectory seed");
    sim->add_option("--out", out_path, "report file (CSV), - for stdout");
    sim->add_flag("--timing", timing, "include wall-clock columns (non-deterministic bytes)");

    CLI::App* chk = app.add_subcommand("oracle-check",
                                       "Check a band against the grid SoC-set recursion");
    chk->add_option("--case", case_path, "case file (JSON)")->required();
    chk->add_option("--band", result_path, "aggregation result file holding the band")->required();
    chk->add_option("--grid-step", grid_step, "power and SoC grid step");

    CLI::App* plt = app.add_subcommand("emit-plot", "Band curves as CSV for external plotting");
    plt->add_option("--result", plot_results, "aggregation result file(s)")
        ->required()
        ->delimiter(',');
    plt->add_option("--out", out_path, "CSV file, - for stdout");

    try {
        app.parse(argc, argv);

        if (agg->parsed()) {
            Case c = case_from_json(load_json_file(case_path));
            AggregationResult r = solve_model(c, model, detail::parse_mode(mode));
            detail::emit(out_path, to_text(result_to_json(r)));
            std::fprintf(stderr, "%s: objective %.12g\n", r.model.c_str(), r.objective);
            return kExitOk;
        }
        if (dis->parsed()) {
            Case c = case_from_json(load_json_file(case_path));
            AggregationResult r = result_from_json(load_json_file(result_path));
            std::vector<double> traj = trajectory_from_json(load_json_file(traj_path));
            DispatchLog log = run_rolling(c, r, traj, strategy_from_name(strategy));
            detail::emit(out_path, to_text(log_to_json(log)));
            if (!log.completed) {
                std::fprintf(stderr, "dispatch failed: %s\n", log.failure.c_str());
                return kExitInfeasible;
            }
            std::fprintf(stderr, "dispatch complete, total cost %.12g\n", log.total_cost);
            return kExitOk;
        }
        if (sim->parsed()) {
            Case c = case_from_json(load_json_file(case_path));
            ComparisonReport rep = run_comparison(c, models, strategies, n_traj, seed);
            detail::emit(out_path, report_csv(rep, c.weights, timing));
            return kExitOk;
        }
        if (chk->parsed()) {
            Case c = case_from_json(load_json_file(case_path));
            AggregationResult r = result_from_json(load_json_file(result_path));
            GridSpec grid;
            grid.power_step = grid_step;
            grid.soc_step = grid_step;
            const bool cons = verify_band(c, r.band, grid, Rounding::Conservative);
            const bool opt = verify_band(c, r.band, grid, Rounding::Optimistic);
            std::printf("conservative: %s\n", cons ? "accept" : "reject");
            std::printf("optimistic: %s\n", opt ? "accept" : "reject");
            return opt ? kExitOk : kExitInfeasible;
        }
        if (plt->parsed()) {
            std::vector<AggregationResult> results;
            for (const auto& p : plot_results)
                results.push_back(result_from_json(load_json_file(p)));
            detail::emit(out_path, plot_csv(results));
            return kExitOk;
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    } catch (const SizeCapError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitSizeCap;
    } catch (const InfeasibleError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInfeasible;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    }
    return kExitValidation;
}

} // namespace flexband
