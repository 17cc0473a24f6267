#pragma once

#include <algorithm>
#include <random>

#include "flexband/case.hpp"

namespace fixtures {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0));
}

// Seeded random chain network. Device minimums are zero and initial stored
// energy is interior, so the zero dispatch is always feasible and every case
// admits a band.
inline flexband::Case random_case(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    flexband::Case c;
    c.seed = seed;
    c.periods = 2 + static_cast<int>(rng() % 5);            // 2..6
    int nodes = 1 + static_cast<int>(rng() % 5);            // 1..5
    int n_ess = 1 + static_cast<int>(rng() % 3);            // 1..3
    if (c.periods >= 5) {                                   // keep big horizons lean
        nodes = std::min(nodes, 3);
        n_ess = std::min(n_ess, 2);
    }
    c.tau = (rng() % 2) ? 1.0 : 0.5;
    c.node_count = nodes;
    for (int n = 1; n < nodes; ++n)
        c.lines.push_back({n, n + 1, uniform(rng, 2.0, 10.0), uniform(rng, 15.0, 25.0)});
    for (int n = 1; n <= nodes; ++n) {
        if (rng() % 4 != 0) {
            flexband::LoadSpec d;
            d.node = n;
            for (int t = 0; t < c.periods; ++t) {
                d.p_min.push_back(0.0);
                d.p_max.push_back(uniform(rng, 0.1, 1.2));
            }
            c.loads.push_back(d);
        }
        if (rng() % 2 == 0) {
            flexband::GenSpec g;
            g.node = n;
            g.cost = uniform(rng, 0.5, 2.0);
            for (int t = 0; t < c.periods; ++t) {
                g.p_min.push_back(0.0);
                g.p_max.push_back(uniform(rng, 0.2, 1.5));
            }
            c.gens.push_back(g);
        }
    }
    for (int k = 0; k < n_ess; ++k) {
        flexband::EssParams s;
        s.node = 1 + static_cast<int>(rng() % nodes);
        s.kappa = uniform(rng, 0.9, 1.0);
        s.eta_d = uniform(rng, 0.85, 1.0);
        s.eta_c = uniform(rng, 0.85, 1.0);
        s.p_dis_max = uniform(rng, 0.5, 1.5);
        s.p_chg_max = uniform(rng, 0.5, 1.5);
        s.e_min = 0.0;
        s.e_max = uniform(rng, 1.0, 3.0);
        s.e0 = uniform(rng, 0.2 * s.e_max, 0.8 * s.e_max);
        s.cost = uniform(rng, 0.2, 1.0);
        c.esses.push_back(s);
    }
    for (int t = 0; t < c.periods; ++t) c.weights.push_back(uniform(rng, 0.1, 1.0));
    flexband::validate_case(c);
    return c;
}

// Variant for the grid oracle: one ideal-ish ESS, short horizon, single node.
inline flexband::Case random_tiny_case(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    flexband::Case c;
    c.seed = seed;
    c.periods = 2 + static_cast<int>(rng() % 2); // 2..3
    c.tau = 1.0;
    c.node_count = 1;
    flexband::EssParams s;
    s.node = 1;
    s.kappa = 1.0;
    s.eta_d = uniform(rng, 0.9, 1.0);
    s.eta_c = uniform(rng, 0.9, 1.0);
    s.p_dis_max = uniform(rng, 0.5, 1.0);
    s.p_chg_max = uniform(rng, 0.5, 1.0);
    s.e_min = 0.0;
    s.e_max = 1.0;
    s.e0 = uniform(rng, 0.25, 0.75);
    c.esses.push_back(s);
    if (rng() % 2 == 0) {
        flexband::GenSpec g;
        g.node = 1;
        for (int t = 0; t < c.periods; ++t) {
            g.p_min.push_back(0.0);
            g.p_max.push_back(uniform(rng, 0.2, 1.0));
        }
        c.gens.push_back(g);
    } else {
        flexband::LoadSpec d;
        d.node = 1;
        for (int t = 0; t < c.periods; ++t) {
            d.p_min.push_back(0.0);
            d.p_max.push_back(uniform(rng, 0.2, 1.0));
        }
        c.loads.push_back(d);
    }
    for (int t = 0; t < c.periods; ++t) c.weights.push_back(1.0);
    flexband::validate_case(c);
    return c;
}

} // namespace fixtures
