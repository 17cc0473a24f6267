#pragma once

#include "flexband/case.hpp"

namespace fixtures {

// Single ideal-energy ESS with lossy converters, one period.
inline flexband::Case example1() {
    flexband::Case c;
    c.periods = 1;
    c.tau = 1;
    c.node_count = 1;
    flexband::EssParams s;
    s.node = 1;
    s.kappa = 1;
    s.eta_d = 0.9;
    s.eta_c = 0.9;
    s.p_dis_max = 1;
    s.p_chg_max = 1;
    s.e_min = 0;
    s.e_max = 1;
    s.e0 = 1;
    c.esses.push_back(s);
    c.weights = {1};
    return c;
}

// Two nodes behind a unit line limit, two periods; the second period is dead.
inline flexband::Case example2() {
    flexband::Case c;
    c.periods = 2;
    c.tau = 1;
    c.node_count = 2;
    c.lines.push_back({1, 2, 1.0, 1.0});
    flexband::EssParams s;
    s.node = 2;
    s.kappa = 1;
    s.eta_d = 1;
    s.eta_c = 1;
    s.p_dis_max = 1;
    s.p_chg_max = 1;
    s.e_min = 0;
    s.e_max = 1;
    s.e0 = 1;
    s.cost = 1;
    c.esses.push_back(s);
    flexband::GenSpec g;
    g.node = 2;
    g.p_min = {0, 0};
    g.p_max = {1, 0};
    g.cost = 1;
    c.gens.push_back(g);
    flexband::LoadSpec d;
    d.node = 2;
    d.p_min = {0, 0};
    d.p_max = {2, 0};
    c.loads.push_back(d);
    c.weights = {1, 1};
    return c;
}

// Single node, three periods, generation only in the middle period.
inline flexband::Case example3() {
    flexband::Case c;
    c.periods = 3;
    c.tau = 1;
    c.node_count = 1;
    flexband::EssParams s;
    s.node = 1;
    s.kappa = 1;
    s.eta_d = 1;
    s.eta_c = 1;
    s.p_dis_max = 1;
    s.p_chg_max = 1;
    s.e_min = 0;
    s.e_max = 1;
    s.e0 = 0;
    s.cost = 0.5;
    c.esses.push_back(s);
    flexband::GenSpec g;
    g.node = 1;
    g.p_min = {0, 0, 0};
    g.p_max = {0, 2, 0};
    g.cost = 1;
    c.gens.push_back(g);
    c.weights = {2, 1, 2};
    return c;
}

} // namespace fixtures
