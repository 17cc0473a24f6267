#pragma once

#include <algorithm>
#include <cmath>

#include "flexband/case.hpp"

namespace flexband {

// Energy drawn from the store over one period by running the ESS at signed
// power p (MW, discharge positive). Strictly increasing and bijective on R.
inline double ess_energy_delta(double p, const EssParams& s, double tau) {
    return std::max(p, 0.0) * tau / s.eta_d + std::min(p, 0.0) * tau * s.eta_c;
}

// Inverse of ess_energy_delta in p.
inline double ess_energy_delta_inv(double d, const EssParams& s, double tau) {
    if (d >= 0.0) return d * s.eta_d / tau;
    return d / (tau * s.eta_c);
}

// Exact nonconvex single-step ESS model: SoC recursion under the signed-power
// dynamics plus the power bound. Simultaneous charge/discharge is excluded by
// construction of the signed representation.
inline bool check_general_ess_step(double e_prev, double e_next, double p,
                                   const EssParams& s, double tau,
                                   double tol = 1e-9) {
    if (p < -s.p_chg_max - tol || p > s.p_dis_max + tol) return false;
    const double expected = s.kappa * e_prev - ess_energy_delta(p, s, tau);
    return std::abs(e_next - expected) <= tol;
}

// Range of signed ESS power over one period that keeps the post-step stored
// energy within [e_min, e_max], starting from e_prev. Intersected with the
// power bounds. May be empty only for invalid e_prev.
inline std::pair<double, double> ess_feasible_power_range(double e_prev, const EssParams& s, double tau) {
    // e_next = kappa*e_prev - F(p) in [e_min, e_max]  <=>  F(p) in [kappa*e_prev - e_max, kappa*e_prev - e_min]
    const double lo_delta = s.kappa * e_prev - s.e_max;
    const double hi_delta = s.kappa * e_prev - s.e_min;
    double lo = std::max(-s.p_chg_max, ess_energy_delta_inv(lo_delta, s, tau));
    double hi = std::min(s.p_dis_max, ess_energy_delta_inv(hi_delta, s, tau));
    return {lo, hi};
}

} // namespace flexband
