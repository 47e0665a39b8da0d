#pragma once

#include "wannuity/pricing.hpp"
#include "wannuity/simulate.hpp"

namespace wannuity {

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    long paths_used = 0;
    double clamp_fraction = 0.0;
};

McEstimate mc_mean(const std::vector<double>& per_path);

// Pathwise state-price-density deflation of the option payoff:
// P(t,T) e^{-alpha(T-t)} (b3 + tr[a3 v_T] - (1/g)(1 + tr[u0 v_T]))_+ / (1 + tr[u0 v_t]).
McEstimate mc_price_gao(const MortalityModel& mdl, const DiscountCurve& curve,
                        const GaoContract& contract, const McConfig& cfg,
                        const SimResult* presimulated = nullptr);

// Forward annuity value E[zeta_T/zeta_t sum SB(T,T_i)] (g -> infinity limit).
McEstimate mc_forward_annuity(const MortalityModel& mdl, const DiscountCurve& curve,
                              const AnnuitySchedule& schedule, const McConfig& cfg,
                              const SimResult* presimulated = nullptr);

// Survival bond by the second route: pathwise exp(-int (mu_x + mu_y)) with a
// trapezoidal in-path integral, exercising the intensities instead of the
// pricing kernel.
McEstimate mc_survival_bond_intensity(const MortalityModel& mdl, const DiscountCurve& curve,
                                      double T, const McConfig& cfg);

} // namespace wannuity
