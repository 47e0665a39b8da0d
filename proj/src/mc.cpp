#include "wannuity/mc.hpp"

#include <cmath>

namespace wannuity {

McEstimate mc_mean(const std::vector<double>& per_path) {
    double sum = 0.0, sum_sq = 0.0;
    for (double v : per_path) {
        sum += v;
        sum_sq += v * v;
    }
    const auto n = static_cast<double>(per_path.size());
    McEstimate out;
    out.value = sum / n;
    out.std_error = n > 1 ? std::sqrt(std::max(sum_sq / n - out.value * out.value, 0.0) / (n - 1)) : 0.0;
    out.paths_used = static_cast<long>(per_path.size());
    return out;
}

McEstimate mc_price_gao(const MortalityModel& mdl, const DiscountCurve& curve,
                        const GaoContract& contract, const McConfig& cfg,
                        const SimResult* presimulated) {
    contract.validate();
    McConfig run = cfg;
    run.horizon = contract.schedule.T;
    SimResult local;
    if (!presimulated) {
        local = simulate_terminal(mdl.wishart(), run);
        presimulated = &local;
    }
    const auto coeffs = annuity_coeffs(mdl, curve, contract.schedule, contract.g);
    const double defl = gao_deflator(mdl, curve, 0.0, contract.schedule.T, mdl.wishart().v0());
    std::vector<double> vals;
    vals.reserve(presimulated->terminal.size());
    for (const auto& v : presimulated->terminal) {
        // the annuity denominator cancels against zeta_T
        const double y = coeffs.b4 + (coeffs.a4 * v).trace();
        vals.push_back(defl * std::max(y, 0.0));
    }
    auto est = mc_mean(vals);
    est.clamp_fraction = presimulated->clamp_fraction;
    return est;
}

McEstimate mc_forward_annuity(const MortalityModel& mdl, const DiscountCurve& curve,
                              const AnnuitySchedule& schedule, const McConfig& cfg,
                              const SimResult* presimulated) {
    McConfig run = cfg;
    run.horizon = schedule.T;
    SimResult local;
    if (!presimulated) {
        local = simulate_terminal(mdl.wishart(), run);
        presimulated = &local;
    }
    const auto coeffs = annuity_coeffs(mdl, curve, schedule);
    const double defl = gao_deflator(mdl, curve, 0.0, schedule.T, mdl.wishart().v0());
    std::vector<double> vals;
    vals.reserve(presimulated->terminal.size());
    for (const auto& v : presimulated->terminal)
        vals.push_back(defl * (coeffs.b3 + (coeffs.a3 * v).trace()));
    auto est = mc_mean(vals);
    est.clamp_fraction = presimulated->clamp_fraction;
    return est;
}

McEstimate mc_survival_bond_intensity(const MortalityModel& mdl, const DiscountCurve& curve,
                                      double T, const McConfig& cfg) {
    McConfig run = cfg;
    run.horizon = T;
    const int k = mdl.num_legs();
    std::vector<IntensityLegCoeffs> legs;
    legs.reserve(k);
    for (int i = 0; i < k; ++i) legs.push_back(mdl.leg_coeffs(i));

    const auto total_intensity = [&](const Mat& v) {
        double num = 0.0;
        for (const auto& lc : legs) num += lc.c + (lc.h * v).trace();
        return num / (1.0 + (mdl.u0() * v).trace());
    };

    auto vals = simulate_path_functional(mdl.wishart(), run,
                                         [&](const std::vector<Mat>& path, double dt) {
                                             double integral = 0.0;
                                             double prev = total_intensity(path.front());
                                             for (std::size_t s = 1; s < path.size(); ++s) {
                                                 const double cur = total_intensity(path[s]);
                                                 integral += 0.5 * (prev + cur) * dt;
                                                 prev = cur;
                                             }
                                             return std::exp(-integral);
                                         });
    auto est = mc_mean(vals);
    est.value *= curve.discount(0.0, T);
    est.std_error *= curve.discount(0.0, T);
    return est;
}

} // namespace wannuity
