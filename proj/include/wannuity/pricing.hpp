#pragma once

#include <optional>
#include <vector>

#include "wannuity/mortality.hpp"

namespace wannuity {

// Flat continuously compounded short rate.
struct DiscountCurve {
    double r = 0.0;
    double discount(double t, double T) const { return std::exp(-r * (T - t)); }
};

// Option date T plus yearly payment dates T+1, ..., T+N (or explicit dates).
struct AnnuitySchedule {
    double T = 0.0;
    std::vector<double> payment_dates;

    static AnnuitySchedule yearly(double T, int num_payments);
    void validate() const;
};

struct GaoContract {
    AnnuitySchedule schedule;
    double g = 0.0;       // guaranteed joint survival annuity rate
    double z_i = -0.025;  // Fourier damping, strictly negative

    void validate() const;
};

// Annuity as a linear-rational form: (b3 + tr[a3 v_T]) / (1 + tr[u0 v_T]);
// with a strike, b4 = b3 - 1/g and a4 = a3 - u0/g (a4 stored symmetrized).
struct AnnuityCoeffs {
    double b3 = 0.0;
    Mat a3;
    double b4 = 0.0;
    Mat a4;
    bool has_strike = false;
};

double survival_bond(const MortalityModel& mdl, const DiscountCurve& curve, double t, double T,
                     const Mat& v_t);

AnnuityCoeffs annuity_coeffs(const MortalityModel& mdl, const DiscountCurve& curve,
                             const AnnuitySchedule& schedule,
                             std::optional<double> g = std::nullopt);

double annuity_value(const AnnuityCoeffs& coeffs, const MortalityModel& mdl, const Mat& v_T);

double annuity_cdf(const MortalityModel& mdl, const DiscountCurve& curve, double t,
                   const AnnuitySchedule& schedule, double z, const Mat& v_t,
                   const QuadratureConfig& quad = {}, BranchMonitor* monitor = nullptr);

// Density of the time-T annuity value, from the transform-derivative form of
// the same inversion.
double annuity_pdf(const MortalityModel& mdl, const DiscountCurve& curve, double t,
                   const AnnuitySchedule& schedule, double z, const Mat& v_t,
                   const QuadratureConfig& quad = {}, BranchMonitor* monitor = nullptr);

// Lower-tail risk measures of the time-T annuity value: VaR_p solves
// CDF(z) = p; ES_p is the tail mean E[A | A <= VaR_p].
struct VarEs {
    double var;
    double es;
};

VarEs annuity_var_es(const MortalityModel& mdl, const DiscountCurve& curve, double t,
                     const AnnuitySchedule& schedule, double p, const Mat& v_t,
                     const QuadratureConfig& quad = {});

// E[(b4 + tr[a4 v_T])_+] through the damped Fourier transform; `cf` is the
// (undamped) characteristic function of the linear form.
double damped_positive_expectation(const std::function<Complex(Complex)>& cf, double z_i,
                                   const QuadratureConfig& quad);

// Exact guaranteed joint survival annuity option price.
double gao_price_cf(const MortalityModel& mdl, const DiscountCurve& curve, double t,
                    const GaoContract& contract, const Mat& v_t,
                    const QuadratureConfig& quad = {}, BranchMonitor* monitor = nullptr);

// The same price decomposed: deflator x E[(Y_T)_+]; used by the
// approximation front ends so every method shares one deflator.
double gao_deflator(const MortalityModel& mdl, const DiscountCurve& curve, double t, double T,
                    const Mat& v_t);

} // namespace wannuity
