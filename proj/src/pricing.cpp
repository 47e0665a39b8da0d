#include "wannuity/pricing.hpp"

#include <algorithm>
#include <cmath>

namespace wannuity {

AnnuitySchedule AnnuitySchedule::yearly(double T, int num_payments) {
    AnnuitySchedule s;
    s.T = T;
    for (int i = 1; i <= num_payments; ++i) s.payment_dates.push_back(T + i);
    return s;
}

void AnnuitySchedule::validate() const {
    if (payment_dates.empty()) throw InvalidParameter("AnnuitySchedule: needs at least one payment");
    if (payment_dates.front() <= T)
        throw InvalidParameter("AnnuitySchedule: first payment must follow the option date");
    if (!std::is_sorted(payment_dates.begin(), payment_dates.end(),
                        [](double a, double b) { return a <= b; }))
        throw InvalidParameter("AnnuitySchedule: payment dates must be strictly increasing");
}

void GaoContract::validate() const {
    schedule.validate();
    if (g <= 0.0) throw InvalidParameter("GaoContract: guaranteed rate g must be positive");
    if (z_i >= 0.0) throw InvalidParameter("GaoContract: damping z_i must be strictly negative");
}

double survival_bond(const MortalityModel& mdl, const DiscountCurve& curve, double t, double T,
                     const Mat& v_t) {
    if (T < t) throw InvalidParameter("survival_bond: needs T >= t");
    const auto tm = trace_mean_coeffs(mdl.wishart(), mdl.u0(), T - t);
    return curve.discount(t, T) * std::exp(-mdl.alpha() * (T - t)) *
           (1.0 + tm.b0 + (tm.a0 * v_t).trace()) / (1.0 + (mdl.u0() * v_t).trace());
}

AnnuityCoeffs annuity_coeffs(const MortalityModel& mdl, const DiscountCurve& curve,
                             const AnnuitySchedule& schedule, std::optional<double> g) {
    schedule.validate();
    const int n = mdl.wishart().n();
    AnnuityCoeffs out;
    out.a3 = Mat::Zero(n, n);
    for (double Ti : schedule.payment_dates) {
        const auto tm = trace_mean_coeffs(mdl.wishart(), mdl.u0(), Ti - schedule.T);
        const double disc = curve.discount(schedule.T, Ti) * std::exp(-mdl.alpha() * (Ti - schedule.T));
        out.b3 += disc * (1.0 + tm.b0);
        out.a3 += disc * tm.a0;
    }
    out.a3 = symmetrize(out.a3);
    if (g) {
        if (*g <= 0.0) throw InvalidParameter("annuity_coeffs: g must be positive");
        out.b4 = out.b3 - 1.0 / *g;
        out.a4 = symmetrize(Mat(out.a3 - (1.0 / *g) * mdl.u0()));
        out.has_strike = true;
    }
    return out;
}

double annuity_value(const AnnuityCoeffs& coeffs, const MortalityModel& mdl, const Mat& v_T) {
    return (coeffs.b3 + (coeffs.a3 * v_T).trace()) / (1.0 + (mdl.u0() * v_T).trace());
}

double annuity_cdf(const MortalityModel& mdl, const DiscountCurve& curve, double t,
                   const AnnuitySchedule& schedule, double z, const Mat& v_t,
                   const QuadratureConfig& quad, BranchMonitor* monitor) {
    if (schedule.T <= t) throw InvalidParameter("annuity_cdf: needs schedule.T > t");
    const auto coeffs = annuity_coeffs(mdl, curve, schedule);
    const auto& p = mdl.wishart();
    const auto cm = conditional_moments(p, schedule.T - t, v_t);
    const Mat dir = Mat(coeffs.a3 - z * mdl.u0());
    const auto integrand = [&](double s) -> Complex {
        const CMat theta = Complex(0.0, s) * dir.cast<Complex>();
        const auto pt = mgf_point(p, cm, theta);
        if (monitor) monitor->record(s, pt.det_phase);
        return std::exp(Complex(0.0, s * (coeffs.b3 - z))) * pt.value / s;
    };
    return 0.5 - integrate_semi_infinite(integrand, quad).imag() / M_PI;
}

double annuity_pdf(const MortalityModel& mdl, const DiscountCurve& curve, double t,
                   const AnnuitySchedule& schedule, double z, const Mat& v_t,
                   const QuadratureConfig& quad, BranchMonitor* monitor) {
    if (schedule.T <= t) throw InvalidParameter("annuity_pdf: needs schedule.T > t");
    const auto coeffs = annuity_coeffs(mdl, curve, schedule);
    const auto& p = mdl.wishart();
    const auto cm = conditional_moments(p, schedule.T - t, v_t);
    const CMat a3c = coeffs.a3.cast<Complex>();
    const CMat u0c = mdl.u0().cast<Complex>();
    const auto integrand = [&](double s) -> Complex {
        const Complex is(0.0, s);
        const auto parts = mgf_derivative_parts(p, cm, CMat(is * a3c), CMat(-is * u0c), z);
        if (monitor) monitor->record(s, parts.det_phase);
        return (-is + parts.g_sum) * std::exp(Complex(0.0, s * (coeffs.b3 - z))) * parts.phi / s;
    };
    return -integrate_semi_infinite(integrand, quad).imag() / M_PI;
}

VarEs annuity_var_es(const MortalityModel& mdl, const DiscountCurve& curve, double t,
                     const AnnuitySchedule& schedule, double p, const Mat& v_t,
                     const QuadratureConfig& quad) {
    if (p <= 0.0 || p >= 1.0) throw InvalidParameter("annuity_var_es: p must lie in (0,1)");
    const auto cdf = [&](double z) { return annuity_cdf(mdl, curve, t, schedule, z, v_t, quad); };

    // bracket: the annuity is positive and bounded by the number of payments
    double lo = 0.0;
    double hi = static_cast<double>(schedule.payment_dates.size()) + 1.0;
    if (cdf(hi) < p) throw BracketFailure("annuity_var_es: upper bracket below target probability");
    for (int it = 0; it < 200 && hi - lo > 1e-8; ++it) {
        const double mid = 0.5 * (lo + hi);
        (cdf(mid) < p ? lo : hi) = mid;
    }
    VarEs out;
    out.var = 0.5 * (lo + hi);

    // E[A | A <= VaR] = (VaR F(VaR) - int_0^VaR F) / p
    const double integral = integrate_finite(cdf, 0.0, out.var, quad);
    out.es = (out.var * cdf(out.var) - integral) / p;
    return out;
}

double damped_positive_expectation(const std::function<Complex(Complex)>& cf, double z_i,
                                   const QuadratureConfig& quad) {
    if (z_i >= 0.0) throw InvalidParameter("damped_positive_expectation: damping must be negative");
    // the damped kernel peaks on a scale |z_i| near the origin
    QuadratureConfig q = quad;
    q.initial_width = std::min(quad.initial_width, std::abs(z_i));
    const auto integrand = [&](double z) -> Complex {
        const Complex zz(z, z_i);
        const Complex den = Complex(0.0, 1.0) * zz;
        return cf(zz) / (den * den);
    };
    const double value = integrate_semi_infinite(integrand, q).real() / M_PI;
    return std::max(value, 0.0);
}

double gao_deflator(const MortalityModel& mdl, const DiscountCurve& curve, double t, double T,
                    const Mat& v_t) {
    return curve.discount(t, T) * std::exp(-mdl.alpha() * (T - t)) /
           (1.0 + (mdl.u0() * v_t).trace());
}

double gao_price_cf(const MortalityModel& mdl, const DiscountCurve& curve, double t,
                    const GaoContract& contract, const Mat& v_t, const QuadratureConfig& quad,
                    BranchMonitor* monitor) {
    contract.validate();
    if (contract.schedule.T <= t) throw InvalidParameter("gao_price_cf: needs option date T > t");
    const auto coeffs = annuity_coeffs(mdl, curve, contract.schedule, contract.g);
    const auto& p = mdl.wishart();
    const auto cm = conditional_moments(p, contract.schedule.T - t, v_t);

    const double bound = mgf_domain_bound(p, cm, coeffs.a4);
    if (std::abs(contract.z_i) >= bound)
        throw DampingOutOfDomain("gao_price_cf: |z_i| = " + std::to_string(std::abs(contract.z_i)) +
                                 " exceeds the transform domain bound " + std::to_string(bound) +
                                 " in direction a4");

    const CMat a4c = coeffs.a4.cast<Complex>();
    const auto cf = [&](Complex zz) -> Complex {
        const auto pt = mgf_point(p, cm, CMat(Complex(0.0, 1.0) * zz * a4c));
        if (monitor) monitor->record(zz.real(), pt.det_phase);
        return std::exp(Complex(0.0, 1.0) * zz * coeffs.b4) * pt.value;
    };
    const double expectation = damped_positive_expectation(cf, contract.z_i, quad);
    return gao_deflator(mdl, curve, t, contract.schedule.T, v_t) * expectation;
}

} // namespace wannuity
