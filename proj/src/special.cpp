#include "wannuity/special.hpp"

#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>

namespace wannuity {

double regularized_gamma_upper(double s, double x) {
    if (s <= 0.0) throw DomainError("regularized_gamma_upper: s must be positive");
    if (x < 0.0) throw DomainError("regularized_gamma_upper: x must be nonnegative");
    return boost::math::gamma_q(s, x);
}

double regularized_gamma_lower(double s, double x) {
    if (s <= 0.0) throw DomainError("regularized_gamma_lower: s must be positive");
    if (x < 0.0) throw DomainError("regularized_gamma_lower: x must be nonnegative");
    return boost::math::gamma_p(s, x);
}

double pochhammer(double x, unsigned n) {
    double out = 1.0;
    for (unsigned k = 0; k < n; ++k) out *= x + k;
    return out;
}

double norm_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

double norm_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); }

std::complex<double> noncentral_chisq_cf(std::complex<double> z, double dof, double noncentrality) {
    const std::complex<double> den = 1.0 - std::complex<double>(0.0, 2.0) * z;
    return std::exp(noncentrality * std::complex<double>(0.0, 1.0) * z / den -
                    0.5 * dof * std::log(den));
}

double noncentral_chisq_pdf(double x, double dof, double noncentrality) {
    boost::math::non_central_chi_squared dist(dof, noncentrality);
    return boost::math::pdf(dist, x);
}

double noncentral_chisq_cdf(double x, double dof, double noncentrality) {
    boost::math::non_central_chi_squared dist(dof, noncentrality);
    return boost::math::cdf(dist, x);
}

double noncentral_chisq_quantile(double p, double dof, double noncentrality) {
    boost::math::non_central_chi_squared dist(dof, noncentrality);
    return boost::math::quantile(dist, p);
}

} // namespace wannuity
