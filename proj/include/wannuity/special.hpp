#pragma once

#include <complex>

#include "wannuity/errors.hpp"

namespace wannuity {

// Q(s, x) = Gamma(s, x) / Gamma(s); throws DomainError on s <= 0 or x < 0.
double regularized_gamma_upper(double s, double x);
// P(s, x) = 1 - Q(s, x).
double regularized_gamma_lower(double s, double x);

// Rising factorial (x)_n.
double pochhammer(double x, unsigned n);

double norm_cdf(double x);
double norm_pdf(double x);

// Characteristic function of a noncentral chi-squared variable:
// exp(delta iz / (1 - 2iz)) / (1 - 2iz)^{dof/2}, principal-branch power.
std::complex<double> noncentral_chisq_cf(std::complex<double> z, double dof, double noncentrality);

double noncentral_chisq_pdf(double x, double dof, double noncentrality);
double noncentral_chisq_cdf(double x, double dof, double noncentrality);
double noncentral_chisq_quantile(double p, double dof, double noncentrality);

} // namespace wannuity
