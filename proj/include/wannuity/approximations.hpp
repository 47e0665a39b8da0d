#pragma once

#include <vector>

#include "wannuity/wishart.hpp"

namespace wannuity {

// Cumulants of Y_T = b4 + tr[a4 v_T]:
// kappa_j = b4 d_{j1} + beta (j-1)! 2^{j-1} tr[(s_T a4)^j] + j! 2^{j-1} tr[t_T' (s_T a4)^j].
struct CumulantSet {
    std::vector<double> kappas; // kappas[j-1] = kappa_j
    double b4 = 0.0;
    double horizon = 0.0;

    double k(int j) const { return kappas.at(j - 1); }
};

CumulantSet cumulants(const WishartParams& p, const ConditionalMoments& cm, double b4,
                      const Mat& a4_sym, int J = 3);
CumulantSet cumulants(const WishartParams& p, double b4, const Mat& a4_sym, double T, int J = 3);

// Incomplete Bell polynomial B_{n,k}(x1..x_{n-k+1}) by the standard recurrence.
double bell_incomplete(int n, int k, const std::vector<double>& x);

// mu_j = sum_k B_{j,k}(kappa_1, ..) and the inverse map.
std::vector<double> moments_from_cumulants(const std::vector<double>& kappas);
std::vector<double> cumulants_from_moments(const std::vector<double>& moments);

// Order-3 Gaussian perturbation value of E[(Y)_+].
double gaussian_expectation_positive(double k1, double k2, double k3);

// Independent noncentral chi-squared surrogate built on the spectral
// decomposition of a4.
struct SpectralSurrogate {
    struct Component {
        double lambda;
        double scale;         // gamma' varsigma_T gamma
        double noncentrality; // gamma' vartheta_T' gamma, clamped at zero
        bool clamped = false;
    };
    double b4 = 0.0;
    double dof = 0.0; // beta
    std::vector<Component> components;
    bool any_clamped = false;

    Complex cf(Complex z) const;
};

SpectralSurrogate spectral_surrogate(const WishartParams& p, const ConditionalMoments& cm,
                                     double b4, const Mat& a4_sym);

double spectral_price(const SpectralSurrogate& s, const QuadratureConfig& quad, double z_i);

// Single dominant-eigenvalue reduction; quadrature against the noncentral
// chi-squared density.
struct SingleEigPrice {
    double value;
    double dominance_ratio; // max |other| / |dominant|
    bool dominant;          // ratio <= 0.5
};

SingleEigPrice single_eig_price(const SpectralSurrogate& s, const QuadratureConfig& quad = {});

enum class EigSign { AllPositive, AllNegative };

// Order-3 gamma perturbation of E[(Y)_+] with shift k = b4. Requires a pure
// eigenvalue sign pattern; throws MixedEigenvalues otherwise (handled by the
// caller through classify_eig_sign).
double gamma_price(const CumulantSet& ks, EigSign eig_sign, double b4);

// Classifies eig(a4): returns the pure sign or throws MixedEigenvalues.
EigSign classify_eig_sign(const Mat& a4_sym, double tol = 1e-12);

} // namespace wannuity
