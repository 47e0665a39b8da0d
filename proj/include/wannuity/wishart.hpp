#pragma once

#include <complex>
#include <optional>

#include "wannuity/linalg.hpp"
#include "wannuity/quadrature.hpp"

namespace wannuity {

// dv = (omega + m v + v m') dt + sqrt(v) dW sigma + sigma' dW' sqrt(v),
// restricted to omega = beta sigma^2 with beta >= n + 1.
class WishartParams {
public:
    static WishartParams create(double beta, const Mat& sigma, const Mat& m, const Mat& v0);

    int n() const { return n_; }
    double beta() const { return beta_; }
    const Mat& sigma() const { return sigma_; }
    const Mat& m() const { return m_; }
    const Mat& v0() const { return v0_; }
    const Mat& sigma_sq() const { return sigma_sq_; }
    const Mat& omega() const { return omega_; } // always beta * sigma^2
    const BigMat& drift_kron() const { return a_; } // A = I (x) m + m (x) I

private:
    WishartParams() = default;
    int n_ = 0;
    double beta_ = 0.0;
    Mat sigma_, m_, v0_, sigma_sq_, omega_;
    BigMat a_;
};

// varsigma_t = int_0^t e^{(t-s)m} sigma^2 e^{(t-s)m'} ds and
// vartheta_t = varsigma_t^{-1} e^{mt} v0 e^{m't}.
struct ConditionalMoments {
    double t = 0.0;
    Mat varsigma;
    Mat vartheta;
    BigMat drift_kron;
};

ConditionalMoments conditional_moments(const WishartParams& p, double t);
// Conditioning on an arbitrary current state instead of v_0.
ConditionalMoments conditional_moments(const WishartParams& p, double t, const Mat& v_start);

struct TransformPoint {
    Complex value;
    double det_phase; // summed principal-branch argument of det(I - 2 varsigma theta)
};

// E[etr(theta v_t)] for symmetric theta. The complex overload serves the
// inversion integrals; the real overload additionally enforces the moment
// domain I - 2 varsigma theta > 0.
TransformPoint mgf_point(const WishartParams& p, const ConditionalMoments& cm, const CMat& theta);
Complex mgf(const WishartParams& p, const ConditionalMoments& cm, const CMat& theta);
Complex mgf(const WishartParams& p, double t, const CMat& theta);
double mgf(const WishartParams& p, double t, const Mat& theta);

// sup{nu >= 0 : I - 2 nu varsigma theta_dir > 0}; +inf when theta_dir <= 0.
double mgf_domain_bound(const WishartParams& p, const ConditionalMoments& cm, const Mat& theta_dir);
double mgf_domain_bound(const WishartParams& p, double t, const Mat& theta_dir);

// d/dnu Phi(t, theta1 + nu theta2) = (g1 + g2 + g3) Phi.
struct MgfDerivative {
    Complex phi;
    Complex g_sum;
    double det_phase;
    Complex derivative() const { return g_sum * phi; }
};

MgfDerivative mgf_derivative_parts(const WishartParams& p, const ConditionalMoments& cm,
                                   const CMat& theta1, const CMat& theta2, Complex nu);
Complex mgf_derivative(const WishartParams& p, double t, const CMat& theta1, const CMat& theta2,
                       Complex nu);

// E[tr[u v_t]] = tr[a0(t) v_0] + b0(t).
struct TraceMeanCoeffs {
    Mat a0;
    double b0;
};

TraceMeanCoeffs trace_mean_coeffs(const WishartParams& p, const Mat& u, double t);

// Conditional mean E[v_t | v_0] and its t -> inf limit.
Mat mean_state(const WishartParams& p, double t);
Mat stationary_mean(const WishartParams& p);

// d<tr[h1 v], tr[h2 v]>_t coefficient: tr[(h1+h1')v(h2+h2')sigma^2].
double quadratic_covariation(const WishartParams& p, const Mat& h1, const Mat& h2, const Mat& v);

} // namespace wannuity
