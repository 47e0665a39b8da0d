#include "wannuity/wishart.hpp"

#include <cmath>
#include <limits>

namespace wannuity {

WishartParams WishartParams::create(double beta, const Mat& sigma, const Mat& m, const Mat& v0) {
    const auto n = sigma.rows();
    if (n < 1 || n > 16)
        throw InvalidParameter("WishartParams: dimension must lie in [1,16]");
    if (m.rows() != n || m.cols() != n || v0.rows() != n || v0.cols() != n)
        throw InvalidParameter("WishartParams: sigma, m, v0 must share one dimension");
    if (beta < n + 1)
        throw InvalidParameter("WishartParams: beta must satisfy beta >= n+1 (got " +
                               std::to_string(beta) + " for n=" + std::to_string(n) + ")");
    if (!is_symmetric(sigma, 1e-10))
        throw InvalidParameter(
            "WishartParams: sigma must be symmetric positive definite; pass the symmetric "
            "polar factor for a general invertible diffusion");
    if (!is_spd(sigma))
        throw NotPositiveDefinite("WishartParams: sigma must be positive definite");
    if (!is_spd(v0))
        throw NotPositiveDefinite("WishartParams: v0 must be positive definite");
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    for (Eigen::Index i = 0; i < n; ++i)
        if (es.eigenvalues()(i).real() >= 0.0)
            throw InvalidParameter("WishartParams: every eigenvalue of m needs negative real part");

    WishartParams p;
    p.n_ = static_cast<int>(n);
    p.beta_ = beta;
    p.sigma_ = symmetrize(sigma);
    p.m_ = m;
    p.v0_ = symmetrize(v0);
    p.sigma_sq_ = symmetrize(p.sigma_ * p.sigma_);
    p.omega_ = Mat(beta * p.sigma_sq_);
    p.a_ = kron(Eigen::MatrixXd::Identity(n, n), m) + kron(m, Eigen::MatrixXd::Identity(n, n));
    return p;
}

ConditionalMoments conditional_moments(const WishartParams& p, double t) {
    return conditional_moments(p, t, p.v0());
}

ConditionalMoments conditional_moments(const WishartParams& p, double t, const Mat& v_start) {
    if (t <= 0.0) throw InvalidParameter("conditional_moments: t must be positive");
    ConditionalMoments cm;
    cm.t = t;
    cm.drift_kron = p.drift_kron();
    cm.varsigma = symmetrize(unvec(expm1_solve(cm.drift_kron, t, vec(p.sigma_sq()))));

    const Eigen::MatrixXd emt = mat_exp(p.m() * t);
    const Mat g = symmetrize(emt * v_start * emt.transpose());
    Eigen::LDLT<Eigen::MatrixXd> ldlt(Eigen::MatrixXd(cm.varsigma));
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
        ldlt.vectorD().minCoeff() < 1e-14 * ldlt.vectorD().maxCoeff())
        throw SingularHorizon("conditional_moments: varsigma numerically singular at t=" +
                              std::to_string(t));
    cm.vartheta = ldlt.solve(Eigen::MatrixXd(g));
    return cm;
}

namespace {

// Shared kernel: K = 2 varsigma theta, M = I - K, N = M^{-1}.
struct MgfKernel {
    CMat k;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu;
    CMat n_inv;
    LogDetPower det;
};

MgfKernel make_kernel(const WishartParams& p, const ConditionalMoments& cm, const CMat& theta) {
    MgfKernel ker;
    ker.k = 2.0 * cm.varsigma.cast<Complex>() * theta;
    const CMat m = CMat(CMat::Identity(theta.rows(), theta.cols()) - ker.k);
    ker.lu.compute(Eigen::MatrixXcd(m));
    ker.n_inv = ker.lu.inverse();
    ker.det = complex_log_det_power(m, -0.5 * p.beta());
    return ker;
}

Complex inner_trace(const ConditionalMoments& cm, const MgfKernel& ker) {
    // tr[(vartheta'/2) K (I-K)^{-1}]
    return (0.5 * cm.vartheta.transpose().cast<Complex>() * ker.k * ker.n_inv).trace();
}

} // namespace

TransformPoint mgf_point(const WishartParams& p, const ConditionalMoments& cm, const CMat& theta) {
    const auto ker = make_kernel(p, cm, theta);
    return {std::exp(inner_trace(cm, ker)) * ker.det.value, ker.det.phase};
}

Complex mgf(const WishartParams& p, const ConditionalMoments& cm, const CMat& theta) {
    return mgf_point(p, cm, theta).value;
}

Complex mgf(const WishartParams& p, double t, const CMat& theta) {
    return mgf(p, conditional_moments(p, t), theta);
}

double mgf(const WishartParams& p, double t, const Mat& theta) {
    const auto cm = conditional_moments(p, t);
    const double bound = mgf_domain_bound(p, cm, theta);
    if (bound <= 1.0)
        throw OutOfDomain("mgf: I - 2 varsigma theta is not positive definite");
    return mgf(p, cm, CMat(theta.cast<Complex>())).real();
}

double mgf_domain_bound(const WishartParams& p, const ConditionalMoments& cm, const Mat& theta_dir) {
    (void)p;
    const Mat root = matrix_sqrt(cm.varsigma);
    const auto es = spectral_decomp(symmetrize(root * symmetrize(theta_dir) * root));
    const double lmax = es.eigenvalues(0);
    if (lmax <= 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / (2.0 * lmax);
}

double mgf_domain_bound(const WishartParams& p, double t, const Mat& theta_dir) {
    return mgf_domain_bound(p, conditional_moments(p, t), theta_dir);
}

MgfDerivative mgf_derivative_parts(const WishartParams& p, const ConditionalMoments& cm,
                                   const CMat& theta1, const CMat& theta2, Complex nu) {
    const CMat theta = theta1 + nu * theta2;
    const auto ker = make_kernel(p, cm, theta);
    const CMat k2 = 2.0 * cm.varsigma.cast<Complex>() * theta2;
    const CMat tht_half = 0.5 * cm.vartheta.transpose().cast<Complex>();

    const Complex g1 = (tht_half * k2 * ker.n_inv).trace();
    const Complex g2 = (tht_half * ker.k * ker.n_inv * k2 * ker.n_inv).trace();
    const Complex g3 = 0.5 * p.beta() * (k2 * ker.n_inv).trace();

    MgfDerivative out;
    out.phi = std::exp(inner_trace(cm, ker)) * ker.det.value;
    out.g_sum = g1 + g2 + g3;
    out.det_phase = ker.det.phase;
    return out;
}

Complex mgf_derivative(const WishartParams& p, double t, const CMat& theta1, const CMat& theta2,
                       Complex nu) {
    return mgf_derivative_parts(p, conditional_moments(p, t), theta1, theta2, nu).derivative();
}

TraceMeanCoeffs trace_mean_coeffs(const WishartParams& p, const Mat& u, double t) {
    TraceMeanCoeffs out;
    if (t == 0.0) {
        out.a0 = u;
        out.b0 = 0.0;
        return out;
    }
    const BigMat& a = p.drift_kron();
    out.a0 = Mat(unvec(BigMat(a.transpose() * t).exp() * vec(u.transpose())).transpose());
    out.b0 = vec(u.transpose()).dot(expm1_solve(a, t, vec(p.omega())));
    return out;
}

Mat mean_state(const WishartParams& p, double t) {
    if (t == 0.0) return p.v0();
    const Eigen::MatrixXd emt = mat_exp(p.m() * t);
    const Mat decay = symmetrize(emt * p.v0() * emt.transpose());
    return Mat(decay + unvec(expm1_solve(p.drift_kron(), t, vec(p.omega()))));
}

Mat stationary_mean(const WishartParams& p) {
    return symmetrize(lyapunov_limit(p.drift_kron(), p.omega()));
}

double quadratic_covariation(const WishartParams& p, const Mat& h1, const Mat& h2, const Mat& v) {
    const Mat s1 = h1 + h1.transpose();
    const Mat s2 = h2 + h2.transpose();
    return (s1 * v * s2 * p.sigma_sq()).trace();
}

} // namespace wannuity
