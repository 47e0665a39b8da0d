#include "wannuity/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wannuity {

BigVec vec(const Eigen::Ref<const Eigen::MatrixXd>& m) {
    BigVec out(m.rows() * m.cols());
    Eigen::Index k = 0;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            out(k++) = m(i, j);
    return out;
}

Mat unvec(const Eigen::Ref<const Eigen::VectorXd>& v) {
    const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(double(v.size()))));
    if (n * n != v.size())
        throw InvalidParameter("unvec: length is not a perfect square");
    Mat out(n, n);
    Eigen::Index k = 0;
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i)
            out(i, j) = v(k++);
    return out;
}

Eigen::MatrixXd kron(const Eigen::Ref<const Eigen::MatrixXd>& a,
                     const Eigen::Ref<const Eigen::MatrixXd>& b) {
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

bool is_symmetric(const Eigen::Ref<const Eigen::MatrixXd>& m, double tol) {
    if (m.rows() != m.cols()) return false;
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    return (m - m.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

Mat symmetrize(const Eigen::Ref<const Eigen::MatrixXd>& m) {
    return 0.5 * (m + m.transpose());
}

CMat symmetrize(const CMat& m) { return 0.5 * (m + m.transpose()); }

Eigen::MatrixXd mat_exp(const Eigen::Ref<const Eigen::MatrixXd>& m) {
    if (is_symmetric(m)) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
        return es.eigenvectors() * es.eigenvalues().array().exp().matrix().asDiagonal() *
               es.eigenvectors().transpose();
    }
    return Eigen::MatrixXd(m).exp();
}

SpectralDecomposition spectral_decomp(const Eigen::Ref<const Eigen::MatrixXd>& s) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
    if (es.info() != Eigen::Success)
        throw SingularMatrix("spectral_decomp: eigensolver failed");
    const auto n = s.rows();
    SpectralDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) { // Eigen sorts ascending; flip
        out.eigenvalues(i) = es.eigenvalues()(n - 1 - i);
        out.eigenvectors.col(i) = es.eigenvectors().col(n - 1 - i);
    }
    return out;
}

bool is_psd(const Eigen::Ref<const Eigen::MatrixXd>& s, double tol) {
    if (!is_symmetric(s, 1e-10)) return false;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s, Eigen::EigenvaluesOnly);
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    return es.eigenvalues().minCoeff() >= -tol * scale;
}

bool is_spd(const Eigen::Ref<const Eigen::MatrixXd>& s, double tol) {
    if (!is_symmetric(s, 1e-10)) return false;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() > tol;
}

Mat matrix_sqrt(const Eigen::Ref<const Eigen::MatrixXd>& s) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw NotPositiveDefinite("matrix_sqrt: smallest eigenvalue <= 0");
    return Mat(es.eigenvectors() * es.eigenvalues().array().sqrt().matrix().asDiagonal() *
               es.eigenvectors().transpose());
}

namespace {

// Eigenvalues of a small complex matrix; closed form for n <= 2.
Eigen::VectorXcd complex_eigenvalues(const CMat& m) {
    const auto n = m.rows();
    if (n == 1) {
        Eigen::VectorXcd l(1);
        l(0) = m(0, 0);
        return l;
    }
    if (n == 2) {
        const Complex tr = m(0, 0) + m(1, 1);
        const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        const Complex disc = std::sqrt(tr * tr - 4.0 * det);
        Eigen::VectorXcd l(2);
        l(0) = 0.5 * (tr + disc);
        l(1) = 0.5 * (tr - disc);
        return l;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(Eigen::MatrixXcd(m), false);
    if (es.info() != Eigen::Success)
        throw SingularMatrix("complex eigensolver failed");
    return es.eigenvalues();
}

} // namespace

LogDetPower complex_log_det_power(const CMat& m, double p) {
    const auto lam = complex_eigenvalues(m);
    Complex logdet(0.0, 0.0);
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        if (std::abs(lam(i)) < 1e-300)
            throw SingularMatrix("complex_log_det_power: eigenvalue magnitude below tolerance");
        logdet += std::log(lam(i)); // principal branch per eigenvalue
    }
    return {std::exp(p * logdet), logdet.imag()};
}

BigVec expm1_solve(const BigMat& a, double t, const BigVec& b) {
    const auto n = a.rows();
    // exp([[A, b],[0, 0]] t) has A^{-1}(e^{At}-I) b in its last column.
    BigMat aug = BigMat::Zero(n + 1, n + 1);
    aug.topLeftCorner(n, n) = a * t;
    aug.topRightCorner(n, 1) = b * t;
    const BigMat e = aug.exp();
    return e.topRightCorner(n, 1);
}

Mat lyapunov_limit(const BigMat& a, const Eigen::Ref<const Eigen::MatrixXd>& w) {
    return unvec(a.partialPivLu().solve(-vec(w)));
}

} // namespace wannuity
