#pragma once

#include <Eigen/Dense>

#include <complex>

#include "wannuity/errors.hpp"

namespace wannuity {

// State matrices are small (n <= 16); keep them on the stack.
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 16, 16>;
using CMat = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, 0, 16, 16>;
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 16, 1>;
// n^2 x n^2 objects (Kronecker domain) go on the heap.
using BigMat = Eigen::MatrixXd;
using BigVec = Eigen::VectorXd;

using Complex = std::complex<double>;

// Column-stacking vec operator and its inverse.
BigVec vec(const Eigen::Ref<const Eigen::MatrixXd>& m);
Mat unvec(const Eigen::Ref<const Eigen::VectorXd>& v);

Eigen::MatrixXd kron(const Eigen::Ref<const Eigen::MatrixXd>& a,
                     const Eigen::Ref<const Eigen::MatrixXd>& b);

bool is_symmetric(const Eigen::Ref<const Eigen::MatrixXd>& m, double tol = 1e-12);
Mat symmetrize(const Eigen::Ref<const Eigen::MatrixXd>& m);
CMat symmetrize(const CMat& m);

// Matrix exponential: eigendecomposition for symmetric input, Pade
// scaling-and-squaring otherwise.
Eigen::MatrixXd mat_exp(const Eigen::Ref<const Eigen::MatrixXd>& m);

struct SpectralDecomposition {
    Vec eigenvalues;  // descending
    Mat eigenvectors; // orthonormal columns, matching order
};

SpectralDecomposition spectral_decomp(const Eigen::Ref<const Eigen::MatrixXd>& s);

// Symmetric PSD/PD checks through a spectral factorization.
bool is_psd(const Eigen::Ref<const Eigen::MatrixXd>& s, double tol = 1e-12);
bool is_spd(const Eigen::Ref<const Eigen::MatrixXd>& s, double tol = 0.0);

// Principal square root; throws NotPositiveDefinite.
Mat matrix_sqrt(const Eigen::Ref<const Eigen::MatrixXd>& s);

// det(M)^p through per-eigenvalue principal logarithms. `phase` is the
// summed argument of the eigenvalues, exposed so inversion loops can watch
// for branch discontinuities along a quadrature path.
struct LogDetPower {
    Complex value;
    double phase;
};

LogDetPower complex_log_det_power(const CMat& m, double p);

// x = A^{-1}(e^{At} - I) b evaluated through a block-augmented exponential,
// so no explicit inverse of A is formed.
BigVec expm1_solve(const BigMat& a, double t, const BigVec& b);

// Stationary solution of A vec(x) + vec(w) = 0 for Hurwitz A.
Mat lyapunov_limit(const BigMat& a, const Eigen::Ref<const Eigen::MatrixXd>& w);

} // namespace wannuity
