#include "wannuity/approximations.hpp"

#include <cmath>

#include "wannuity/pricing.hpp"
#include "wannuity/special.hpp"

namespace wannuity {

namespace {

double factorial(int n) {
    double out = 1.0;
    for (int k = 2; k <= n; ++k) out *= k;
    return out;
}

double binom(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

} // namespace

CumulantSet cumulants(const WishartParams& p, const ConditionalMoments& cm, double b4,
                      const Mat& a4_sym, int J) {
    if (J < 1) throw InvalidParameter("cumulants: J must be >= 1");
    CumulantSet out;
    out.b4 = b4;
    out.horizon = cm.t;
    out.kappas.resize(J);
    const Mat base = Mat(cm.varsigma * a4_sym);
    Mat power = Mat::Identity(base.rows(), base.cols());
    for (int j = 1; j <= J; ++j) {
        power = Mat(power * base);
        double k = p.beta() * factorial(j - 1) * std::pow(2.0, j - 1) * power.trace() +
                   factorial(j) * std::pow(2.0, j - 1) * (cm.vartheta.transpose() * power).trace();
        if (j == 1) k += b4;
        out.kappas[j - 1] = k;
    }
    return out;
}

CumulantSet cumulants(const WishartParams& p, double b4, const Mat& a4_sym, double T, int J) {
    return cumulants(p, conditional_moments(p, T), b4, a4_sym, J);
}

double bell_incomplete(int n, int k, const std::vector<double>& x) {
    if (n == 0 && k == 0) return 1.0;
    if (n == 0 || k == 0) return 0.0;
    double sum = 0.0;
    for (int i = 1; i <= n - k + 1; ++i) {
        if (i > static_cast<int>(x.size())) break;
        sum += binom(n - 1, i - 1) * x[i - 1] * bell_incomplete(n - i, k - 1, x);
    }
    return sum;
}

std::vector<double> moments_from_cumulants(const std::vector<double>& kappas) {
    const int J = static_cast<int>(kappas.size());
    std::vector<double> mus(J);
    for (int j = 1; j <= J; ++j) {
        double mu = 0.0;
        for (int k = 1; k <= j; ++k) mu += bell_incomplete(j, k, kappas);
        mus[j - 1] = mu;
    }
    return mus;
}

std::vector<double> cumulants_from_moments(const std::vector<double>& moments) {
    // invert mu_n = sum_{k=0}^{n-1} C(n-1,k) kappa_{k+1} mu_{n-1-k}
    const int J = static_cast<int>(moments.size());
    std::vector<double> kappas(J);
    auto mu = [&](int i) { return i == 0 ? 1.0 : moments[i - 1]; };
    for (int n = 1; n <= J; ++n) {
        double k = mu(n);
        for (int j = 0; j < n - 1; ++j) k -= binom(n - 1, j) * kappas[j] * mu(n - 1 - j);
        kappas[n - 1] = k;
    }
    return kappas;
}

double gaussian_expectation_positive(double k1, double k2, double k3) {
    if (k2 <= 0.0) throw DegenerateVariance("gaussian_expectation_positive: kappa_2 must be positive");
    const double d = k1 / std::sqrt(k2);
    const double xi0 = norm_cdf(d);
    const double xi1 = std::sqrt(k2) * norm_pdf(d);
    const double xi2 = k2 * norm_cdf(d) - xi1 * k1;
    const double xi3 = xi1 * (k1 * k1 + 2.0 * k2);
    const double xi4 = 3.0 * k2 * k2 * norm_cdf(d) - xi1 * (k1 * k1 * k1 + 3.0 * k2 * k1);
    const double eta0 = 1.0;
    const double eta1 = -3.0 * k3 / (6.0 * k2 * k2);
    const double eta2 = 0.0;
    const double eta3 = k3 / (6.0 * k2 * k2 * k2);
    const double xis[5] = {xi0, xi1, xi2, xi3, xi4};
    const double etas[4] = {eta0, eta1, eta2, eta3};
    double out = 0.0;
    for (int j = 0; j < 4; ++j) out += etas[j] * xis[j + 1] + k1 * etas[j] * xis[j];
    return out;
}

Complex SpectralSurrogate::cf(Complex z) const {
    Complex out = std::exp(Complex(0.0, 1.0) * z * b4);
    for (const auto& c : components)
        out *= noncentral_chisq_cf(z * c.lambda * c.scale, dof, c.noncentrality);
    return out;
}

SpectralSurrogate spectral_surrogate(const WishartParams& p, const ConditionalMoments& cm,
                                     double b4, const Mat& a4_sym) {
    const auto spec = spectral_decomp(a4_sym);
    SpectralSurrogate out;
    out.b4 = b4;
    out.dof = p.beta();
    out.components.resize(p.n());
    for (int i = 0; i < p.n(); ++i) {
        const Vec gamma = spec.eigenvectors.col(i);
        auto& c = out.components[i];
        c.lambda = spec.eigenvalues(i);
        c.scale = gamma.dot(cm.varsigma * gamma);
        const double nc = gamma.dot(cm.vartheta.transpose() * gamma);
        c.clamped = nc < 0.0;
        c.noncentrality = std::max(nc, 0.0);
        out.any_clamped = out.any_clamped || c.clamped;
    }
    return out;
}

double spectral_price(const SpectralSurrogate& s, const QuadratureConfig& quad, double z_i) {
    bool all_zero = true;
    for (const auto& c : s.components) all_zero = all_zero && c.lambda == 0.0;
    if (all_zero) return std::max(s.b4, 0.0);
    // damping must keep every component transform finite: -z_i lambda_i scale_i < 1/2
    for (const auto& c : s.components)
        if (-z_i * c.lambda * c.scale >= 0.5)
            throw DampingOutOfDomain("spectral_price: damping outside the surrogate domain");
    return damped_positive_expectation([&](Complex z) { return s.cf(z); }, z_i, quad);
}

SingleEigPrice single_eig_price(const SpectralSurrogate& s, const QuadratureConfig& quad) {
    if (s.components.empty()) throw InvalidParameter("single_eig_price: empty surrogate");
    std::size_t dom = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < s.components.size(); ++i)
        if (std::abs(s.components[i].lambda) > best) {
            best = std::abs(s.components[i].lambda);
            dom = i;
        }
    double other = 0.0;
    for (std::size_t i = 0; i < s.components.size(); ++i)
        if (i != dom) other = std::max(other, std::abs(s.components[i].lambda));

    SingleEigPrice out;
    out.dominance_ratio = best > 0.0 ? other / best : 1.0;
    out.dominant = out.dominance_ratio <= 0.5;

    const auto& c = s.components[dom];
    const double slope = c.lambda * c.scale; // Y ~ b4 + slope * X
    if (slope == 0.0) {
        out.value = std::max(s.b4, 0.0);
        return out;
    }
    const double x0 = -s.b4 / slope;
    const auto payoff_density = [&](double x) {
        return (s.b4 + slope * x) * noncentral_chisq_pdf(x, s.dof, c.noncentrality);
    };
    if (slope > 0.0) {
        if (x0 <= 0.0) {
            out.value = s.b4 + slope * (s.dof + c.noncentrality); // payoff a.s. positive
            return out;
        }
        const double hi = noncentral_chisq_quantile(1.0 - 1e-12, s.dof, c.noncentrality);
        out.value = x0 >= hi ? 0.0 : integrate_finite(payoff_density, x0, hi, quad);
    } else {
        if (x0 <= 0.0) {
            out.value = 0.0; // b4 <= 0 and negative slope: never in the money
            return out;
        }
        out.value = integrate_finite(payoff_density, 0.0, x0, quad);
    }
    return out;
}

EigSign classify_eig_sign(const Mat& a4_sym, double tol) {
    const auto spec = spectral_decomp(a4_sym);
    const double scale = std::max(1.0, spec.eigenvalues.cwiseAbs().maxCoeff());
    const bool all_pos = (spec.eigenvalues.array() > tol * scale).all();
    const bool all_neg = (spec.eigenvalues.array() < -tol * scale).all();
    if (all_pos) return EigSign::AllPositive;
    if (all_neg) return EigSign::AllNegative;
    throw MixedEigenvalues("a4 carries both signs; gamma expansion unavailable");
}

double gamma_price(const CumulantSet& ks, EigSign eig_sign, double b4) {
    if (ks.kappas.size() < 3) throw InvalidParameter("gamma_price: needs three cumulants");
    if (ks.k(2) <= 0.0) throw DegenerateVariance("gamma_price: kappa_2 must be positive");
    const auto mus_tail = moments_from_cumulants(ks.kappas);
    std::vector<double> mu(4);
    mu[0] = 1.0;
    for (int i = 1; i <= 3; ++i) mu[i] = mus_tail[i - 1];

    const double k = b4;
    const bool negative = eig_sign == EigSign::AllNegative;
    // degenerate moneyness: the payoff sign is deterministic
    if (negative && b4 <= 0.0) return 0.0;       // Y < b4 <= 0 a.s.
    if (!negative && b4 >= 0.0) return ks.k(1);  // Y > b4 >= 0 a.s.

    // moments of the shifted positive variable Z (= Y - k, or k - Y when the
    // eigenvalues are negative)
    std::vector<double> muZ(4);
    for (int i = 0; i <= 3; ++i) {
        double s = 0.0;
        for (int j = 0; j <= i; ++j) {
            const double sign = (j % 2 == 0) ? 1.0 : -1.0;
            if (!negative)
                s += binom(i, j) * sign * mu[i - j] * std::pow(k, j);
            else
                s += binom(i, j) * sign * mu[j] * std::pow(k, i - j);
        }
        muZ[i] = s;
    }
    const double var = muZ[2] - muZ[1] * muZ[1];
    if (var <= 0.0 || muZ[1] <= 0.0)
        throw DegenerateVariance("gamma_price: shifted variable has no usable first two moments");
    const double ab = muZ[1] * muZ[1] / var - 1.0;
    const double bb = muZ[1] / var;
    const double c3 = (ab + 1.0) *
                      ((ab + 2.0) * (ab + 3.0) - (ab + 1.0) * (ab + 1.0) * muZ[3] / std::pow(muZ[1], 3)) /
                      (std::sqrt(6.0) * std::sqrt((ab + 1.0) * (ab + 2.0) * (ab + 3.0)));

    // normalized basis polynomials H_j(z) = sum_i coeff[j][i] z^i
    const double n1 = std::sqrt(ab + 1.0);
    const double n2 = std::sqrt((ab + 1.0) * (ab + 2.0) / 2.0);
    const double n3 = std::sqrt((ab + 1.0) * (ab + 2.0) * (ab + 3.0) / 6.0);
    const std::vector<std::vector<double>> coeff = {
        {1.0},
        {(ab + 1.0) / n1, -1.0 / n1},
        {(ab + 1.0) * (ab + 2.0) / (2.0 * n2), -(ab + 2.0) / n2, 0.5 / n2},
        {(ab + 1.0) * (ab + 2.0) * (ab + 3.0) / (6.0 * n3), -(ab + 2.0) * (ab + 3.0) / (2.0 * n3),
         (ab + 3.0) / (2.0 * n3), -1.0 / (6.0 * n3)}};
    const double c[4] = {1.0, 0.0, 0.0, c3};

    // in the negative branch the roles mirror through k -> -k
    const double kf = negative ? -k : k;
    const double x = -bb * kf; // positive in both branches
    double total = 0.0;
    for (int j = 0; j <= 3; ++j) {
        if (c[j] == 0.0) continue;
        for (int i = 0; i <= j; ++i) {
            const double reg = negative ? regularized_gamma_lower(ab + i + 2.0, x)
                                        : regularized_gamma_upper(ab + i + 2.0, x);
            const double reg1 = negative ? regularized_gamma_lower(ab + i + 1.0, x)
                                         : regularized_gamma_upper(ab + i + 1.0, x);
            const double sign = negative ? -1.0 : 1.0;
            total += sign * c[j] * coeff[j][i] / bb * pochhammer(ab + 1.0, i + 1) * reg;
            total += sign * c[j] * coeff[j][i] * kf * pochhammer(ab + 1.0, i) * reg1;
        }
    }
    return total;
}

} // namespace wannuity
