#include "wannuity/mortality.hpp"

#include <cmath>
#include <sstream>

#include "wannuity/simulate.hpp"

namespace wannuity {

std::string PositivityReport::summary() const {
    std::ostringstream os;
    os << (ok ? "positive" : "NOT proved positive");
    for (std::size_t i = 0; i < legs.size(); ++i) {
        const auto& l = legs[i];
        os << "; leg " << i << ": alpha/k margin " << l.alpha_margin << " ("
           << (l.alpha_condition_ok ? "ok" : "violated") << "), drift term "
           << (l.trace_condition == PositivityStatus::Proved
                   ? "proved"
                   : l.trace_condition == PositivityStatus::Sampled ? "sampled" : "failed");
    }
    return os.str();
}

MortalityModel MortalityModel::build(WishartParams wishart, std::vector<Mat> legs, double alpha,
                                     bool checked) {
    if (legs.empty()) throw InvalidParameter("MortalityModel: at least one annuitant leg required");
    const int n = wishart.n();
    if (static_cast<int>(legs.size()) > n)
        throw InvalidParameter("MortalityModel: needs state dimension n >= number of legs");
    Mat u0 = Mat::Zero(n, n);
    for (auto& u : legs) {
        if (u.rows() != n || u.cols() != n)
            throw InvalidParameter("MortalityModel: leg matrix dimension mismatch");
        if (!is_psd(u, 1e-10))
            throw NotPositiveDefinite("MortalityModel: every leg matrix must be PSD");
        u = symmetrize(u);
        u0 += u;
    }
    if (checked && alpha <= 0.0)
        throw InvalidParameter("MortalityModel: alpha must be positive");

    MortalityModel mdl;
    mdl.wishart_ = std::move(wishart);
    mdl.legs_ = std::move(legs);
    mdl.alpha_ = alpha;
    mdl.u0_ = u0;
    mdl.checked_ = checked;
    mdl.positivity_ = positivity_check(mdl);
    return mdl;
}

MortalityModel MortalityModel::create(WishartParams wishart, std::vector<Mat> legs, double alpha) {
    return build(std::move(wishart), std::move(legs), alpha, true);
}

MortalityModel MortalityModel::create_unchecked(WishartParams wishart, std::vector<Mat> legs,
                                                double alpha) {
    return build(std::move(wishart), std::move(legs), alpha, false);
}

IntensityLegCoeffs MortalityModel::leg_coeffs(int i) const {
    const Mat& u = legs_.at(i);
    IntensityLegCoeffs out;
    out.c = alpha_ / num_legs() - (u * wishart_.omega()).trace();
    out.h = Mat(alpha_ * u - 2.0 * u * wishart_.m());
    return out;
}

double state_price_density(const MortalityModel& mdl, double t, const Mat& v) {
    return std::exp(-mdl.alpha() * t) * (1.0 + (mdl.u0() * v).trace());
}

double intensity(const MortalityModel& mdl, int leg, const Mat& v) {
    const auto lc = mdl.leg_coeffs(leg);
    return (lc.c + (lc.h * v).trace()) / (1.0 + (mdl.u0() * v).trace());
}

PositivityReport positivity_check(const MortalityModel& mdl) {
    PositivityReport report;
    const auto& p = mdl.wishart();
    report.legs.resize(mdl.num_legs());
    bool need_sampling = false;
    for (int i = 0; i < mdl.num_legs(); ++i) {
        auto& leg = report.legs[i];
        const double tr_uo = (mdl.leg(i) * p.omega()).trace();
        leg.alpha_margin = mdl.alpha() / mdl.num_legs() - tr_uo;
        leg.alpha_condition_ok = leg.alpha_margin > 0.0;
        // tr[u m v] < 0 for all PSD v iff the symmetric part of -u m is PSD
        const Mat um = Mat(mdl.leg(i) * p.m());
        if (is_psd(Mat(-(um + um.transpose())), 1e-12))
            leg.trace_condition = PositivityStatus::Proved;
        else
            need_sampling = true;
    }
    if (need_sampling) {
        // short trajectories; the report is explicit that this only samples
        McConfig cfg;
        cfg.paths = 64;
        cfg.dt = 1.0 / 100.0;
        cfg.horizon = 10.0;
        cfg.seed = 0xC0FFEE;
        cfg.threads = 1;
        std::vector<bool> leg_ok(mdl.num_legs(), true);
        simulate_path_functional(p, cfg, [&](const std::vector<Mat>& path, double) {
            for (const auto& v : path)
                for (int i = 0; i < mdl.num_legs(); ++i)
                    if (report.legs[i].trace_condition != PositivityStatus::Proved) {
                        const auto lc = mdl.leg_coeffs(i);
                        if (lc.c + (lc.h * v).trace() <= 0.0) leg_ok[i] = false;
                    }
            return 0.0;
        });
        for (int i = 0; i < mdl.num_legs(); ++i)
            if (report.legs[i].trace_condition != PositivityStatus::Proved)
                report.legs[i].trace_condition =
                    leg_ok[i] ? PositivityStatus::Sampled : PositivityStatus::Failed;
    }
    report.ok = true;
    for (const auto& l : report.legs)
        report.ok = report.ok && l.alpha_condition_ok && l.trace_condition != PositivityStatus::Failed;
    return report;
}

namespace {

struct InversionSetup {
    ConditionalMoments cm;
    double c;
    Mat h_sym;
};

InversionSetup inversion_setup(const MortalityModel& mdl, int leg, double t, double T,
                               const Mat& v_t) {
    if (T <= t) throw InvalidParameter("intensity inversion requires T > t");
    const auto lc = mdl.leg_coeffs(leg);
    return {conditional_moments(mdl.wishart(), T - t, v_t), lc.c, symmetrize(lc.h)};
}

} // namespace

double intensity_cdf(const MortalityModel& mdl, int leg, double t, double T, double z,
                     const Mat& v_t, const QuadratureConfig& quad, BranchMonitor* monitor) {
    const auto setup = inversion_setup(mdl, leg, t, T, v_t);
    const auto& p = mdl.wishart();
    const Mat dir = Mat(setup.h_sym - z * mdl.u0());
    const auto integrand = [&](double s) -> Complex {
        const CMat theta = Complex(0.0, s) * dir.cast<Complex>();
        const auto pt = mgf_point(p, setup.cm, theta);
        if (monitor) monitor->record(s, pt.det_phase);
        return std::exp(Complex(0.0, s * (setup.c - z))) * pt.value / s;
    };
    const Complex integral = integrate_semi_infinite(integrand, quad);
    return 0.5 - integral.imag() / M_PI;
}

double intensity_pdf(const MortalityModel& mdl, int leg, double t, double T, double z,
                     const Mat& v_t, const QuadratureConfig& quad, BranchMonitor* monitor) {
    const auto setup = inversion_setup(mdl, leg, t, T, v_t);
    const auto& p = mdl.wishart();
    const CMat h_c = setup.h_sym.cast<Complex>();
    const CMat u0_c = mdl.u0().cast<Complex>();
    const auto integrand = [&](double s) -> Complex {
        const Complex is(0.0, s);
        const auto parts = mgf_derivative_parts(p, setup.cm, CMat(is * h_c), CMat(-is * u0_c), z);
        if (monitor) monitor->record(s, parts.det_phase);
        return (-is + parts.g_sum) * std::exp(Complex(0.0, s * (setup.c - z))) * parts.phi / s;
    };
    const Complex integral = integrate_semi_infinite(integrand, quad);
    return -integral.imag() / M_PI;
}

IntensityMoments intensity_moments(const MortalityModel& mdl, int leg, double t, double T,
                                   const Mat& v_t, const QuadratureConfig& quad) {
    // grow the support until the tail mass is negligible
    double z_max = 0.1;
    for (int it = 0; it < 10; ++it) {
        if (1.0 - intensity_cdf(mdl, leg, t, T, z_max, v_t, quad) < 1e-8) break;
        z_max *= 2.0;
        if (it == 9) throw NoConvergence("intensity_moments: support truncation did not settle");
    }
    const GaussLegendre rule(quad.panel_order);
    const int panels = 12;
    const double width = z_max / panels;
    double mass = 0.0, m1 = 0.0, m2 = 0.0;
    for (int k = 0; k < panels; ++k) {
        const double lo = k * width;
        const double mid = lo + 0.5 * width, half = 0.5 * width;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double z = mid + half * rule.nodes[q];
            const double f = intensity_pdf(mdl, leg, t, T, z, v_t, quad);
            const double w = half * rule.weights[q];
            mass += w * f;
            m1 += w * z * f;
            m2 += w * z * z * f;
        }
    }
    IntensityMoments out;
    out.mass = mass;
    out.mean = m1;
    out.variance = m2 - m1 * m1;
    out.z_max = z_max;
    return out;
}

double normalized_intensity_correlation(const MortalityModel& mdl, const Mat& v) {
    if (mdl.num_legs() != 2)
        throw InvalidParameter("normalized_intensity_correlation: requires exactly two legs");
    const auto& p = mdl.wishart();
    const Mat h1 = mdl.leg_coeffs(0).h;
    const Mat h2 = mdl.leg_coeffs(1).h;
    const double cov = quadratic_covariation(p, h1, h2, v);
    const double var1 = quadratic_covariation(p, h1, h1, v);
    const double var2 = quadratic_covariation(p, h2, h2, v);
    if (var1 <= 0.0 || var2 <= 0.0)
        throw DegenerateVariance("normalized_intensity_correlation: zero leg variance");
    return cov / std::sqrt(var1 * var2);
}

MortalityModel independence_transform(const MortalityModel& mdl) {
    const auto& p = mdl.wishart();
    if (p.n() != 2) throw InvalidParameter("independence_transform: defined for n = 2");
    const Mat& s = p.sigma();
    Mat ind = Mat::Zero(2, 2);
    ind(0, 0) = std::sqrt(s(0, 0) * s(0, 0) + s(0, 1) * s(0, 1));
    ind(1, 1) = std::sqrt(s(1, 1) * s(1, 1) + s(0, 1) * s(0, 1));
    auto params = WishartParams::create(p.beta(), ind, p.m(), p.v0());
    std::vector<Mat> legs;
    legs.reserve(mdl.num_legs());
    for (int i = 0; i < mdl.num_legs(); ++i) legs.push_back(mdl.leg(i));
    return mdl.checked() ? MortalityModel::create(std::move(params), std::move(legs), mdl.alpha())
                         : MortalityModel::create_unchecked(std::move(params), std::move(legs),
                                                            mdl.alpha());
}

} // namespace wannuity
