#include "wannuity/validation.hpp"

#include <cmath>
#include <random>

#include "wannuity/approximations.hpp"

namespace wannuity {

bool ValidationReport::all_passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

namespace {

void add(ValidationReport& r, const std::string& name, double measured, double tol,
         const std::string& detail = "") {
    r.checks.push_back({name, measured <= tol, measured, tol, detail});
}

// batch standard error of a statistic over per-path values
template <typename Stat>
double batch_se(const std::vector<double>& vals, int batches, const Stat& stat) {
    const std::size_t per = vals.size() / batches;
    std::vector<double> est;
    est.reserve(batches);
    for (int b = 0; b < batches; ++b) {
        const auto lo = vals.begin() + b * per;
        est.push_back(stat(std::vector<double>(lo, lo + per)));
    }
    double mean = 0.0;
    for (double e : est) mean += e;
    mean /= batches;
    double var = 0.0;
    for (double e : est) var += (e - mean) * (e - mean);
    var /= (batches - 1);
    return std::sqrt(var / batches);
}

double sample_mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_k2(const std::vector<double>& v) {
    const double m = sample_mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size());
}

double sample_k3(const std::vector<double>& v) {
    const double m = sample_mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m) * (x - m);
    return s / static_cast<double>(v.size());
}

} // namespace

ValidationReport run_validation_suite(const MortalityModel& mdl, const DiscountCurve& curve,
                                      const GaoContract& contract, const QuadratureConfig& quad,
                                      const ValidationSettings& settings) {
    ValidationReport report;
    const auto& p = mdl.wishart();
    const double T = contract.schedule.T;
    const auto cm = conditional_moments(p, T);
    const auto coeffs = annuity_coeffs(mdl, curve, contract.schedule, contract.g);

    // --- one shared terminal simulation ---
    McConfig mc;
    mc.paths = settings.mc_paths;
    mc.dt = settings.mc_dt;
    mc.seed = settings.seed;
    mc.horizon = T;
    const auto sim = simulate_terminal(p, mc);

    // 1. transform vs Monte Carlo at five directions
    {
        const Mat u0 = mdl.u0();
        std::vector<Mat> thetas;
        thetas.push_back(Mat(0.1 * Mat::Identity(p.n(), p.n())));
        thetas.push_back(Mat(-0.5 * Mat::Identity(p.n(), p.n())));
        thetas.push_back(Mat(0.3 * mdl.leg(0)));
        thetas.push_back(Mat(-0.2 * u0));
        Mat mixed = Mat::Zero(p.n(), p.n());
        mixed(0, 0) = 0.15;
        mixed(0, 1) = mixed(1, 0) = -0.1;
        thetas.push_back(mixed);
        for (std::size_t k = 0; k < thetas.size(); ++k) {
            std::vector<double> vals;
            vals.reserve(sim.terminal.size());
            for (const auto& v : sim.terminal)
                vals.push_back(std::exp((thetas[k] * v).trace()));
            const auto est = mc_mean(vals);
            const double exact = mgf(p, cm, CMat(thetas[k].cast<Complex>())).real();
            add(report, "mgf_vs_mc_" + std::to_string(k),
                std::abs(est.value - exact), 3.0 * est.std_error,
                "exact " + std::to_string(exact) + " mc " + std::to_string(est.value));
        }
    }

    // 2. transform derivative vs central finite differences at 20 points
    {
        std::mt19937_64 rng(settings.seed);
        std::uniform_real_distribution<double> uni(-0.4, 0.4);
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            Mat t1(p.n(), p.n()), t2(p.n(), p.n());
            for (int i = 0; i < p.n(); ++i)
                for (int j = i; j < p.n(); ++j) {
                    t1(i, j) = t1(j, i) = uni(rng);
                    t2(i, j) = t2(j, i) = uni(rng);
                }
            const Complex nu(uni(rng), 0.0);
            const CMat th1 = CMat(Complex(0.0, 0.3) * t1.cast<Complex>());
            const CMat th2 = CMat(Complex(0.0, -0.3) * t2.cast<Complex>());
            const double h = 1e-6;
            const Complex up = mgf(p, cm, CMat(th1 + (nu + h) * th2));
            const Complex dn = mgf(p, cm, CMat(th1 + (nu - h) * th2));
            const Complex fd = (up - dn) / (2.0 * h);
            const Complex an = mgf_derivative_parts(p, cm, th1, th2, nu).derivative();
            worst = std::max(worst, std::abs(fd - an) / std::max(1e-300, std::abs(an)));
        }
        add(report, "mgf_derivative_vs_fd", worst, 1e-5);
    }

    // 3. cumulants vs log-transform finite differences and MC sample cumulants
    {
        const auto ks = cumulants(p, cm, coeffs.b4, coeffs.a4, 3);
        const auto logmgf = [&](double nu) {
            return nu * coeffs.b4 +
                   std::log(mgf(p, cm, CMat(Complex(nu, 0.0) * coeffs.a4.cast<Complex>())).real());
        };
        const double h = 0.5;
        const double k1_fd = (logmgf(h) - logmgf(-h)) / (2.0 * h);
        const double k2_fd = (logmgf(h) - 2.0 * logmgf(0.0) + logmgf(-h)) / (h * h);
        const double k3_fd =
            (logmgf(2 * h) - 2.0 * logmgf(h) + 2.0 * logmgf(-h) - logmgf(-2 * h)) / (2.0 * h * h * h);
        add(report, "kappa1_vs_fd", std::abs(k1_fd - ks.k(1)) / std::abs(ks.k(1)), 1e-4);
        add(report, "kappa2_vs_fd", std::abs(k2_fd - ks.k(2)) / std::abs(ks.k(2)), 1e-4);
        add(report, "kappa3_vs_fd", std::abs(k3_fd - ks.k(3)) / std::abs(ks.k(3)), 1e-4);

        std::vector<double> ys;
        ys.reserve(sim.terminal.size());
        for (const auto& v : sim.terminal)
            ys.push_back(coeffs.b4 + (coeffs.a4 * v).trace());
        const auto est = mc_mean(ys);
        add(report, "kappa1_vs_mc", std::abs(est.value - ks.k(1)), 3.0 * est.std_error);
        const int batches = 50;
        add(report, "kappa2_vs_mc", std::abs(sample_k2(ys) - ks.k(2)),
            3.0 * batch_se(ys, batches, sample_k2));
        add(report, "kappa3_vs_mc", std::abs(sample_k3(ys) - ks.k(3)),
            3.0 * batch_se(ys, batches, sample_k3));
    }

    // 4. distribution sanity + determinant-phase monitor
    double worst_jump = 0.0;
    {
        BranchMonitor mon;
        const double lim0 = intensity_cdf(mdl, 0, 0.0, T, -1.0, p.v0(), quad, &mon);
        const double lim1 = intensity_cdf(mdl, 0, 0.0, T, 1.0, p.v0(), quad, &mon);
        add(report, "intensity_cdf_limits", std::max(std::abs(lim0), std::abs(1.0 - lim1)), 1e-6);
        double prev = -1.0;
        double worst_step = 0.0;
        for (int i = 0; i <= 24; ++i) {
            const double z = 0.004 * i;
            const double c = intensity_cdf(mdl, 0, 0.0, T, z, p.v0(), quad, &mon);
            if (i > 0) worst_step = std::max(worst_step, prev - c);
            prev = c;
        }
        add(report, "intensity_cdf_monotone", worst_step, 1e-9);
        const auto mom = intensity_moments(mdl, 0, 0.0, T, p.v0(), quad);
        add(report, "intensity_density_mass", std::abs(mom.mass - 1.0), 1e-4);
        worst_jump = std::max(worst_jump, mon.check());
    }
    {
        BranchMonitor mon;
        const double span = static_cast<double>(contract.schedule.payment_dates.size()) + 1.0;
        const double lim0 = annuity_cdf(mdl, curve, 0.0, contract.schedule, 0.0, p.v0(), quad, &mon);
        const double lim1 = annuity_cdf(mdl, curve, 0.0, contract.schedule, span, p.v0(), quad, &mon);
        add(report, "annuity_cdf_limits", std::max(std::abs(lim0), std::abs(1.0 - lim1)), 1e-6);
        // probe the bulk of the distribution around its mean
        const auto ks = cumulants(p, cm, coeffs.b3, coeffs.a3, 2);
        const double mid = ks.k(1) / (1.0 + (mdl.u0() * mean_state(p, T)).trace());
        const double sd = std::sqrt(ks.k(2));
        double prev = -1.0;
        double worst_step = 0.0;
        for (int i = 0; i <= 24; ++i) {
            const double z = mid - 6.0 * sd + 0.5 * sd * i;
            const double c = annuity_cdf(mdl, curve, 0.0, contract.schedule, z, p.v0(), quad, &mon);
            if (i > 0) worst_step = std::max(worst_step, prev - c);
            prev = c;
        }
        add(report, "annuity_cdf_monotone", worst_step, 1e-9);
        // density integrates to one over the bracketed support
        const GaussLegendre rule(quad.panel_order);
        double mass = 0.0;
        const double lo = mid - 8.0 * sd, hi = mid + 8.0 * sd;
        const int panels = 8;
        for (int k = 0; k < panels; ++k) {
            const double a = lo + (hi - lo) * k / panels;
            const double b = lo + (hi - lo) * (k + 1) / panels;
            for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
                const double z = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[q];
                mass += 0.5 * (b - a) * rule.weights[q] *
                        annuity_pdf(mdl, curve, 0.0, contract.schedule, z, p.v0(), quad, &mon);
            }
        }
        add(report, "annuity_density_mass", std::abs(mass - 1.0), 1e-4);
        worst_jump = std::max(worst_jump, mon.check());
    }

    // 5. put-call parity
    {
        BranchMonitor mon;
        const auto ks = cumulants(p, cm, coeffs.b4, coeffs.a4, 1);
        const CMat a4c = coeffs.a4.cast<Complex>();
        const auto cf_pos = [&](Complex zz) {
            const auto pt = mgf_point(p, cm, CMat(Complex(0.0, 1.0) * zz * a4c));
            mon.record(zz.real(), pt.det_phase);
            return std::exp(Complex(0.0, 1.0) * zz * coeffs.b4) * pt.value;
        };
        const auto cf_neg = [&](Complex zz) {
            const auto pt = mgf_point(p, cm, CMat(Complex(0.0, -1.0) * zz * a4c));
            return std::exp(Complex(0.0, -1.0) * zz * coeffs.b4) * pt.value;
        };
        const double e_pos = damped_positive_expectation(cf_pos, contract.z_i, quad);
        const double e_neg = damped_positive_expectation(cf_neg, contract.z_i, quad);
        add(report, "put_call_parity", std::abs(e_pos - e_neg - ks.k(1)) / std::abs(ks.k(1)), 1e-6);
        worst_jump = std::max(worst_jump, mon.check());
    }

    // 6. damping invariance
    {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (double zi : {-0.01, -0.025, -0.05}) {
            GaoContract c = contract;
            c.z_i = zi;
            const double price = gao_price_cf(mdl, curve, 0.0, c, p.v0(), quad);
            lo = std::min(lo, price);
            hi = std::max(hi, price);
        }
        add(report, "gao_damping_invariance", (hi - lo) / std::max(1e-300, hi), 1e-6);
    }

    report.checks.push_back({"determinant_phase_max_jump", worst_jump < 0.25 * M_PI, worst_jump,
                             0.25 * M_PI, "max |phase step| across inversion integrals"});
    return report;
}

} // namespace wannuity
