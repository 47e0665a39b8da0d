#include "wannuity/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace wannuity {

void QuadratureConfig::validate() const {
    if (abs_tol <= 0 || rel_tol <= 0)
        throw InvalidParameter("QuadratureConfig: tolerances must be positive");
    if (panel_order < 8)
        throw InvalidParameter("QuadratureConfig: panel_order must be >= 8");
    if (truncation_ratio <= 0 || truncation_ratio >= 1)
        throw InvalidParameter("QuadratureConfig: truncation_ratio must lie in (0,1)");
    if (max_panels < 4 || initial_width <= 0 || max_width < initial_width)
        throw InvalidParameter("QuadratureConfig: bad panel limits");
}

GaussLegendre::GaussLegendre(int order) {
    nodes.resize(order);
    weights.resize(order);
    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < order; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = order * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[order - 1 - i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[order - 1 - i] = weights[i];
    }
}

namespace {

const GaussLegendre& cached_rule(int order) {
    static std::map<int, GaussLegendre> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, GaussLegendre(order)).first;
    return it->second;
}

template <typename T, typename F>
void panel_estimates(const F& f, double lo, double hi, const GaussLegendre& full,
                     const GaussLegendre& half, T& fine, T& coarse) {
    const double mid = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    fine = T(0);
    for (std::size_t i = 0; i < full.nodes.size(); ++i)
        fine += T(full.weights[i]) * f(mid + h * full.nodes[i]);
    fine *= h;
    coarse = T(0);
    for (std::size_t i = 0; i < half.nodes.size(); ++i)
        coarse += T(half.weights[i]) * f(mid + h * half.nodes[i]);
    coarse *= h;
}

// Wynn epsilon table on the most recent partial sums; returns the highest
// even-column entry.
std::complex<double> wynn_epsilon(const std::vector<std::complex<double>>& sums) {
    std::vector<std::complex<double>> prev2(sums.size() + 1, 0.0); // eps_{-1}
    std::vector<std::complex<double>> prev1 = sums;                // eps_0
    std::complex<double> best = sums.back();
    for (std::size_t col = 1; prev1.size() > 1; ++col) {
        std::vector<std::complex<double>> cur(prev1.size() - 1);
        for (std::size_t i = 0; i + 1 < prev1.size(); ++i) {
            const auto d = prev1[i + 1] - prev1[i];
            if (std::abs(d) < 1e-300) return col % 2 == 0 ? prev1[i] : best;
            cur[i] = prev2[i + 1] + 1.0 / d;
        }
        if (col % 2 == 0 && !cur.empty()) best = cur.back();
        prev2 = std::move(prev1);
        prev1 = std::move(cur);
    }
    return best;
}

} // namespace

std::complex<double> integrate_semi_infinite(const ComplexIntegrand& f, const QuadratureConfig& cfg) {
    cfg.validate();
    const auto& full = cached_rule(cfg.panel_order);
    const auto& half = cached_rule(cfg.panel_order / 2);

    std::complex<double> total(0.0, 0.0);
    double x = 0.0;
    double w = cfg.initial_width;
    double peak = 0.0;
    double prev_mag = std::numeric_limits<double>::infinity();
    const double min_width = cfg.initial_width / 4096.0;
    bool width_locked = false;

    std::vector<std::complex<double>> tail_sums;
    std::complex<double> prev_eps(0.0, 0.0);
    bool have_prev_eps = false;

    for (int panel = 0; panel < cfg.max_panels; ++panel) {
        std::complex<double> fine, coarse;
        // shrink the panel until the embedded estimate agrees
        for (;;) {
            panel_estimates(f, x, x + w, full, half, fine, coarse);
            const double err = std::abs(fine - coarse);
            const double scale = std::max(cfg.abs_tol, cfg.rel_tol * std::max(std::abs(total), std::abs(fine)));
            if (err <= scale || w <= min_width) break;
            w *= 0.5;
        }
        total += fine;
        x += w;
        const double mag = std::abs(fine);
        peak = std::max(peak, mag);

        if (mag < cfg.truncation_ratio * peak && mag < cfg.abs_tol && prev_mag < cfg.abs_tol)
            return total;
        prev_mag = mag;

        if (!width_locked) {
            // grow while the integrand varies slowly
            const double err = std::abs(fine - coarse);
            if (err < 0.1 * std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total)))
                w = std::min(w * 2.0, cfg.max_width);
            // stalled decay: lock the width and extrapolate the tail
            if (panel >= 32 && mag > 1e-3 * peak) {
                width_locked = true;
                tail_sums.reserve(64);
            }
        } else {
            tail_sums.push_back(total);
            if (tail_sums.size() >= 8 && tail_sums.size() % 4 == 0) {
                const std::size_t keep = std::min<std::size_t>(tail_sums.size(), 32);
                std::vector<std::complex<double>> window(tail_sums.end() - keep, tail_sums.end());
                const auto eps = wynn_epsilon(window);
                if (have_prev_eps &&
                    std::abs(eps - prev_eps) < std::max(cfg.abs_tol, cfg.rel_tol * std::abs(eps)))
                    return eps;
                prev_eps = eps;
                have_prev_eps = true;
            }
        }
    }
    if (have_prev_eps) {
        // accept the extrapolated tail if it had nearly settled
        const auto eps = wynn_epsilon(tail_sums);
        if (std::abs(eps - prev_eps) < 100.0 * std::max(cfg.abs_tol, cfg.rel_tol * std::abs(eps)))
            return eps;
    }
    throw NoConvergence("integrate_semi_infinite: max_panels exhausted");
}

namespace {

double integrate_rec(const RealIntegrand& f, double a, double b, const GaussLegendre& full,
                     const GaussLegendre& half, double tol, int depth) {
    double fine, coarse;
    panel_estimates(f, a, b, full, half, fine, coarse);
    if (std::abs(fine - coarse) <= tol || depth >= 48)
        return fine;
    const double mid = 0.5 * (a + b);
    return integrate_rec(f, a, mid, full, half, 0.5 * tol, depth + 1) +
           integrate_rec(f, mid, b, full, half, 0.5 * tol, depth + 1);
}

} // namespace

double integrate_finite(const RealIntegrand& f, double a, double b, const QuadratureConfig& cfg) {
    cfg.validate();
    const auto& full = cached_rule(cfg.panel_order);
    const auto& half = cached_rule(cfg.panel_order / 2);
    return integrate_rec(f, a, b, full, half, cfg.abs_tol, 0);
}

double BranchMonitor::check() const {
    if (samples_.size() < 2) return 0.0;
    std::sort(samples_.begin(), samples_.end());
    double worst = 0.0;
    for (std::size_t i = 1; i < samples_.size(); ++i)
        worst = std::max(worst, std::abs(samples_[i].second - samples_[i - 1].second));
    if (worst > max_jump_)
        throw BranchJump("determinant phase jump of " + std::to_string(worst) +
                         " rad between adjacent quadrature nodes");
    return worst;
}

} // namespace wannuity
