#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "wannuity/errors.hpp"

namespace wannuity {

struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int panel_order = 32;
    int max_panels = 4096;
    double truncation_ratio = 1e-8; // stop once |panel| < ratio * running peak
    double initial_width = 1.0;
    double max_width = 64.0;

    void validate() const;
};

// Nodes/weights on [-1, 1], Newton-refined Legendre roots.
struct GaussLegendre {
    explicit GaussLegendre(int order);
    std::vector<double> nodes;
    std::vector<double> weights;
};

using ComplexIntegrand = std::function<std::complex<double>(double)>;
using RealIntegrand = std::function<double(double)>;

// Integral over (0, inf) by fixed-order Gauss-Legendre panels of adaptive
// width: widths halve when an embedded (order/2) estimate disagrees, double
// while the integrand is slowly varying. Advances until the panel magnitude
// drops below truncation_ratio x running peak and the last two panels each
// contribute less than abs_tol. Slowly decaying oscillatory tails are summed
// with Wynn's epsilon extrapolation on the partial sums.
std::complex<double> integrate_semi_infinite(const ComplexIntegrand& f, const QuadratureConfig& cfg);

// Same panel rule on a finite interval, with recursive bisection on the
// embedded error estimate.
double integrate_finite(const RealIntegrand& f, double a, double b, const QuadratureConfig& cfg);

// Records the summed determinant phase along a monotone evaluation path and
// rejects rotation-count jumps. Evaluations may arrive out of order (panel
// refinement re-visits abscissae); pairs are sorted before the scan.
class BranchMonitor {
public:
    explicit BranchMonitor(double max_jump = 1.5707963267948966) : max_jump_(max_jump) {}

    void record(double x, double phase) { samples_.emplace_back(x, phase); }
    // Largest |phase step| between adjacent abscissae; throws BranchJump
    // above the threshold.
    double check() const;
    std::size_t size() const { return samples_.size(); }

private:
    double max_jump_;
    mutable std::vector<std::pair<double, double>> samples_;
};

} // namespace wannuity
