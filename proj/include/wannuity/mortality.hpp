#pragma once

#include <string>
#include <vector>

#include "wannuity/wishart.hpp"

namespace wannuity {

// Per-leg constants of the scaled intensity: mu_i (1 + tr[u0 v]) = c + tr[h v].
struct IntensityLegCoeffs {
    double c;
    Mat h;
};

enum class PositivityStatus { Proved, Sampled, Failed };

struct PositivityReport {
    struct Leg {
        bool alpha_condition_ok = false; // alpha/k > tr[u_i omega]
        PositivityStatus trace_condition = PositivityStatus::Failed;
        double alpha_margin = 0.0;
    };
    std::vector<Leg> legs;
    bool ok = false;
    std::string summary() const;
};

// State-price density zeta_t = e^{-alpha t}(1 + tr[u0 v_t]) with k annuitant
// load matrices u_1..u_k, u_0 = sum u_i.
class MortalityModel {
public:
    static MortalityModel create(WishartParams wishart, std::vector<Mat> legs, double alpha);
    // Skips the soft positivity validation (report still computed) and
    // permits alpha <= 0 for experimentation.
    static MortalityModel create_unchecked(WishartParams wishart, std::vector<Mat> legs,
                                           double alpha);

    const WishartParams& wishart() const { return wishart_; }
    double alpha() const { return alpha_; }
    int num_legs() const { return static_cast<int>(legs_.size()); }
    const Mat& leg(int i) const { return legs_.at(i); }
    const Mat& u0() const { return u0_; }
    const PositivityReport& positivity() const { return positivity_; }
    bool checked() const { return checked_; }

    IntensityLegCoeffs leg_coeffs(int i) const;

private:
    MortalityModel() = default;
    static MortalityModel build(WishartParams wishart, std::vector<Mat> legs, double alpha,
                                bool checked);
    WishartParams wishart_;
    std::vector<Mat> legs_;
    double alpha_ = 0.0;
    Mat u0_;
    PositivityReport positivity_;
    bool checked_ = true;
};

double state_price_density(const MortalityModel& mdl, double t, const Mat& v);

// mu_i(v) = (alpha/k + alpha tr[u_i v] - tr[u_i omega] - 2 tr[u_i m v]) / (1 + tr[u0 v]).
double intensity(const MortalityModel& mdl, int leg, const Mat& v);

// Sufficient positivity conditions per leg: alpha/k > tr[u_i omega] plus
// tr[u_i m v] < 0 for PSD v, proved symbolically when -(u_i m + m' u_i) is
// PSD and otherwise sampled along simulated trajectories.
PositivityReport positivity_check(const MortalityModel& mdl);

// Gurland inversion of the conditional law of mu_i(T).
double intensity_cdf(const MortalityModel& mdl, int leg, double t, double T, double z,
                     const Mat& v_t, const QuadratureConfig& quad = {},
                     BranchMonitor* monitor = nullptr);

double intensity_pdf(const MortalityModel& mdl, int leg, double t, double T, double z,
                     const Mat& v_t, const QuadratureConfig& quad = {},
                     BranchMonitor* monitor = nullptr);

struct IntensityMoments {
    double mean;
    double variance;
    double mass;  // density integral over the chosen support
    double z_max; // truncated support actually used
};

IntensityMoments intensity_moments(const MortalityModel& mdl, int leg, double t, double T,
                                   const Mat& v_t, const QuadratureConfig& quad = {});

// Instantaneous correlation between the scaled intensities (two legs).
double normalized_intensity_correlation(const MortalityModel& mdl, const Mat& v);

// Replaces sigma with the diagonal matching each component's normalized
// quadratic variation while zeroing the cross covariation (n = 2 only).
MortalityModel independence_transform(const MortalityModel& mdl);

} // namespace wannuity
