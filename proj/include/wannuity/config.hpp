#pragma once

#include <nlohmann/json.hpp>

#include <string>

#include "wannuity/mc.hpp"
#include "wannuity/pricing.hpp"

namespace wannuity {

// JSON model configuration: Wishart parameters, annuitant legs, schedule,
// guarantee and numerical overrides. Unknown keys are rejected; the canonical
// serialization is byte-stable for hashing and round-trip checks.
class ModelConfig {
public:
    static ModelConfig load(const std::string& path);
    static ModelConfig parse(const nlohmann::ordered_json& j);

    nlohmann::ordered_json canonical_json() const;
    std::string dump() const; // canonical text (2-space indent, trailing newline)
    std::string hash() const; // FNV-1a of the canonical text, hex

    MortalityModel build_model() const;
    DiscountCurve curve() const { return {r_}; }
    AnnuitySchedule schedule() const { return schedule_; }
    GaoContract contract() const;
    const QuadratureConfig& quadrature() const { return quad_; }
    const McConfig& mc() const { return mc_; }

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double r() const { return r_; }
    double g() const { return g_; }
    double z_i() const { return z_i_; }
    const Mat& sigma() const { return sigma_; }
    const Mat& m() const { return m_; }
    const Mat& v0() const { return v0_; }
    const std::vector<Mat>& legs() const { return legs_; }

    // mutated copies for sensitivity sweeps; derived quantities recoupled
    ModelConfig with_alpha(double a) const;
    ModelConfig with_beta(double b) const;
    ModelConfig with_rho_sigma(double rho) const;
    ModelConfig with_m11(double m11) const;
    ModelConfig with_sigma11(double s11) const;
    ModelConfig with_option_date(double T) const;
    ModelConfig with_g(double g) const;
    double rho_sigma() const;

private:
    int version_ = 1;
    double alpha_ = 0.0, r_ = 0.0, beta_ = 0.0, g_ = 0.0, z_i_ = -0.025;
    Mat sigma_, m_, v0_;
    std::vector<Mat> legs_;
    AnnuitySchedule schedule_;
    bool schedule_by_count_ = true;
    int num_payments_ = 0;
    QuadratureConfig quad_;
    McConfig mc_;
    bool has_quad_override_ = false;
    bool has_mc_override_ = false;
};

} // namespace wannuity
