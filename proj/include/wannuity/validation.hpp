#pragma once

#include <string>
#include <vector>

#include "wannuity/mc.hpp"

namespace wannuity {

struct ValidationCheck {
    std::string name;
    bool passed;
    double measured;
    double tolerance;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool all_passed() const;
};

struct ValidationSettings {
    long mc_paths = 50000;
    double mc_dt = 1.0 / 250.0;
    std::uint64_t seed = 20240915;
};

// The oracle/property suite behind `wannuity validate`: transform vs Monte
// Carlo, derivative and cumulant finite-difference checks, distribution
// sanity, put-call parity, damping invariance and the determinant-phase
// monitor.
ValidationReport run_validation_suite(const MortalityModel& mdl, const DiscountCurve& curve,
                                      const GaoContract& contract, const QuadratureConfig& quad,
                                      const ValidationSettings& settings = {});

} // namespace wannuity
