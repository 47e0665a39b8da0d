#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "wannuity/wishart.hpp"

namespace wannuity {

struct McConfig {
    long paths = 200000;
    double dt = 1.0 / 500.0;
    std::uint64_t seed = 1;
    double horizon = 2.0;
    double psd_floor = 0.0;
    int threads = 0; // 0: hardware concurrency

    void validate() const;
};

struct SimResult {
    std::vector<Mat> terminal; // path order, independent of thread count
    double clamp_fraction = 0.0;
};

// Euler-Maruyama with per-step symmetrization and eigenvalue clamping.
// Path i draws from a stream keyed (seed, i), so the result is identical
// for any worker count.
SimResult simulate_terminal(const WishartParams& p, const McConfig& cfg);

// Same scheme, but each full trajectory (states at steps 0..N) is reduced to
// one value by `fn`; results are collected in path order.
std::vector<double> simulate_path_functional(
    const WishartParams& p, const McConfig& cfg,
    const std::function<double(const std::vector<Mat>& path, double dt)>& fn);

} // namespace wannuity
