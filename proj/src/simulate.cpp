#include "wannuity/simulate.hpp"

#include <atomic>
#include <cmath>
#include <random>
#include <thread>

namespace wannuity {

void McConfig::validate() const {
    if (paths < 1) throw InvalidParameter("McConfig: paths must be >= 1");
    if (dt <= 0.0 || horizon <= 0.0) throw InvalidParameter("McConfig: dt and horizon must be positive");
    if (psd_floor < 0.0) throw InvalidParameter("McConfig: psd_floor must be >= 0");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::mt19937_64 path_engine(std::uint64_t seed, std::uint64_t path) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(path + 1)));
}

struct Scheme {
    const WishartParams& p;
    double dt;
    double sqrt_dt;
    double psd_floor;
    int n;

    // one Euler step in place; returns number of clamped updates (0/1)
    int step(Mat& v, Mat& scratch, std::mt19937_64& eng, std::normal_distribution<double>& normal) const {
        // diffusion increment sqrt(v) dW sigma
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                scratch(i, j) = normal(eng) * sqrt_dt;
        const Mat root = matrix_sqrt_clamped(v);
        const Mat diff = root * scratch * p.sigma();
        v += dt * (p.omega() + p.m() * v + v * p.m().transpose());
        v += diff + diff.transpose();
        v = symmetrize(v);
        return clamp(v);
    }

    Mat matrix_sqrt_clamped(const Mat& v) const {
        if (n == 2) {
            const double det = std::max(v(0, 0) * v(1, 1) - v(0, 1) * v(1, 0), 0.0);
            const double s = std::sqrt(det);
            const double tr = v(0, 0) + v(1, 1);
            const double denom = std::sqrt(std::max(tr + 2.0 * s, 1e-300));
            Mat r = v;
            r(0, 0) += s;
            r(1, 1) += s;
            return Mat(r / denom);
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(v);
        return Mat(es.eigenvectors() *
                   es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                   es.eigenvectors().transpose());
    }

    int clamp(Mat& v) const {
        if (n == 2) {
            const double tr = v(0, 0) + v(1, 1);
            const double det = v(0, 0) * v(1, 1) - v(0, 1) * v(1, 0);
            const double rad = std::sqrt(std::max(tr * tr - 4.0 * det, 0.0));
            if (0.5 * (tr - rad) >= psd_floor) return 0;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(v);
        if (es.eigenvalues().minCoeff() >= psd_floor) return 0;
        v = Mat(es.eigenvectors() * es.eigenvalues().cwiseMax(psd_floor).asDiagonal() *
                es.eigenvectors().transpose());
        return 1;
    }
};

template <typename PerPath>
double run_paths(const WishartParams& p, const McConfig& cfg, const PerPath& per_path) {
    cfg.validate();
    const int steps = static_cast<int>(std::llround(cfg.horizon / cfg.dt));
    if (steps < 1) throw InvalidParameter("McConfig: horizon shorter than dt");
    const Scheme scheme{p, cfg.horizon / steps, std::sqrt(cfg.horizon / steps), cfg.psd_floor,
                        p.n()};

    unsigned workers = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                       : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(cfg.paths));

    std::atomic<long> clamped{0};
    auto worker = [&](unsigned w) {
        Mat scratch(p.n(), p.n());
        long local_clamped = 0;
        for (long i = static_cast<long>(w); i < cfg.paths; i += workers) {
            auto eng = path_engine(cfg.seed, static_cast<std::uint64_t>(i));
            std::normal_distribution<double> normal(0.0, 1.0);
            local_clamped += per_path(static_cast<std::size_t>(i), scheme, steps, eng, normal, scratch);
        }
        clamped += local_clamped;
    };

    if (workers == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker, w);
        for (auto& th : pool) th.join();
    }
    return static_cast<double>(clamped.load()) / (static_cast<double>(cfg.paths) * steps);
}

} // namespace

SimResult simulate_terminal(const WishartParams& p, const McConfig& cfg) {
    SimResult out;
    out.terminal.assign(static_cast<std::size_t>(cfg.paths), Mat());
    out.clamp_fraction = run_paths(
        p, cfg,
        [&](std::size_t i, const Scheme& scheme, int steps, std::mt19937_64& eng,
            std::normal_distribution<double>& normal, Mat& scratch) {
            Mat v = p.v0();
            long nclamp = 0;
            for (int k = 0; k < steps; ++k) nclamp += scheme.step(v, scratch, eng, normal);
            out.terminal[i] = v;
            return nclamp;
        });
    return out;
}

std::vector<double> simulate_path_functional(
    const WishartParams& p, const McConfig& cfg,
    const std::function<double(const std::vector<Mat>& path, double dt)>& fn) {
    std::vector<double> out(static_cast<std::size_t>(cfg.paths));
    run_paths(p, cfg,
              [&](std::size_t i, const Scheme& scheme, int steps, std::mt19937_64& eng,
                  std::normal_distribution<double>& normal, Mat& scratch) {
                  std::vector<Mat> path;
                  path.reserve(static_cast<std::size_t>(steps) + 1);
                  Mat v = p.v0();
                  path.push_back(v);
                  long nclamp = 0;
                  for (int k = 0; k < steps; ++k) {
                      nclamp += scheme.step(v, scratch, eng, normal);
                      path.push_back(v);
                  }
                  out[i] = fn(path, scheme.dt);
                  return nclamp;
              });
    return out;
}

} // namespace wannuity
