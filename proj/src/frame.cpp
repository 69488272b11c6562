#include "mbonacci/frame.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mbonacci {

namespace {

double inner_product(double delta, double l) {
    // int_{-L/2}^{L/2} e^{i*delta*t} dt; series branch keeps tiny gaps accurate.
    const double x = delta * l / 2.0;
    if (std::abs(x) < 1e-4) {
        return l * (1.0 - x * x / 6.0 * (1.0 - x * x / 20.0));
    }
    return 2.0 * std::sin(x) / delta;
}

}  // namespace

std::vector<double> gram_matrix(const std::vector<double>& freqs, double interval_length) {
    if (!(interval_length > 0)) throw std::domain_error("gram_matrix: interval length must be > 0");
    const std::size_t n = freqs.size();
    std::vector<double> g(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        g[j * n + j] = interval_length;
        for (std::size_t k = j + 1; k < n; ++k) {
            const double delta = freqs[j] - freqs[k];
            if (delta == 0.0) throw std::domain_error("gram_matrix: duplicate frequencies");
            const double v = inner_product(delta, interval_length);
            g[j * n + k] = v;
            g[k * n + j] = v;
        }
    }
    return g;
}

std::pair<double, double> extreme_eigenvalues(const std::vector<double>& sym, std::size_t n) {
    if (n == 0 || sym.size() != n * n) throw std::domain_error("extreme_eigenvalues: bad size");
    Eigen::MatrixXd a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = sym[j * n + k];
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("extreme_eigenvalues: eigenvalue iteration failed");
    }
    const auto& ev = solver.eigenvalues();
    return {ev(0), ev(ev.size() - 1)};
}

FrameProbe frame_bounds(const Chain& chain, std::int64_t k_half, double interval_length) {
    if (k_half < 0) throw std::domain_error("frame_bounds: K must be >= 0");
    if (2 * k_half + 1 > 4001) throw std::domain_error("frame_bounds: matrix size cap is 4001");
    if (chain.k_min() > -k_half || chain.k_max() < k_half) {
        throw std::out_of_range("frame_bounds: chain window does not cover |k| <= K");
    }

    std::vector<double> freqs;
    freqs.reserve(static_cast<std::size_t>(2 * k_half + 1));
    for (std::int64_t k = -k_half; k <= k_half; ++k) freqs.push_back(chain.lambda(k));

    const auto g = gram_matrix(freqs, interval_length);
    const auto [lo, hi] = extreme_eigenvalues(g, freqs.size());

    FrameProbe probe;
    probe.m = chain.order();
    probe.k_half = k_half;
    probe.interval_length = interval_length;
    probe.c1 = lo;
    probe.c2 = hi;
    probe.threshold = 2.0 * std::numbers::pi * upper_density_closed_form(chain.perron());
    return probe;
}

FrameReport threshold_sweep(const Chain& chain, std::int64_t k_half,
                            const std::vector<double>& l_grid) {
    FrameReport report;
    report.m = chain.order();
    report.threshold = 2.0 * std::numbers::pi * upper_density_closed_form(chain.perron());
    for (double l : l_grid) {
        const FrameProbe p = frame_bounds(chain, k_half, l);
        report.probes.push_back({l, k_half, p.c1, p.c2, l > report.threshold});
    }
    return report;
}

}  // namespace mbonacci
