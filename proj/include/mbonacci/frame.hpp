#pragma once

#include <cstdint>
#include <vector>

#include "mbonacci/chain.hpp"

namespace mbonacci {

/// Dense Gram matrix of the exponential system {e^{i lambda t}} on the
/// centered interval [-L/2, L/2]: entry (j,k) = 2 sin((lambda_j-lambda_k)L/2)
/// / (lambda_j-lambda_k), diagonal L. Real symmetric because I is centered.
/// Row-major, n x n. Throws on duplicate frequencies.
std::vector<double> gram_matrix(const std::vector<double>& freqs, double interval_length);

/// Smallest and largest eigenvalue of a symmetric matrix given row-major.
std::pair<double, double> extreme_eigenvalues(const std::vector<double>& sym, std::size_t n);

struct FrameProbe {
    int m = 0;
    std::int64_t k_half = 0;       // frequencies lambda_k with |k| <= k_half
    double interval_length = 0.0;  // |I|
    double c1 = 0.0;               // smallest Gram eigenvalue
    double c2 = 0.0;               // largest Gram eigenvalue
    double threshold = 0.0;        // 2*pi*D+(Lambda_m), the Beurling length
};

/// Optimal frame constants of the truncated system {e^{i lambda_k t} : |k| <= K}
/// on an interval of the given length. The chain window must cover |k| <= K.
/// Matrix sizes are capped at 2K+1 <= 4001.
FrameProbe frame_bounds(const Chain& chain, std::int64_t k_half, double interval_length);

struct FrameReport {
    int m = 0;
    double threshold = 0.0;
    struct Row {
        double interval_length = 0.0;
        std::int64_t k_half = 0;
        double c1 = 0.0;
        double c2 = 0.0;
        bool above_threshold = false;
    };
    std::vector<Row> probes;
};

/// One probe per grid value of |I|, labeled by comparison with the threshold.
/// Finite truncations always have c1 > 0; failure below the threshold shows up
/// as decay of c1 with growing K, never as a boolean here.
FrameReport threshold_sweep(const Chain& chain, std::int64_t k_half,
                            const std::vector<double>& l_grid);

}  // namespace mbonacci
