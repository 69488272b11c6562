#pragma once

#include <cstdint>
#include <vector>

#include "mbonacci/spectral.hpp"
#include "mbonacci/substitution.hpp"

namespace mbonacci {

/// Window [k_min, k_max] of the m-bonacci chain: lambda(0) = 0 and the gap
/// from lambda(k) to lambda(k+1) is rho^{-v_k} for every k, so each window of
/// the chain reads off a factor of the bi-infinite word.
///
/// Positions are accumulated with compensated summation; differences over a
/// window can also be rebuilt from integer digit counts (window_length), which
/// keeps long-range gap checks exact up to the rho error itself.
class Chain {
public:
    Chain(PerronData perron, std::int64_t k_min, std::int64_t k_max);

    int order() const { return perron_.m; }
    std::int64_t k_min() const { return k_min_; }
    std::int64_t k_max() const { return k_max_; }
    std::int64_t size() const { return k_max_ - k_min_ + 1; }

    double lambda(std::int64_t k) const;
    int gap_digit(std::int64_t k) const;  // v_k, defined for k in [k_min, k_max]

    /// lambda(k+n) - lambda(k) via digit counts; needs k_min <= k <= k+n <= k_max.
    double window_length(std::int64_t k, std::int64_t n) const;
    /// Occurrences of each digit in v_k ... v_{k+n-1}; index j-1 holds digit j.
    std::vector<std::int64_t> window_counts(std::int64_t k, std::int64_t n) const;

    const PerronData& perron() const { return perron_; }
    const std::vector<double>& positions() const { return lambda_; }
    double span() const { return lambda_.back() - lambda_.front(); }

    double min_gap() const;  // rho^-m
    double max_gap() const;  // rho^-1

private:
    std::size_t index_of(std::int64_t k) const;

    PerronData perron_;
    std::int64_t k_min_;
    std::int64_t k_max_;
    std::vector<std::uint8_t> digits_;         // v_k, k in [k_min, k_max]
    std::vector<double> lambda_;               // positions, k in [k_min, k_max]
    std::vector<std::int64_t> prefix_counts_;  // (size+1) rows of m counts
    std::vector<double> inv_pow_;              // rho^-j, j = 1..m
};

Chain build_chain(int m, std::int64_t k_min, std::int64_t k_max);
Chain build_chain(PerronData perron, std::int64_t k_min, std::int64_t k_max);

/// D+(Lambda_m) = rho^{2m} / (1 + rho^2 + ... + rho^{2(m-1)}), evaluated as
/// 1 / sum_{j=1}^m rho^{-2j}.
double upper_density_closed_form(const PerronData& p);

/// 3 - (8/2^m)(1 - 1/2^{m+1}).
double density_lower_bound(int m);

/// Maximal number of chain points in a closed interval of length r that fits
/// inside the generated span. Two-pointer sweep, intervals left-anchored at
/// chain points. Throws std::out_of_range when the span is shorter than r.
std::int64_t count_max_in_window(const Chain& c, double r);

struct DensitySample {
    double r;
    std::int64_t n;
    double ratio;
};

struct DensityReport {
    int m = 0;
    double closed_form = 0.0;
    double lower_bound = 0.0;
    double r_min = 0.0;
    double r_max = 0.0;
    std::vector<DensitySample> samples;
};

/// n(r)/r sampled over the grid r_min, r_min+step, ..., <= r_max. Ratios are
/// finite-window approximations of the upper density; no extrapolation.
DensityReport density_scan(const Chain& c, double r_min, double r_max, double step);

}  // namespace mbonacci
