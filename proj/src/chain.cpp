#include "mbonacci/chain.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace mbonacci {

namespace {

struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

Chain::Chain(PerronData perron, std::int64_t k_min, std::int64_t k_max)
    : perron_(std::move(perron)), k_min_(k_min), k_max_(k_max) {
    if (k_min_ > 0 || k_max_ < 0) throw std::domain_error("Chain: need k_min <= 0 <= k_max");

    const int m = perron_.m;
    inv_pow_ = perron_.left_eigenvector;  // rho^-1 .. rho^-m

    WordStream stream((Alphabet(m)));
    stream.extend(-k_min_, k_max_ + 1);  // digits v_k for k in [k_min, k_max]

    const std::size_t n = static_cast<std::size_t>(size());
    digits_.resize(n);
    for (std::int64_t k = k_min_; k <= k_max_; ++k) {
        digits_[index_of(k)] = static_cast<std::uint8_t>(stream.digit(k));
    }

    // Positions grow outward from lambda(0) = 0 on both sides.
    lambda_.assign(n, 0.0);
    KahanSum up;
    for (std::int64_t k = 1; k <= k_max_; ++k) {
        up.add(inv_pow_[static_cast<std::size_t>(digits_[index_of(k - 1)] - 1)]);
        lambda_[index_of(k)] = up.sum;
    }
    KahanSum down;
    for (std::int64_t k = -1; k >= k_min_; --k) {
        down.add(-inv_pow_[static_cast<std::size_t>(digits_[index_of(k)] - 1)]);
        lambda_[index_of(k)] = down.sum;
    }

    prefix_counts_.assign((n + 1) * static_cast<std::size_t>(m), 0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t row = (i + 1) * static_cast<std::size_t>(m);
        const std::size_t prev = i * static_cast<std::size_t>(m);
        for (int j = 0; j < m; ++j) prefix_counts_[row + j] = prefix_counts_[prev + j];
        prefix_counts_[row + digits_[i] - 1] += 1;
    }
}

std::size_t Chain::index_of(std::int64_t k) const {
    return static_cast<std::size_t>(k - k_min_);
}

double Chain::lambda(std::int64_t k) const {
    if (k < k_min_ || k > k_max_) throw std::out_of_range("Chain::lambda: k outside window");
    return lambda_[index_of(k)];
}

int Chain::gap_digit(std::int64_t k) const {
    if (k < k_min_ || k > k_max_) throw std::out_of_range("Chain::gap_digit: k outside window");
    return digits_[index_of(k)];
}

double Chain::window_length(std::int64_t k, std::int64_t n) const {
    if (n < 0 || k < k_min_ || k + n > k_max_) {
        throw std::out_of_range("Chain::window_length: window outside chain");
    }
    const int m = perron_.m;
    const std::size_t lo = index_of(k) * static_cast<std::size_t>(m);
    const std::size_t hi = index_of(k + n) * static_cast<std::size_t>(m);
    double acc = 0.0;
    for (int j = 0; j < m; ++j) {
        acc += static_cast<double>(prefix_counts_[hi + j] - prefix_counts_[lo + j]) * inv_pow_[j];
    }
    return acc;
}

std::vector<std::int64_t> Chain::window_counts(std::int64_t k, std::int64_t n) const {
    if (n < 0 || k < k_min_ || k + n > k_max_) {
        throw std::out_of_range("Chain::window_counts: window outside chain");
    }
    const int m = perron_.m;
    const std::size_t lo = index_of(k) * static_cast<std::size_t>(m);
    const std::size_t hi = index_of(k + n) * static_cast<std::size_t>(m);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) counts[j] = prefix_counts_[hi + j] - prefix_counts_[lo + j];
    return counts;
}

double Chain::min_gap() const { return inv_pow_.back(); }
double Chain::max_gap() const { return inv_pow_.front(); }

Chain build_chain(int m, std::int64_t k_min, std::int64_t k_max) {
    return Chain(perron_root(m), k_min, k_max);
}

Chain build_chain(PerronData perron, std::int64_t k_min, std::int64_t k_max) {
    return Chain(std::move(perron), k_min, k_max);
}

double upper_density_closed_form(const PerronData& p) {
    double s = 0.0;
    for (double c : p.left_eigenvector) s += c * c;  // rho^-2j
    return 1.0 / s;
}

double density_lower_bound(int m) {
    if (m < 2) throw std::domain_error("density_lower_bound: order must be >= 2");
    const double half_pow = std::ldexp(1.0, -m);  // 2^-m
    return 3.0 - 8.0 * half_pow * (1.0 - half_pow / 2.0);
}

std::int64_t count_max_in_window(const Chain& c, double r) {
    if (!(r > 0)) throw std::domain_error("count_max_in_window: r must be > 0");
    const auto& pts = c.positions();
    if (c.span() < r) throw std::out_of_range("count_max_in_window: chain window shorter than r");

    const double limit = pts.back();
    std::int64_t best = 0;
    std::size_t hi = 0;
    for (std::size_t lo = 0; lo < pts.size(); ++lo) {
        const double right_end = pts[lo] + r;
        if (right_end > limit) break;  // interval no longer fits in the window
        if (hi < lo) hi = lo;
        while (hi < pts.size() && pts[hi] <= right_end) ++hi;
        best = std::max<std::int64_t>(best, static_cast<std::int64_t>(hi - lo));
    }
    return best;
}

DensityReport density_scan(const Chain& c, double r_min, double r_max, double step) {
    if (!(r_min > 0) || r_max < r_min) throw std::domain_error("density_scan: bad r range");
    if (!(step > 0)) throw std::domain_error("density_scan: step must be > 0");

    DensityReport report;
    report.m = c.order();
    report.closed_form = upper_density_closed_form(c.perron());
    report.lower_bound = density_lower_bound(c.order());
    report.r_min = r_min;
    report.r_max = r_max;

    // Half-step slack so r_max itself lands on the grid despite rounding.
    for (double r = r_min; r <= r_max + step * 0.5; r += step) {
        const double rr = std::min(r, r_max);
        const std::int64_t n = count_max_in_window(c, rr);
        report.samples.push_back({rr, n, static_cast<double>(n) / rr});
        if (rr >= r_max) break;
    }
    return report;
}

}  // namespace mbonacci
