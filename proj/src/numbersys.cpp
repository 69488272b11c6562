#include "mbonacci/numbersys.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mbonacci {

namespace {

double golden_ratio() { return (1.0 + std::sqrt(5.0)) / 2.0; }

double tribonacci_constant() {
    static const double tau = perron_root(3).rho;
    return tau;
}

}  // namespace

const BigInt& FibSeq::at(std::size_t n) {
    while (cache_.size() <= n) {
        cache_.push_back(cache_[cache_.size() - 1] + cache_[cache_.size() - 2]);
    }
    return cache_[n];
}

int FibSeq::index_of(const BigInt& value) {
    if (value < 1) return -1;
    if (value == 1) return 2;
    std::size_t k = 3;
    while (at(k) < value) ++k;
    return at(k) == value ? static_cast<int>(k) : -1;
}

const BigInt& TribSeq::at(std::size_t n) {
    while (cache_.size() <= n) {
        const std::size_t s = cache_.size();
        cache_.push_back(cache_[s - 1] + cache_[s - 2] + cache_[s - 3]);
    }
    return cache_[n];
}

int TribSeq::index_of(const BigInt& value) {
    if (value < 1) return -1;
    if (value == 1) return 3;
    std::size_t l = 4;
    while (at(l) < value) ++l;
    return at(l) == value ? static_cast<int>(l) : -1;
}

BigInt fib(std::size_t n) {
    thread_local FibSeq seq;
    return seq.at(n);
}

BigInt trib(std::size_t n) {
    thread_local TribSeq seq;
    return seq.at(n);
}

std::string TribExpansion::bit_string() const {
    std::string s;
    s.reserve(bits.size());
    for (std::uint8_t b : bits) s.push_back(b ? '1' : '0');
    return s;
}

TribExpansion trib_expand(std::int64_t n) {
    if (n < 1) throw std::domain_error("trib_expand: n must be >= 1");

    TribSeq seq;
    int l = 3;
    while (seq.at(static_cast<std::size_t>(l + 1)) <= n) ++l;

    TribExpansion e;
    e.n = n;
    e.L = l;
    e.bits.assign(static_cast<std::size_t>(l - 2), 0);

    BigInt rest = n;
    for (int h = l; h >= 3; --h) {
        if (seq.at(static_cast<std::size_t>(h)) <= rest) {
            e.bits[static_cast<std::size_t>(h - 3)] = 1;
            rest -= seq.at(static_cast<std::size_t>(h));
        }
    }
    assert(rest == 0);
    // Greedy canonicity: three consecutive set bits would contradict greediness.
    for (std::size_t i = 0; i + 2 < e.bits.size(); ++i) {
        assert(!(e.bits[i] && e.bits[i + 1] && e.bits[i + 2]));
    }
    return e;
}

std::int64_t trib_eval(const TribExpansion& e) {
    TribSeq seq;
    BigInt sum = 0;
    for (int h = 3; h <= e.L; ++h) {
        if (e.bit(h)) sum += seq.at(static_cast<std::size_t>(h));
    }
    return static_cast<std::int64_t>(sum);
}

WeightBounds fibonacci_subword_weight_bounds(std::int64_t n_len) {
    if (n_len < 1) throw std::domain_error("fibonacci_subword_weight_bounds: N must be >= 1");
    if (n_len == 1) return {0, 1};  // a single digit is 1 or 2

    FibSeq seq;
    const int k = seq.index_of(BigInt(n_len));
    if (k >= 3) {
        const std::int64_t f = static_cast<std::int64_t>(seq.at(static_cast<std::size_t>(k - 2)));
        if (k % 2 == 1) return {f - 1, f};
        return {f, f + 1};
    }

    const double inv_phi2 = 1.0 / (golden_ratio() * golden_ratio());
    const double center = static_cast<double>(n_len) * inv_phi2;
    auto low = static_cast<std::int64_t>(std::ceil(center - 1.0));
    auto high = static_cast<std::int64_t>(std::floor(center + 1.0));
    low = std::max<std::int64_t>(low, 0);
    high = std::min<std::int64_t>(high, n_len);
    return {low, high};
}

TribWeightBounds tribonacci_subword_weights(std::int64_t n_len, int j) {
    if (n_len < 1) throw std::domain_error("tribonacci_subword_weights: N must be >= 1");
    if (j < 1 || j > 3) throw std::domain_error("tribonacci_subword_weights: j must be 1..3");

    const TribExpansion e = trib_expand(n_len);
    TribSeq seq;
    BigInt exact = 0;
    for (int h = 3; h <= e.L; ++h) {
        if (e.bit(h)) exact += seq.at(static_cast<std::size_t>(h - j));
    }

    TribWeightBounds b;
    b.prefix_exact = static_cast<std::int64_t>(exact);
    b.low = std::max<std::int64_t>(b.prefix_exact - 2, 0);
    b.high = std::min<std::int64_t>(b.prefix_exact + 2, n_len);
    return b;
}

double gamma_fibonacci(std::int64_t n_len, double phi) {
    if (n_len < 1) throw std::domain_error("gamma_fibonacci: N must be >= 1");
    const double p2 = phi * phi;
    const double p3 = p2 * phi;
    const double p4 = p2 * p2;
    return 1.0 / p2 + 1.0 / p4 - 1.0 / (static_cast<double>(n_len) * p3);
}

double gamma_fibonacci_sharp(std::int64_t n_len, double phi) {
    if (n_len < 1) throw std::domain_error("gamma_fibonacci_sharp: N must be >= 1");
    const double p2 = phi * phi;
    const double p3 = p2 * phi;

    // Case order matters: N = 1, 2 first, then Fibonacci lengths by parity.
    if (n_len == 1) return 1.0 / p2;
    if (n_len == 2) return 0.5;

    FibSeq seq;
    const int k = seq.index_of(BigInt(n_len));
    if (k >= 3) {
        const double f_prev =
            static_cast<double>(seq.at(static_cast<std::size_t>(k - 1)));
        if (k % 2 == 1) {  // N = F_{2h+1}
            return 1.0 / p2 + f_prev / (p3 * static_cast<double>(n_len));
        }
        // N = F_{2h}
        return 1.0 / p2 + (f_prev - 1.0) / (p3 * static_cast<double>(n_len));
    }
    return gamma_fibonacci(n_len, phi);
}

GammaTrib gamma_tribonacci(std::int64_t n_len, double tau) {
    if (n_len < 1) throw std::domain_error("gamma_tribonacci: N must be >= 1");

    const TribExpansion e = trib_expand(n_len);
    TribSeq seq;
    const double t1 = 1.0 / tau;
    const double t2 = t1 / tau;
    const double t3 = t2 / tau;

    double acc = 0.0;
    for (int h = 3; h <= e.L; ++h) {
        if (!e.bit(h)) continue;
        acc += static_cast<double>(seq.at(static_cast<std::size_t>(h - 1))) * t1 +
               static_cast<double>(seq.at(static_cast<std::size_t>(h - 2))) * t2 +
               static_cast<double>(seq.at(static_cast<std::size_t>(h - 3))) * t3;
    }
    GammaTrib g;
    g.value = (acc - 2.0) / static_cast<double>(n_len);
    g.degenerate = !(g.value > 0.0);
    return g;
}

double gamma_fibonacci(std::int64_t n_len) { return gamma_fibonacci(n_len, golden_ratio()); }
double gamma_fibonacci_sharp(std::int64_t n_len) {
    return gamma_fibonacci_sharp(n_len, golden_ratio());
}
GammaTrib gamma_tribonacci(std::int64_t n_len) {
    return gamma_tribonacci(n_len, tribonacci_constant());
}

GapReport verify_gap_condition(const Chain& c, std::int64_t n_len, std::int64_t k_from,
                               std::int64_t k_to) {
    if (n_len < 1) throw std::domain_error("verify_gap_condition: N must be >= 1");
    if (c.order() != 2 && c.order() != 3) {
        throw std::domain_error("verify_gap_condition: gap constants exist for m = 2, 3 only");
    }
    if (k_from < c.k_min() || k_to + n_len > c.k_max() || k_from > k_to) {
        throw std::out_of_range("verify_gap_condition: chain window too short for the scan");
    }

    GapReport r;
    r.m = c.order();
    r.n_len = n_len;
    r.k_from = k_from;
    r.k_to = k_to;

    const double rho = c.perron().rho;
    if (r.m == 2) {
        r.gamma = gamma_fibonacci(n_len, rho);
        r.gamma_sharp = gamma_fibonacci_sharp(n_len, rho);
    } else {
        const GammaTrib g = gamma_tribonacci(n_len, rho);
        r.gamma = g.value;
        r.degenerate = g.degenerate;
        r.gamma_sharp = std::numeric_limits<double>::quiet_NaN();
    }

    double best = std::numeric_limits<double>::infinity();
    for (std::int64_t k = k_from; k <= k_to; ++k) {
        best = std::min(best, c.window_length(k, n_len));
    }
    r.brute_min = best / static_cast<double>(n_len);

    // Window sums and gamma both move by O(rho_error); rounding adds a few ulp.
    r.eps_numeric =
        8.0 * (c.perron().rho_error + std::numeric_limits<double>::epsilon());
    const double bound = r.m == 2 ? std::max(r.gamma, r.gamma_sharp) : r.gamma;
    r.holds = r.brute_min >= bound - r.eps_numeric;
    return r;
}

GapReport verify_gap_condition(int m, std::int64_t n_len, std::int64_t k_range) {
    if (k_range < 0) throw std::domain_error("verify_gap_condition: k_range must be >= 0");
    const Chain c = build_chain(m, -k_range, k_range + n_len);
    return verify_gap_condition(c, n_len, -k_range, k_range);
}

}  // namespace mbonacci
