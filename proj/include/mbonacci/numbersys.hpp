#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "mbonacci/chain.hpp"

namespace mbonacci {

using BigInt = boost::multiprecision::cpp_int;

/// Fibonacci numbers, F_0 = 0, F_1 = 1. The cache grows monotonically;
/// extension is exclusive, reads of an unchanging cache are shared-safe.
class FibSeq {
public:
    const BigInt& at(std::size_t n);
    /// Index K >= 3 with F_K == value, or -1. (F_1 = F_2 = 1 map to K = 2.)
    int index_of(const BigInt& value);

private:
    std::vector<BigInt> cache_{0, 1};
};

/// Tribonacci numbers, T_0 = T_1 = 0, T_2 = 1.
class TribSeq {
public:
    const BigInt& at(std::size_t n);
    /// Index L >= 3 with T_L == value, or -1. (T_2 = T_3 = 1 map to L = 3.)
    int index_of(const BigInt& value);

private:
    std::vector<BigInt> cache_{0, 0, 1};
};

BigInt fib(std::size_t n);
BigInt trib(std::size_t n);

/// Greedy expansion n = sum_{h=3}^{L} x_h T_h with x_L = 1 and no three
/// consecutive set bits (canonical form of the Tribonacci numeration system).
struct TribExpansion {
    std::int64_t n = 0;
    int L = 0;
    std::vector<std::uint8_t> bits;  // bits[h-3] = x_h, h in 3..L

    int bit(int h) const { return bits[static_cast<std::size_t>(h - 3)]; }
    std::string bit_string() const;  // "x_3 x_4 ... x_L" concatenated
};

TribExpansion trib_expand(std::int64_t n);
std::int64_t trib_eval(const TribExpansion& e);

struct WeightBounds {
    std::int64_t low = 0;
    std::int64_t high = 0;
};

/// Bounds on |w|_2 over all length-N factors of the Fibonacci word. Uses the
/// sharp Fibonacci-length bounds when N is a Fibonacci number, the generic
/// 1/N balance envelope otherwise.
WeightBounds fibonacci_subword_weight_bounds(std::int64_t n_len);

struct TribWeightBounds {
    std::int64_t prefix_exact = 0;  // |v_0 ... v_{N-1}|_j
    std::int64_t low = 0;           // over all length-N factors
    std::int64_t high = 0;
};

TribWeightBounds tribonacci_subword_weights(std::int64_t n_len, int j);

/// Generic Fibonacci gap constant 1/phi^2 + 1/phi^4 - 1/(N phi^3).
double gamma_fibonacci(std::int64_t n_len, double phi);
/// Case-split improvement: exact at N = 1, 2 and at Fibonacci lengths.
double gamma_fibonacci_sharp(std::int64_t n_len, double phi);

struct GammaTrib {
    double value = 0.0;
    bool degenerate = false;  // value <= 0; the bound is vacuously true
};

GammaTrib gamma_tribonacci(std::int64_t n_len, double tau);

// Convenience overloads with cached Perron constants (phi exact, tau solved once).
double gamma_fibonacci(std::int64_t n_len);
double gamma_fibonacci_sharp(std::int64_t n_len);
GammaTrib gamma_tribonacci(std::int64_t n_len);

struct GapReport {
    int m = 0;
    std::int64_t n_len = 0;
    double gamma = 0.0;        // gamma_{2,N} or gamma_{3,N}
    double gamma_sharp = 0.0;  // m = 2 only; NaN for m = 3
    bool degenerate = false;   // m = 3 with gamma <= 0
    double brute_min = 0.0;    // min over scanned k of (lambda_{k+N} - lambda_k)/N
    std::int64_t k_from = 0;
    std::int64_t k_to = 0;
    double eps_numeric = 0.0;
    bool holds = false;
};

/// Slide length-N windows over [k_from, k_to] of the chain and compare the
/// brute-force minimum against the gap constants. Window sums come from digit
/// counts, so eps_numeric stays near the rho error.
GapReport verify_gap_condition(const Chain& c, std::int64_t n_len, std::int64_t k_from,
                               std::int64_t k_to);

/// Scan |k| <= k_range on a freshly built chain.
GapReport verify_gap_condition(int m, std::int64_t n_len, std::int64_t k_range);

}  // namespace mbonacci
