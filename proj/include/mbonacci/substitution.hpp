#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mbonacci/rational.hpp"

namespace mbonacci {

/// Alphabet {1,...,m} of the order-m Rauzy substitution
///   1 -> 12, 2 -> 13, ..., m-1 -> 1m, m -> 1.
/// Digits are stored as bytes, so the order is capped at 255.
class Alphabet {
public:
    explicit Alphabet(int order);
    int order() const { return order_; }

    friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.order_ == b.order_; }

private:
    int order_;
};

/// Finite word over an Alphabet. Positions are 0-based, digit values 1-based.
class Word {
public:
    explicit Word(Alphabet a) : alphabet_(a) {}
    Word(Alphabet a, std::vector<std::uint8_t> digits);

    /// Parse "12112"-style text; only usable for orders up to 9.
    static Word from_string(Alphabet a, std::string_view text);

    const Alphabet& alphabet() const { return alphabet_; }
    std::int64_t length() const { return static_cast<std::int64_t>(digits_.size()); }
    bool empty() const { return digits_.empty(); }
    int digit(std::int64_t pos) const { return digits_[static_cast<std::size_t>(pos)]; }
    const std::vector<std::uint8_t>& digits() const { return digits_; }

    void push_back(int digit);
    std::string to_string() const;  // orders up to 9 only

    friend bool operator==(const Word& a, const Word& b) {
        return a.alphabet_ == b.alphabet_ && a.digits_ == b.digits_;
    }

private:
    Alphabet alphabet_;
    std::vector<std::uint8_t> digits_;
};

/// One application of the Rauzy substitution to a finite word.
/// Concatenates the images of the digits, so it is a morphism by construction.
Word apply_substitution(const Word& w);

/// sigma_m^n(1). Prefix-stable: the result for n is a prefix of the result for n+1.
Word iterate_on_one(int m, int n);

/// Shortest iterate sigma_m^n(1) with length >= min_length.
Word iterate_until_length(int m, std::int64_t min_length);

/// Number of occurrences of digit j in w.
std::int64_t digit_weight(const Word& w, int j);

/// Lazily extensible window of the bi-infinite word v_m = lim sigma^{nm}(1.1).
///
/// The right buffer is a prefix of the one-sided fixed point w_m; the left
/// buffer is sigma^{nm}(1) read ending at index -1 (v_{-k} is its k-th digit
/// from the end). Left extensions only use exponents that are multiples of m,
/// which keeps every exposed digit stable under further extension. Extension
/// is exclusive; all queries on an unchanging stream are safe concurrently.
class WordStream {
public:
    explicit WordStream(Alphabet a);

    /// Grow buffers until digits v_k are available for -target_left <= k < target_right.
    /// Buffers can overshoot the targets by up to one substitution round.
    void extend(std::int64_t target_left, std::int64_t target_right);

    /// v_k. Throws std::out_of_range outside the generated window.
    int digit(std::int64_t k) const;

    std::int64_t left_extent() const { return left_core_.length(); }
    std::int64_t right_extent() const { return right_.length(); }

    /// Left buffer generation n: the left side comes from sigma^{n*m}(1).
    int generation() const { return generation_; }

    const Word& right_buffer() const { return right_; }
    const Word& left_buffer() const { return left_core_; }

    /// Exact frequency |v_{k+1} ... v_{k+n}|_j / n over an already-generated window.
    Rational empirical_frequency(int j, std::int64_t k, std::int64_t n) const;

private:
    Alphabet alphabet_;
    Word right_;      // prefix of w_m, any exponent
    Word left_core_;  // sigma^{m*generation_}(1)
    int generation_ = 0;
};

}  // namespace mbonacci
