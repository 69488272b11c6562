#include "mbonacci/substitution.hpp"

#include <stdexcept>
#include <utility>

namespace mbonacci {

namespace {

void check_digit(int digit, int order) {
    if (digit < 1 || digit > order) {
        throw std::domain_error("invalid word: digit " + std::to_string(digit) +
                                " outside alphabet 1.." + std::to_string(order));
    }
}

// sigma applied to a raw digit buffer.
std::vector<std::uint8_t> substitute(const std::vector<std::uint8_t>& in, int order) {
    std::vector<std::uint8_t> out;
    out.reserve(in.size() * 2);
    for (std::uint8_t d : in) {
        check_digit(d, order);
        out.push_back(1);
        if (d < order) out.push_back(static_cast<std::uint8_t>(d + 1));
    }
    return out;
}

}  // namespace

Alphabet::Alphabet(int order) : order_(order) {
    if (order < 2) throw std::domain_error("Alphabet: order must be >= 2");
    if (order > 255) throw std::domain_error("Alphabet: order must be <= 255");
}

Word::Word(Alphabet a, std::vector<std::uint8_t> digits)
    : alphabet_(a), digits_(std::move(digits)) {
    for (std::uint8_t d : digits_) check_digit(d, alphabet_.order());
}

Word Word::from_string(Alphabet a, std::string_view text) {
    if (a.order() > 9) throw std::domain_error("Word::from_string: order must be <= 9");
    std::vector<std::uint8_t> digits;
    digits.reserve(text.size());
    for (char c : text) {
        if (c < '1' || c > '9') throw std::domain_error("Word::from_string: bad character");
        digits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return Word(a, std::move(digits));
}

void Word::push_back(int digit) {
    check_digit(digit, alphabet_.order());
    digits_.push_back(static_cast<std::uint8_t>(digit));
}

std::string Word::to_string() const {
    if (alphabet_.order() > 9) throw std::domain_error("Word::to_string: order must be <= 9");
    std::string s;
    s.reserve(digits_.size());
    for (std::uint8_t d : digits_) s.push_back(static_cast<char>('0' + d));
    return s;
}

Word apply_substitution(const Word& w) {
    return Word(w.alphabet(), substitute(w.digits(), w.alphabet().order()));
}

Word iterate_on_one(int m, int n) {
    if (n < 0) throw std::domain_error("iterate_on_one: n must be >= 0");
    Alphabet a(m);
    std::vector<std::uint8_t> digits{1};
    for (int i = 0; i < n; ++i) digits = substitute(digits, m);
    return Word(a, std::move(digits));
}

Word iterate_until_length(int m, std::int64_t min_length) {
    if (min_length < 1) throw std::domain_error("iterate_until_length: need min_length >= 1");
    Alphabet a(m);
    std::vector<std::uint8_t> digits{1};
    while (static_cast<std::int64_t>(digits.size()) < min_length) digits = substitute(digits, m);
    return Word(a, std::move(digits));
}

std::int64_t digit_weight(const Word& w, int j) {
    check_digit(j, w.alphabet().order());
    std::int64_t count = 0;
    for (std::uint8_t d : w.digits()) count += (d == j);
    return count;
}

WordStream::WordStream(Alphabet a)
    : alphabet_(a),
      right_(a, std::vector<std::uint8_t>{1}),
      left_core_(a, std::vector<std::uint8_t>{1}) {}

void WordStream::extend(std::int64_t target_left, std::int64_t target_right) {
    if (target_left < 0 || target_right < 0) {
        throw std::domain_error("WordStream::extend: targets must be >= 0");
    }
    while (right_.length() < target_right) right_ = apply_substitution(right_);
    while (left_core_.length() < target_left) {
        // One full generation: exponent stays a multiple of m, so sigma^{nm}(1)
        // remains a suffix of sigma^{(n+1)m}(1) and exposed digits never move.
        for (int i = 0; i < alphabet_.order(); ++i) left_core_ = apply_substitution(left_core_);
        ++generation_;
    }
}

int WordStream::digit(std::int64_t k) const {
    if (k >= 0) {
        if (k >= right_.length()) throw std::out_of_range("WordStream::digit: beyond right buffer");
        return right_.digit(k);
    }
    if (-k > left_core_.length()) throw std::out_of_range("WordStream::digit: beyond left buffer");
    return left_core_.digit(left_core_.length() + k);
}

Rational WordStream::empirical_frequency(int j, std::int64_t k, std::int64_t n) const {
    check_digit(j, alphabet_.order());
    if (n < 1) throw std::domain_error("empirical_frequency: window size must be >= 1");
    if (k + 1 < -left_extent() || k + n >= right_extent()) {
        throw std::out_of_range("empirical_frequency: window outside generated range");
    }
    std::int64_t count = 0;
    for (std::int64_t i = k + 1; i <= k + n; ++i) count += (digit(i) == j);
    return Rational(count, n);
}

}  // namespace mbonacci
