#include "mbonacci/spectral.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mbonacci {

namespace {

using Float50 = boost::multiprecision::cpp_bin_float_50;
using Float100 = boost::multiprecision::cpp_bin_float_100;

template <typename Real>
Real poly_eval(int m, const Real& x) {
    Real acc(1);
    for (int i = 0; i < m; ++i) acc = acc * x - 1;
    return acc;
}

template <typename Real>
Real poly_deriv(int m, const Real& x) {
    // Dual Horner: p tracks P, dp tracks P'.
    Real p(1), dp(0);
    for (int i = 0; i < m; ++i) {
        dp = dp * x + p;
        p = p * x - 1;
    }
    return dp;
}

template <typename Real>
Real two_pow(int n) {
    Real p(1);
    for (int i = 0; i < n; ++i) p *= 2;
    return p;
}

template <typename Real>
Real solve_root(int m, const Real& tol) {
    Real hi(2);
    Real lo = hi - Real(2) / two_pow<Real>(m);  // 2(1 - 2^-m)
    if (!(lo < hi)) {
        throw std::domain_error("perron_root: bracket collapses at this precision; raise digits");
    }
    // P(lo) < 0 < P(hi) = 1 analytically; bisect to a coarse interval first.
    Real a = lo, b = hi;
    while (b - a > Real(1) / 1000000) {
        Real mid = (a + b) / 2;
        if (poly_eval(m, mid) < 0)
            a = mid;
        else
            b = mid;
    }
    Real x = (a + b) / 2;
    for (int it = 0; it < 200; ++it) {
        Real f = poly_eval(m, x);
        Real df = poly_deriv(m, x);
        Real step = f / df;
        Real next = x - step;
        if (next < a || next > b) next = (a + b) / 2;  // keep Newton inside the bracket
        if (poly_eval(m, next) < 0)
            a = next;
        else
            b = next;
        Real delta = next > x ? next - x : x - next;
        x = next;
        if (delta <= tol * x) return x;
    }
    throw std::runtime_error("perron_root: no convergence for m=" + std::to_string(m) +
                             " at tolerance " + std::to_string(static_cast<double>(tol)));
}

// std::pow compounds rounding for large exponents; do it with exact division.
std::vector<double> inverse_powers(double rho, int m) {
    std::vector<double> d(static_cast<std::size_t>(m));
    double p = 1.0;
    for (int j = 0; j < m; ++j) {
        p /= rho;
        d[static_cast<std::size_t>(j)] = p;
    }
    return d;
}

}  // namespace

IncidenceMatrix::IncidenceMatrix(int m) : m_(m) {
    if (m < 2) throw std::domain_error("IncidenceMatrix: order must be >= 2");
    entries_.assign(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0);
    for (int i = 1; i <= m; ++i) {
        entries_[static_cast<std::size_t>((i - 1) * m)] = 1;  // sigma(i) starts with 1
        if (i < m) entries_[static_cast<std::size_t>((i - 1) * m + i)] = 1;  // then digit i+1
    }
}

std::int64_t IncidenceMatrix::entry(int i, int j) const {
    if (i < 1 || i > m_ || j < 1 || j > m_) {
        throw std::out_of_range("IncidenceMatrix::entry: index outside 1..m");
    }
    return entries_[static_cast<std::size_t>((i - 1) * m_ + (j - 1))];
}

IncidenceMatrix incidence_matrix(int m) { return IncidenceMatrix(m); }

double char_poly_eval(int m, double x) {
    if (m < 2) throw std::domain_error("char_poly_eval: order must be >= 2");
    return poly_eval(m, x);
}

PerronData perron_root(int m, double tolerance, int precision_digits) {
    if (m < 2) throw std::domain_error("perron_root: order must be >= 2");
    if (!(tolerance > 0)) throw std::domain_error("perron_root: tolerance must be > 0");

    double rho;
    if (precision_digits <= 18) {
        rho = static_cast<double>(solve_root<long double>(m, static_cast<long double>(tolerance)));
    } else if (precision_digits <= 50) {
        rho = static_cast<double>(solve_root<Float50>(m, Float50(tolerance)));
    } else {
        rho = static_cast<double>(solve_root<Float100>(m, Float100(tolerance)));
        precision_digits = std::min(precision_digits, 100);
    }

    PerronData p;
    p.m = m;
    p.rho = rho;
    p.precision_digits = precision_digits;
    p.left_eigenvector = inverse_powers(rho, m);
    p.poly_residual = std::abs(char_poly_eval(m, rho));
    // Solver error plus the rounding of rho itself to double.
    const double dp = std::abs(poly_deriv(m, rho));
    p.rho_error = (dp > 0 ? p.poly_residual / dp : 0.0) +
                  std::max(tolerance, std::numeric_limits<double>::epsilon() * rho);
    p.eig_residual = verify_left_eigenvector(p);
    return p;
}

double verify_left_eigenvector(const PerronData& p) {
    const IncidenceMatrix mat(p.m);
    const auto& d = p.left_eigenvector;
    double worst = 0.0;
    for (int j = 1; j <= p.m; ++j) {
        double acc = 0.0;
        for (int i = 1; i <= p.m; ++i) {
            acc += d[static_cast<std::size_t>(i - 1)] * static_cast<double>(mat.entry(i, j));
        }
        acc -= p.rho * d[static_cast<std::size_t>(j - 1)];
        worst = std::max(worst, std::abs(acc));
    }
    return worst;
}

double unit_sum_residual(const PerronData& p) {
    double sum = 0.0;
    for (double c : p.left_eigenvector) sum += c;
    return std::abs(sum - 1.0);
}

}  // namespace mbonacci
