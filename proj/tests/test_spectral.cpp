#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mbonacci/spectral.hpp"
#include "mbonacci/substitution.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>

using namespace mbonacci;

namespace {

using Float50 = boost::multiprecision::cpp_bin_float_50;

// Independent 50-digit oracle: plain bisection on the monic polynomial.
Float50 bisect_root_50(int m) {
    auto poly = [m](const Float50& x) {
        Float50 acc(1);
        for (int i = 0; i < m; ++i) acc = acc * x - 1;
        return acc;
    };
    Float50 pow2(1);
    for (int i = 0; i < m; ++i) pow2 *= 2;
    Float50 lo = Float50(2) - Float50(2) / pow2;
    Float50 hi(2);
    for (int it = 0; it < 220; ++it) {
        Float50 mid = (lo + hi) / 2;
        if (poly(mid) < 0)
            lo = mid;
        else
            hi = mid;
    }
    return (lo + hi) / 2;
}

}  // namespace

TEST_CASE("incidence matrices match the displayed patterns") {
    const IncidenceMatrix m2(2);
    CHECK(m2.entry(1, 1) == 1);
    CHECK(m2.entry(1, 2) == 1);
    CHECK(m2.entry(2, 1) == 1);
    CHECK(m2.entry(2, 2) == 0);

    const IncidenceMatrix m3(3);
    const std::int64_t expect3[3][3] = {{1, 1, 0}, {1, 0, 1}, {1, 0, 0}};
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) CHECK(m3.entry(i, j) == expect3[i - 1][j - 1]);

    const IncidenceMatrix m5(5);
    for (int j = 1; j <= 5; ++j) CHECK(m5.entry(5, j) == (j == 1 ? 1 : 0));

    CHECK_THROWS_AS(IncidenceMatrix(1), std::domain_error);
    CHECK_THROWS_AS(m2.entry(0, 1), std::out_of_range);
    CHECK_THROWS_AS(m2.entry(1, 3), std::out_of_range);
}

TEST_CASE("incidence entries equal weights of substituted digits") {
    for (int m = 2; m <= 12; ++m) {
        const IncidenceMatrix mat(m);
        for (int i = 1; i <= m; ++i) {
            Word single((Alphabet(m)));
            single.push_back(i);
            const Word image = apply_substitution(single);
            for (int j = 1; j <= m; ++j) CHECK(mat.entry(i, j) == digit_weight(image, j));
        }
    }
}

TEST_CASE("characteristic polynomial values") {
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    CHECK(std::abs(char_poly_eval(2, golden)) < 1e-14);  // lambda^2 = lambda + 1
    CHECK(char_poly_eval(3, 2.0) == 1.0);                // 8 - 4 - 2 - 1
    for (int m = 2; m <= 10; ++m) CHECK(char_poly_eval(m, 0.0) == -1.0);
}

TEST_CASE("the analytic bracket pins the root for m up to 30") {
    for (int m = 2; m <= 30; ++m) {
        const double lo = 2.0 * (1.0 - std::ldexp(1.0, -m));
        CHECK(char_poly_eval(m, lo) < 0.0);
        CHECK(char_poly_eval(m, 2.0) > 0.0);
    }
}

TEST_CASE("perron root of the Fibonacci substitution is the golden mean") {
    const PerronData p = perron_root(2);
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;  // exact algebraic value
    CHECK(std::abs(p.rho - golden) < 1e-12);
    CHECK(p.rho_error < 1e-13);
}

TEST_CASE("perron root of the Tribonacci substitution") {
    const PerronData p = perron_root(3);
    // Tribonacci constant, 1.83929... to five decimals
    CHECK(std::round(p.rho * 1e5) / 1e5 == doctest::Approx(1.83929).epsilon(1e-12));
    // independent 50-digit bisection oracle
    CHECK(std::abs(p.rho - static_cast<double>(bisect_root_50(3))) < 1e-14);
    CHECK(std::abs(perron_root(2).rho - static_cast<double>(bisect_root_50(2))) < 1e-14);
}

TEST_CASE("roots stay inside the bracket and increase with m") {
    double prev = 0.0;
    for (int m = 2; m <= 30; ++m) {
        const PerronData p = perron_root(m);
        CHECK(p.rho > 2.0 * (1.0 - std::ldexp(1.0, -m)));
        CHECK(p.rho < 2.0);
        CHECK(p.rho > prev);
        prev = p.rho;
    }
}

TEST_CASE("left eigenvector identity and unit sum") {
    for (int m = 2; m <= 12; ++m) {
        const PerronData p = perron_root(m);
        CHECK(verify_left_eigenvector(p) < 1e-12);
        CHECK(unit_sum_residual(p) < 1e-12);
        CHECK(p.eig_residual == verify_left_eigenvector(p));

        // components strictly decreasing and positive
        for (std::size_t j = 0; j < p.left_eigenvector.size(); ++j) {
            CHECK(p.left_eigenvector[j] > 0.0);
            if (j > 0) CHECK(p.left_eigenvector[j] < p.left_eigenvector[j - 1]);
        }
    }
}

TEST_CASE("residuals are reported against the stored double") {
    const PerronData p = perron_root(2);
    CHECK(p.poly_residual == std::abs(char_poly_eval(2, p.rho)));
    CHECK(p.poly_residual < 1e-14);
}

TEST_CASE("extended precision path agrees with the native one") {
    const PerronData base = perron_root(3);
    const PerronData wide = perron_root(3, 1e-15, 50);
    CHECK(base.rho == wide.rho);
    CHECK(wide.precision_digits == 50);

    // m = 40 needs nothing special but exercises a crowded bracket
    const PerronData p40 = perron_root(40, 1e-15, 50);
    CHECK(p40.rho > 2.0 * (1.0 - std::ldexp(1.0, -40)));
    CHECK(p40.rho < 2.0);
    CHECK(p40.rho > perron_root(39, 1e-15, 50).rho);
}

TEST_CASE("bracket collapse is reported, not silently mangled") {
    // At native precision the bracket endpoint 2(1-2^-m) rounds to 2 for large m.
    CHECK_THROWS_AS(perron_root(80, 1e-15, 15), std::domain_error);
    const PerronData p = perron_root(80, 1e-15, 50);  // multiprecision still brackets
    CHECK(p.rho <= 2.0);
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(perron_root(1), std::domain_error);
    CHECK_THROWS_AS(perron_root(2, 0.0), std::domain_error);
    CHECK_THROWS_AS(perron_root(2, -1e-9), std::domain_error);
    CHECK_THROWS_AS(char_poly_eval(1, 1.0), std::domain_error);
}
