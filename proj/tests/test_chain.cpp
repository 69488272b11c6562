#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mbonacci/chain.hpp"

#include <cmath>
#include <random>
#include <set>

using namespace mbonacci;

TEST_CASE("first points of the Fibonacci chain") {
    const Chain c = build_chain(2, -5, 5);
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;

    CHECK(c.lambda(0) == 0.0);
    CHECK(c.lambda(1) == doctest::Approx(1.0 / phi).epsilon(1e-15));
    // 1/phi + 1/phi^2 = 1 exactly (phi^2 = phi + 1)
    CHECK(c.lambda(2) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c.lambda(3) == doctest::Approx(phi).epsilon(1e-15));
    CHECK(c.lambda(-1) == doctest::Approx(-1.0 / phi).epsilon(1e-15));
}

TEST_CASE("first point of the Tribonacci chain") {
    const Chain c = build_chain(3, -2, 2);
    CHECK(c.lambda(1) == doctest::Approx(1.0 / c.perron().rho).epsilon(1e-15));
    CHECK(c.lambda(1) == doctest::Approx(0.5436890126920764).epsilon(1e-12));
}

TEST_CASE("chains are strictly increasing with gaps from the inverse-power alphabet") {
    for (int m : {2, 3, 4}) {
        const Chain c = build_chain(m, -300, 300);
        std::set<int> digits_seen;
        for (std::int64_t k = c.k_min(); k < c.k_max(); ++k) {
            const double gap = c.lambda(k + 1) - c.lambda(k);
            CHECK(gap > 0.0);
            const int j = c.gap_digit(k);
            digits_seen.insert(j);
            CHECK(gap ==
                  doctest::Approx(c.perron().left_eigenvector[static_cast<std::size_t>(j - 1)])
                      .epsilon(1e-9));
            CHECK(gap >= c.min_gap() * (1 - 1e-9));
            CHECK(gap <= c.max_gap() * (1 + 1e-9));
        }
        CHECK(static_cast<int>(digits_seen.size()) == m);  // all m gap types occur
    }
}

TEST_CASE("window length telescopes through digit counts") {
    std::mt19937 rng(4242);
    for (int m : {2, 3}) {
        const Chain c = build_chain(m, -2000, 2000);
        for (int round = 0; round < 300; ++round) {
            const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 500);
            const std::int64_t k =
                c.k_min() + static_cast<std::int64_t>(rng() % (4000 - n));
            const auto counts = c.window_counts(k, n);
            double sum = 0.0;
            std::int64_t total = 0;
            for (int j = 1; j <= m; ++j) {
                sum += static_cast<double>(counts[static_cast<std::size_t>(j - 1)]) *
                       c.perron().left_eigenvector[static_cast<std::size_t>(j - 1)];
                total += counts[static_cast<std::size_t>(j - 1)];
            }
            CHECK(total == n);
            CHECK(c.window_length(k, n) == doctest::Approx(sum).epsilon(1e-15));
            CHECK(c.window_length(k, n) ==
                  doctest::Approx(c.lambda(k + n) - c.lambda(k)).epsilon(1e-10));
        }
    }
}

TEST_CASE("closed-form upper density") {
    const PerronData p2 = perron_root(2);
    CHECK(std::round(upper_density_closed_form(p2) * 1e5) / 1e5 == 1.89443);
    CHECK(density_lower_bound(2) == 1.25);
    CHECK(density_lower_bound(3) == doctest::Approx(2.0625).epsilon(1e-15));

    double prev = 0.0;
    for (int m = 2; m <= 30; ++m) {
        const double d = upper_density_closed_form(perron_root(m));
        CHECK(d < 3.0);
        CHECK(d > prev);
        CHECK(d >= density_lower_bound(m) - 1e-12);
        prev = d;
    }
    CHECK(prev > 2.99);  // m = 30 approaches the limit 3
}

TEST_CASE("max point count in a sliding interval") {
    const Chain c = build_chain(2, 0, 3000);
    const double phi = c.perron().rho;
    const double inv_phi2 = 1.0 / (phi * phi);

    // below the smallest gap only one point fits
    CHECK(count_max_in_window(c, 0.9 * c.min_gap()) == 1);
    // just past the phi^-2 gap an adjacent pair is caught wherever digit 2 occurs
    CHECK(count_max_in_window(c, inv_phi2 + 1e-9) == 2);

    CHECK_THROWS_AS(count_max_in_window(c, 1e9), std::out_of_range);
    CHECK_THROWS_AS(count_max_in_window(c, -1.0), std::domain_error);

    const Chain tiny = build_chain(2, 0, 2000);
    const std::int64_t n500 = count_max_in_window(tiny, 500.0);
    CHECK(std::abs(static_cast<double>(n500) / 500.0 - 1.89443) / 1.89443 < 0.02);
}

TEST_CASE("density scan reproduces the closed form band") {
    const Chain c = build_chain(2, 0, 20000);
    const DensityReport rep = density_scan(c, 250.0, 500.0, 10.0);
    CHECK(rep.samples.size() == 26);
    CHECK(rep.lower_bound <= rep.closed_form);
    CHECK(rep.closed_form < 3.0);
    for (const auto& s : rep.samples) {
        CHECK(s.n >= 1);
        CHECK(std::abs(s.ratio - rep.closed_form) / rep.closed_form < 0.02);
        CHECK(s.ratio >= rep.lower_bound - 0.1);  // sandwich with finite-size slack
        CHECK(s.ratio <= 3.0);
    }
}

TEST_CASE("degenerate scan grid gives a single sample") {
    const Chain c = build_chain(2, 0, 2000);
    const DensityReport rep = density_scan(c, 300.0, 300.0, 1.0);
    REQUIRE(rep.samples.size() == 1);
    CHECK(rep.samples[0].r == 300.0);
}

TEST_CASE("Tribonacci scan approaches its own closed form") {
    const Chain c = build_chain(3, 0, 20000);
    const double target = upper_density_closed_form(c.perron());
    const DensityReport rep = density_scan(c, 400.0, 500.0, 50.0);
    for (const auto& s : rep.samples) {
        CHECK(std::abs(s.ratio - target) / target < 0.02);
    }
}

TEST_CASE("chain window validation") {
    CHECK_THROWS_AS(build_chain(2, 1, 5), std::domain_error);
    CHECK_THROWS_AS(build_chain(2, -5, -1), std::domain_error);
    const Chain c = build_chain(2, -10, 10);
    CHECK_THROWS_AS(c.lambda(11), std::out_of_range);
    CHECK_THROWS_AS(c.lambda(-11), std::out_of_range);
    CHECK_THROWS_AS(c.window_length(5, 10), std::out_of_range);
    CHECK(c.size() == 21);
}
