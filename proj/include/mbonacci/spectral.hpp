#pragma once

#include <cstdint>
#include <vector>

namespace mbonacci {

/// Incidence matrix of sigma_m: entry(i, j) counts occurrences of digit j in
/// sigma(i). For the Rauzy family the first column and the superdiagonal are
/// all ones, everything else zero.
class IncidenceMatrix {
public:
    explicit IncidenceMatrix(int m);

    int order() const { return m_; }
    std::int64_t entry(int i, int j) const;  // i, j in 1..m

private:
    int m_;
    std::vector<std::int64_t> entries_;  // row-major
};

IncidenceMatrix incidence_matrix(int m);

/// Perron-Frobenius data of sigma_m. rho is the unique root of
/// x^m - x^{m-1} - ... - x - 1 in (2(1 - 2^-m), 2); the left eigenvector is
/// (rho^-1, ..., rho^-m), which sums to 1.
///
/// rho_error is a guaranteed bound on |rho - true root| for the stored double;
/// residuals are evaluated at the stored double so downstream consumers can
/// propagate them. For large m the polynomial is steep near 2, so poly_residual
/// scales like |P'(rho)| * rho_error rather than being uniformly tiny.
struct PerronData {
    int m = 0;
    double rho = 0.0;
    double rho_error = 0.0;
    std::vector<double> left_eigenvector;
    double poly_residual = 0.0;  // |P_m(rho)|
    double eig_residual = 0.0;   // max-norm of d*M - rho*d
    int precision_digits = 15;
};

/// Monic characteristic polynomial x^m - x^{m-1} - ... - x - 1, Horner scheme.
double char_poly_eval(int m, double x);

/// Root by bisection on the analytic bracket, then Newton polishing.
/// precision_digits selects the working arithmetic: <= 18 native long double,
/// otherwise a multiprecision float (capped at 100 digits). Throws a runtime
/// error with diagnostics if the iteration cap is hit, and a domain error when
/// the bracket collapses at the requested precision (very large m).
PerronData perron_root(int m, double tolerance = 1e-15, int precision_digits = 15);

/// Max-norm of d*M - rho*d recomputed from the stored data. The first
/// coordinate of the residual vector equals sum_j rho^-j - 1, the unit-sum
/// identity of the eigenvector.
double verify_left_eigenvector(const PerronData& p);

/// |sum_{j=1}^m rho^-j - 1|.
double unit_sum_residual(const PerronData& p);

}  // namespace mbonacci
