#pragma once

#include <stdexcept>

namespace jlg {

// Thrown when an iterative numerical procedure fails to converge.
// The CLI maps this to exit code 3.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ln Gamma(x) for x > 0. Relative error <= 1e-13 on [0.5, 1e6].
double log_gamma(double x);

// Regularized lower incomplete gamma P(s, x) for s > 0, x >= 0.
// Series for x < s+1, continued fraction otherwise; absolute error <= 1e-12.
double reg_lower_incomplete_gamma(double s, double x);

// log P(s, x) and log Q(s, x) = log(1 - P).  These keep full relative
// precision in the far tails (values down to ~1e-300), which the
// embedding-dimension search and the two-tail failure probability need.
double log_reg_lower_incomplete_gamma(double s, double x);
double log_reg_upper_incomplete_gamma(double s, double x);

// e^(-x) I_order(x), the exponentially scaled modified Bessel function of
// the first kind. Relative error <= 1e-10 for x in [0, 1e5], order in
// [0, 5000]; order -0.5 is also supported (it appears in the bivariate
// density when k = 1). Strictly positive for x > 0.
double bessel_i_scaled(double order, double x);
double log_bessel_i_scaled(double order, double x);

// Phi(x), the standard normal CDF.
double std_normal_cdf(double x);

// P(X <= a, Y <= b) for standard bivariate normal with correlation r,
// |r| < 1. Absolute error <= 1e-10; exactly symmetric in (a, b).
double std_bivariate_normal_cdf(double a, double b, double r);

} // namespace jlg
