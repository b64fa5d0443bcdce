#include "jlg/bivariate.hpp"
#include "jlg/quadrature.hpp"
#include "jlg/special.hpp"

#include <cmath>
#include <limits>

namespace jlg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr long long kQuadratureMaxK = 300;

double kibble_log_density_checked(double v1, double v2, long long k, double rho_sq) {
    const double nu = 0.5 * static_cast<double>(k) - 1.0;
    const double one_minus = 1.0 - rho_sq;
    const double rho = std::sqrt(rho_sq);

    if (v1 == 0.0 || v2 == 0.0) {
        // prefactor (v1 v2)^(nu/2) dominates the Bessel limit I_nu(z) -> (z/2)^nu/Gamma(nu+1)
        if (nu > 0.0) return -kInf;
        if (nu < 0.0) return kInf; // k = 1: integrable edge singularity
        const double v = v1 + v2;  // k = 2: finite boundary value
        return -std::log(4.0) - std::log(one_minus) - v / (2.0 * one_minus);
    }

    const double sqrt_v1 = std::sqrt(v1);
    const double sqrt_v2 = std::sqrt(v2);
    const double z = sqrt_v1 * sqrt_v2 * rho / one_minus;
    const double diff = sqrt_v1 - sqrt_v2;
    const double exponent =
        -diff * diff / (2.0 * one_minus) - sqrt_v1 * sqrt_v2 / (1.0 + rho);
    return -std::log(4.0) - log_gamma(0.5 * static_cast<double>(k)) -
           std::log(one_minus) + 0.5 * nu * std::log(v1 * v2 / (4.0 * rho_sq)) +
           exponent + log_bessel_i_scaled(nu, z);
}

} // namespace

void validate(const BivariateGammaParams& params) {
    if (params.k < 1)
        throw std::domain_error("bivariate gamma: k must be a positive integer");
    if (!(params.rho_sq >= 0.0) || !(params.rho_sq <= 1.0))
        throw std::domain_error("bivariate gamma: rho_sq must lie in [0, 1]");
}

double kibble_log_density(double v1, double v2, const BivariateGammaParams& params) {
    validate(params);
    if (!(v1 >= 0.0) || !(v2 >= 0.0))
        throw std::domain_error("kibble_log_density: v1, v2 must be nonnegative");
    if (params.rho_sq == 0.0 || params.rho_sq == 1.0)
        throw std::domain_error(
            "kibble_log_density: rho_sq in {0,1} is singular; use the "
            "product-of-marginals or degenerate branch instead");
    return kibble_log_density_checked(v1, v2, params.k, params.rho_sq);
}

Probability joint_cdf(double v1, double v2, const BivariateGammaParams& params) {
    validate(params);
    if (!(v1 >= 0.0) || !(v2 >= 0.0))
        throw std::domain_error("joint_cdf: v1, v2 must be nonnegative");
    if (params.k > kQuadratureMaxK)
        throw std::invalid_argument(
            "joint_cdf: k > 300 is outside the quadrature accuracy contract; "
            "use the Gaussian approximation");
    if (v1 > v2) std::swap(v1, v2); // H is symmetric; canonical order makes it exact
    if (v1 == 0.0) return make_probability(0.0, ProbMethod::closed_form);

    const double s = 0.5 * static_cast<double>(params.k);
    if (params.rho_sq == 0.0) {
        const double p = reg_lower_incomplete_gamma(s, 0.5 * v1) *
                         reg_lower_incomplete_gamma(s, 0.5 * v2);
        return make_probability(p, ProbMethod::closed_form);
    }
    if (params.rho_sq == 1.0) {
        // V1 = V2 almost surely
        return make_probability(reg_lower_incomplete_gamma(s, 0.5 * v1),
                                ProbMethod::closed_form);
    }

    const long long k = params.k;
    const double rho_sq = params.rho_sq;
    auto density = [k, rho_sq](double a, double b) {
        return std::exp(kibble_log_density_checked(a, b, k, rho_sq));
    };
    const QuadratureResult r = adaptive_integrate_2d(density, 0.0, v1, 0.0, v2, 1e-9);
    return make_probability(r.value, ProbMethod::quadrature);
}

Probability joint_success_probability(long long k, double epsilon, double rho_sq,
                                      JointMethod method) {
    const BivariateGammaParams params{k, rho_sq};
    validate(params);
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw std::domain_error("joint_success_probability: epsilon must lie in (0,1)");

    const double mu = success_probability(k, epsilon).value;
    if (rho_sq == 0.0) return make_probability(mu * mu, ProbMethod::closed_form);
    if (rho_sq == 1.0) return make_probability(mu, ProbMethod::closed_form);

    JointMethod resolved = method;
    if (resolved == JointMethod::automatic)
        resolved = k <= kQuadratureMaxK ? JointMethod::quadrature
                                        : JointMethod::gaussian_approx;

    if (resolved == JointMethod::gaussian_approx)
        return gaussian_approx_joint_success_probability(k, epsilon, rho_sq);

    if (k > kQuadratureMaxK)
        throw std::invalid_argument(
            "joint_success_probability: quadrature requested for k > 300");

    // direct integral over the success square [k(1-eps), k(1+eps)]^2; equals
    // the four-term CDF combination H(U,U) - 2 H(U,L) + H(L,L) by additivity
    // but avoids the cancellation between those large terms
    const double lo = static_cast<double>(k) * (1.0 - epsilon);
    const double hi = static_cast<double>(k) * (1.0 + epsilon);
    auto density = [k, rho_sq](double a, double b) {
        return std::exp(kibble_log_density_checked(a, b, k, rho_sq));
    };
    const QuadratureResult r = adaptive_integrate_2d(density, lo, hi, lo, hi, 1e-9);
    return make_probability(r.value, ProbMethod::quadrature);
}

Probability gaussian_approx_joint_success_probability(long long k, double epsilon,
                                                      double rho_sq) {
    if (k < 2)
        throw std::invalid_argument(
            "gaussian_approx_joint_success_probability: requires k >= 2");
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw std::domain_error(
            "gaussian_approx_joint_success_probability: epsilon must lie in (0,1)");
    if (!(rho_sq >= 0.0) || !(rho_sq < 1.0)) {
        if (rho_sq == 1.0)
            throw std::domain_error(
                "gaussian_approx_joint_success_probability: rho_sq = 1 is a "
                "singular normal; the degenerate case short-circuits to mu");
        throw std::domain_error(
            "gaussian_approx_joint_success_probability: rho_sq must lie in [0,1)");
    }

    // (V1,V2) ~ N((k,k), k Omega): standardized success interval is
    // (+-u) with u = eps k / sqrt(2k); correlation of the pair is rho_sq
    const double u = epsilon * std::sqrt(0.5 * static_cast<double>(k));
    const double p = std_bivariate_normal_cdf(u, u, rho_sq) -
                     2.0 * std_bivariate_normal_cdf(u, -u, rho_sq) +
                     std_bivariate_normal_cdf(-u, -u, rho_sq);
    return make_probability(p, ProbMethod::gaussian_approx);
}

std::complex<double> joint_characteristic_function(double t1, double t2,
                                                   const BivariateGammaParams& params) {
    validate(params);
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> w =
        (1.0 - 2.0 * i * t1) * (1.0 - 2.0 * i * t2) + 4.0 * t1 * t2 * params.rho_sq;
    return std::pow(w, -0.5 * static_cast<double>(params.k));
}

} // namespace jlg
