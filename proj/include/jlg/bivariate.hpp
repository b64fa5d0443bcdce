#pragma once

#include "jlg/marginal.hpp"

#include <complex>

namespace jlg {

// Parameters of the bivariate gamma law of two projection errors: both
// marginals are Gamma(k/2, 2) (mean k, variance 2k) and cor[V1,V2] = rho_sq,
// the squared dot product of the two unit difference directions.
struct BivariateGammaParams {
    long long k = 0;
    double rho_sq = 0.0;
};

void validate(const BivariateGammaParams& params);

// Evaluation strategy for joint probabilities. automatic resolves to
// quadrature for k <= 300 and to the Gaussian approximation above that,
// where the central limit theorem holds to better than 1e-4.
enum class JointMethod { automatic, quadrature, gaussian_approx };

// log of the joint density
//   h(v1,v2) = (v1 v2 / (4 rho_sq))^((k/2-1)/2) / (4 Gamma(k/2) (1-rho_sq))
//              * exp(-(v1+v2)/(2(1-rho_sq))) * I_{k/2-1}(sqrt(v1 v2 rho_sq)/(1-rho_sq)),
// assembled fully in log/scaled space. The Bessel argument's e^z growth is
// cancelled analytically against the exponential term:
//   -(v1+v2)/(2(1-r^2)) + z = -(sqrt(v1)-sqrt(v2))^2/(2(1-r^2)) - sqrt(v1 v2)/(1+|r|),
// which is what keeps the exponent finite near the v1 = v2 ridge.
// Requires 0 < rho_sq < 1: both endpoints are singular laws and are handled
// by the callers' product/degenerate branches.
double kibble_log_density(double v1, double v2, const BivariateGammaParams& params);

// H(v1,v2) = P(V1 <= v1, V2 <= v2) by adaptive quadrature of the density
// over [0,v1] x [0,v2]; absolute error <= 1e-8. Rejects k > 300, where the
// quadrature accuracy contract would silently degrade; callers switch to
// the Gaussian approximation there.
Probability joint_cdf(double v1, double v2, const BivariateGammaParams& params);

// p(S1 and S2): probability both errors land in [k(1-eps), k(1+eps)].
// rho_sq = 0 short-circuits to mu^2 (independence), rho_sq = 1 to mu
// (degenerate V1 = V2); otherwise integrates the density over the success
// square, or evaluates the Gaussian approximation, per method.
Probability joint_success_probability(long long k, double epsilon, double rho_sq,
                                      JointMethod method = JointMethod::automatic);

// Large-k bivariate normal approximation: (V1,V2) ~ N((k,k), k*Omega) with
// Omega = [[2, 2 rho_sq],[2 rho_sq, 2]], evaluated through the four-term
// rectangle combination of the bivariate normal CDF. rho_sq = 1 is a domain
// error (singular normal); the caller's short-circuit owns that case.
Probability gaussian_approx_joint_success_probability(long long k, double epsilon,
                                                      double rho_sq);

// phi(t1,t2) = ((1-2i t1)(1-2i t2) + 4 t1 t2 rho_sq)^(-k/2), principal branch.
std::complex<double> joint_characteristic_function(double t1, double t2,
                                                   const BivariateGammaParams& params);

} // namespace jlg
