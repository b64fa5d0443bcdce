#pragma once

#include <cstdint>
#include <stdexcept>

namespace jlg {

// How a Probability value was obtained.
enum class ProbMethod { closed_form, quadrature, gaussian_approx, monte_carlo };

struct Probability {
    double value = 0.0;
    ProbMethod method = ProbMethod::closed_form;
};

// Validates and returns a Probability, absorbing quadrature roundoff of up
// to 1e-9 outside [0,1]; anything worse is a genuine numerical failure.
Probability make_probability(double value, ProbMethod method);

// Problem instance: n points, embedding dimension k, distance tolerance eps.
struct EmbeddingSpec {
    long long n = 0;
    long long k = 0;
    double epsilon = 0.0;
};

// Throws std::domain_error unless n >= 2, k >= 1, 0 < epsilon < 1.
void validate(const EmbeddingSpec& spec);

// C(n,2) = n(n-1)/2, computed in 128-bit arithmetic so it is exact for
// every n up to 1e9 (and far beyond).
unsigned long long pair_count(long long n);

// Probability that one projection error V ~ Gamma(k/2, 2) lands in
// [k(1-eps), k(1+eps)]:  mu = P(k/2, k(1+eps)/2) - P(k/2, k(1-eps)/2).
Probability success_probability(long long k, double epsilon);

// 1 - mu, but summed from the two tail masses directly so the result keeps
// ~14 significant digits when mu approaches 1. (1 - success_probability
// would bottom out at the 1e-16 resolution of doubles near 1.)
Probability failure_probability(long long k, double epsilon);

// log(1 - mu); usable down to tail masses around 1e-300.
double log_failure_probability(long long k, double epsilon);

} // namespace jlg
