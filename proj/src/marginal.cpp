#include "jlg/marginal.hpp"
#include "jlg/special.hpp"

#include <cmath>

namespace jlg {

namespace {

void validate_k_eps(long long k, double epsilon) {
    if (k < 1)
        throw std::domain_error("embedding dimension k must be a positive integer");
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw std::domain_error("tolerance epsilon must lie in (0, 1)");
}

// logsumexp for two values, tolerant of -inf
double log_add(double la, double lb) {
    if (la < lb) std::swap(la, lb);
    if (std::isinf(lb) && lb < 0.0) return la;
    return la + std::log1p(std::exp(lb - la));
}

} // namespace

Probability make_probability(double value, ProbMethod method) {
    if (!(value > -1e-9) || !(value < 1.0 + 1e-9))
        throw numerical_error("probability outside [0,1] beyond roundoff tolerance");
    if (value < 0.0) value = 0.0;
    if (value > 1.0) value = 1.0;
    return Probability{value, method};
}

void validate(const EmbeddingSpec& spec) {
    if (spec.n < 2)
        throw std::domain_error("point count n must be at least 2");
    validate_k_eps(spec.k, spec.epsilon);
}

unsigned long long pair_count(long long n) {
    if (n < 2)
        throw std::domain_error("pair_count: n must be at least 2");
    const unsigned __int128 wide =
        static_cast<unsigned __int128>(n) * static_cast<unsigned __int128>(n - 1) / 2;
    if (wide > static_cast<unsigned __int128>(~0ull))
        throw std::domain_error("pair_count: n too large");
    return static_cast<unsigned long long>(wide);
}

Probability success_probability(long long k, double epsilon) {
    validate_k_eps(k, epsilon);
    const double s = 0.5 * static_cast<double>(k);
    const double lo = s * (1.0 - epsilon);
    const double hi = s * (1.0 + epsilon);
    const double mu =
        reg_lower_incomplete_gamma(s, hi) - reg_lower_incomplete_gamma(s, lo);
    return make_probability(mu, ProbMethod::closed_form);
}

Probability failure_probability(long long k, double epsilon) {
    validate_k_eps(k, epsilon);
    const double s = 0.5 * static_cast<double>(k);
    const double lo = s * (1.0 - epsilon);
    const double hi = s * (1.0 + epsilon);
    // left and right tails computed separately: each is obtained at full
    // relative precision from its own expansion
    const double left = std::exp(log_reg_lower_incomplete_gamma(s, lo));
    const double right = std::exp(log_reg_upper_incomplete_gamma(s, hi));
    return make_probability(left + right, ProbMethod::closed_form);
}

double log_failure_probability(long long k, double epsilon) {
    validate_k_eps(k, epsilon);
    const double s = 0.5 * static_cast<double>(k);
    const double lo = s * (1.0 - epsilon);
    const double hi = s * (1.0 + epsilon);
    return log_add(log_reg_lower_incomplete_gamma(s, lo),
                   log_reg_upper_incomplete_gamma(s, hi));
}

} // namespace jlg
