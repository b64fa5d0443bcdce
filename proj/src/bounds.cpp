#include "jlg/bounds.hpp"

#include <cmath>

namespace jlg {

namespace {

void validate_mu(double mu) {
    if (!(mu >= 0.0) || !(mu <= 1.0))
        throw std::domain_error("bounds: mu must lie in [0, 1]");
}

// trivariate deficit for C events split into triples plus a leftover of
// C mod 3 events; the two-event leftover is bounded as a pair (1 - mu^2),
// which beats two singletons since 1 - mu^2 <= 2 (1 - mu)
double trivariate_deficit(unsigned long long c, double one_minus_mu,
                          double one_minus_mu_sq, double one_minus_mu_cu) {
    const double triples = static_cast<double>(c / 3);
    double deficit = triples * one_minus_mu_cu;
    switch (c % 3) {
        case 1: deficit += one_minus_mu; break;
        case 2: deficit += one_minus_mu_sq; break;
        default: break;
    }
    return deficit;
}

} // namespace

double marginal_lower_bound(long long n, double mu) {
    validate_mu(mu);
    return 1.0 - static_cast<double>(pair_count(n)) * (1.0 - mu);
}

double bivariate_lower_bound(long long n, double mu) {
    validate_mu(mu);
    const unsigned long long c = pair_count(n);
    const double f = 1.0 - mu;
    const double pairs = static_cast<double>(c / 2);
    // 1 - mu^2 = f (2 - f); the direct form 1 - mu*mu flushes the f^2 term
    // once mu is within ~1e-8 of one
    double deficit = pairs * f * (2.0 - f);
    if (c % 2 == 1) deficit += f;
    return 1.0 - deficit;
}

double bound_delta(long long n, double mu) {
    validate_mu(mu);
    const unsigned long long c = pair_count(n);
    const double one_minus = 1.0 - mu;
    const double half_pairs = static_cast<double>(c % 2 == 0 ? c : c - 1) * 0.5;
    return half_pairs * one_minus * one_minus;
}

TrivariateBound trivariate_lower_bound(long long n, double mu) {
    validate_mu(mu);
    const unsigned long long c = pair_count(n);
    const double f = 1.0 - mu;
    const double deficit = trivariate_deficit(c, f, f * (2.0 - f),
                                              f * (1.0 + mu + mu * mu));
    return TrivariateBound{1.0 - deficit, true};
}

GeometryValue geometry_comparison_value(long long n, double mu) {
    validate_mu(mu);
    const double c = static_cast<double>(pair_count(n));
    return GeometryValue{1.0 - 0.5 * c * (1.0 - mu), false};
}

double data_dependent_lower_bound(const EmbeddingSpec& spec,
                                  const PairingAssignment& pairing) {
    validate(spec);
    const unsigned long long c = pair_count(spec.n);
    if (pairing.rho_sq.size() != c / 2)
        throw std::invalid_argument(
            "data_dependent_lower_bound: pairing length must be floor(C(n,2)/2)");

    const double mu = success_probability(spec.k, spec.epsilon).value;
    double deficit = 0.0;
    for (const double r : pairing.rho_sq) {
        const double p =
            joint_success_probability(spec.k, spec.epsilon, r).value;
        deficit += 1.0 - p;
    }
    if (c % 2 == 1) deficit += 1.0 - mu;
    return 1.0 - deficit;
}

BoundReport make_bound_report(const EmbeddingSpec& spec) {
    validate(spec);
    BoundReport report;
    report.spec = spec;
    report.mu = success_probability(spec.k, spec.epsilon);
    report.failure = failure_probability(spec.k, spec.epsilon).value;

    const unsigned long long c = pair_count(spec.n);
    const double cd = static_cast<double>(c);
    const double mu = report.mu.value;
    const double f = report.failure;
    // complements expanded through f so they keep f's relative precision:
    // 1 - mu^2 = f (2 - f), 1 - mu^3 = f (1 + mu + mu^2)
    const double one_minus_mu_sq = f * (2.0 - f);
    const double one_minus_mu_cu = f * (1.0 + mu + mu * mu);

    report.pair_count_parity = (c % 2 == 0) ? Parity::even : Parity::odd;
    report.marginal_lb = 1.0 - cd * f;

    double biv_deficit = static_cast<double>(c / 2) * one_minus_mu_sq;
    if (c % 2 == 1) biv_deficit += f;
    report.bivariate_lb = 1.0 - biv_deficit;

    const double half_pairs = static_cast<double>(c % 2 == 0 ? c : c - 1) * 0.5;
    report.delta = half_pairs * f * f;

    report.trivariate_lb =
        1.0 - trivariate_deficit(c, f, one_minus_mu_sq, one_minus_mu_cu);
    report.trivariate_conditional = true;
    return report;
}

} // namespace jlg
