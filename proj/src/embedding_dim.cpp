#include "jlg/embedding_dim.hpp"
#include "jlg/marginal.hpp"
#include "jlg/special.hpp"

#include <cmath>
#include <stdexcept>

namespace jlg {

namespace {

constexpr long long kSearchCeiling = 1ll << 32;

// positivity of the selected bound at dimension k, decided in log space
bool bound_positive(long long n, double epsilon, long long k, BoundKind kind) {
    const double c = static_cast<double>(pair_count(n));
    const double lf = log_failure_probability(k, epsilon);
    if (kind == BoundKind::marginal)
        return lf < -std::log(c);

    const double f = std::exp(lf);
    const unsigned long long cc = pair_count(n);
    if (cc % 2 == 0)
        return std::log(0.5 * c) + lf + std::log(2.0 - f) < 0.0;
    // odd: deficit = (C-1)/2 f (2-f) + f = f [ (C-1)/2 (2-f) + 1 ]
    return lf + std::log(0.5 * (c - 1.0) * (2.0 - f) + 1.0) < 0.0;
}

} // namespace

DimensionSearchResult min_dimension(long long n, double epsilon, BoundKind kind) {
    if (n < 2)
        throw std::domain_error("min_dimension: n must be at least 2");
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw std::domain_error("min_dimension: epsilon must lie in (0, 1)");

    DimensionSearchResult res;
    res.bound_kind = kind;

    // bracket: double k until the bound turns positive
    long long lo = 0, hi = 1;
    while (!bound_positive(n, epsilon, hi, kind)) {
        ++res.iterations;
        lo = hi;
        hi *= 2;
        if (hi >= kSearchCeiling)
            throw numerical_error(
                "min_dimension: no positive bound below k = 2^32; "
                "inputs are outside the searchable range");
    }
    ++res.iterations;
    res.bracket_low = lo;
    res.bracket_high = hi;

    // integer bisection: invariant bound(lo) <= 0 < bound(hi)
    while (hi - lo > 1) {
        const long long mid = lo + (hi - lo) / 2;
        ++res.iterations;
        if (bound_positive(n, epsilon, mid, kind))
            hi = mid;
        else
            lo = mid;
    }
    res.k_min = hi;

    // mu's monotonicity in k is unproven; verify the threshold locally
    bool clean = true;
    long long smallest_positive = res.k_min;
    for (long long k = std::max(1ll, res.k_min - 5); k <= res.k_min + 5; ++k) {
        const bool pos = bound_positive(n, epsilon, k, kind);
        if (pos && k < smallest_positive) smallest_positive = k;
        if (pos != (k >= res.k_min)) clean = false;
    }
    res.monotonicity_verified = clean;
    if (!clean) res.k_min = smallest_positive;
    return res;
}

long long dasgupta_dimension(long long n, double epsilon) {
    if (n < 2)
        throw std::domain_error("dasgupta_dimension: n must be at least 2");
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw std::domain_error("dasgupta_dimension: epsilon must lie in (0, 1)");
    const double denom = 3.0 * epsilon * epsilon - 2.0 * epsilon * epsilon * epsilon;
    return static_cast<long long>(
        std::ceil(24.0 * std::log(static_cast<double>(n)) / denom));
}

std::vector<RatioRow> dimension_ratio_sweep(const std::vector<long long>& n_grid,
                                            const std::vector<double>& eps_grid,
                                            bool parallel) {
    if (n_grid.empty() || eps_grid.empty())
        throw std::invalid_argument("dimension_ratio_sweep: grids must be nonempty");
    for (const long long n : n_grid)
        if (n < 10000 || n > 100000000)
            throw std::invalid_argument(
                "dimension_ratio_sweep: n must lie in [1e4, 1e8]");
    for (const double e : eps_grid)
        if (!(e >= 0.01) || !(e <= 0.2))
            throw std::invalid_argument(
                "dimension_ratio_sweep: epsilon must lie in [0.01, 0.2]");

    const std::size_t cells = n_grid.size() * eps_grid.size();
    std::vector<RatioRow> rows(cells);
    // independent cells; deterministic order because each writes its own slot
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::size_t idx = 0; idx < cells; ++idx) {
        const double eps = eps_grid[idx / n_grid.size()];
        const long long n = n_grid[idx % n_grid.size()];
        RatioRow row;
        row.n = n;
        row.epsilon = eps;
        row.k_min_marginal = min_dimension(n, eps, BoundKind::marginal).k_min;
        row.k_min_bivariate = min_dimension(n, eps, BoundKind::bivariate).k_min;
        row.k_dasgupta = dasgupta_dimension(n, eps);
        row.ratio = static_cast<double>(row.k_min_bivariate) /
                    static_cast<double>(row.k_dasgupta);
        rows[idx] = row;
    }
    return rows;
}

} // namespace jlg
