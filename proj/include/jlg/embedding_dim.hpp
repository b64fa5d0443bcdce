#pragma once

#include <vector>

namespace jlg {

enum class BoundKind { marginal, bivariate };

struct DimensionSearchResult {
    long long k_min = 0;
    BoundKind bound_kind = BoundKind::marginal;
    int iterations = 0;            // positivity evaluations spent bracketing + bisecting
    long long bracket_low = 0;     // final doubling bracket: bound(low) <= 0 < bound(high)
    long long bracket_high = 0;
    bool monotonicity_verified = false; // local scan around k_min found a clean threshold
};

// Smallest k making the chosen lower bound positive, by bracket doubling
// plus integer bisection on the positivity predicate, evaluated entirely in
// log space:
//   marginal positive  <=>  log f < -log C(n,2)
//   bivariate positive <=>  log C/2 + log f + log(2-f) < 0          (C even)
//                           log f + log((C-1)/2 (2-f) + 1) < 0      (C odd)
// where f = 1 - mu. The log-space forms resolve thresholds near f ~ 1e-17
// (n = 1e8) that plain doubles cannot represent. Monotonicity of mu in k is
// an empirical observation, not a theorem, so after bisection the window
// k_min-5 .. k_min+5 is rescanned; a clean threshold sets
// monotonicity_verified, anything else clears it and reports the smallest
// positive k seen.
DimensionSearchResult min_dimension(long long n, double epsilon, BoundKind kind);

// ceil(24 ln n / (3 eps^2 - 2 eps^3)), the Markov-inequality dimension.
long long dasgupta_dimension(long long n, double epsilon);

struct RatioRow {
    long long n = 0;
    double epsilon = 0.0;
    long long k_min_marginal = 0;
    long long k_min_bivariate = 0;
    long long k_dasgupta = 0;
    double ratio = 0.0; // k_min_bivariate / k_dasgupta
};

// Row-major sweep (epsilon outer, n inner) of the numeric-vs-analytic
// dimension comparison over n in [1e4, 1e8], epsilon in [0.01, 0.2]. Cells
// are independent and evaluated in parallel; row order is deterministic.
std::vector<RatioRow> dimension_ratio_sweep(const std::vector<long long>& n_grid,
                                            const std::vector<double>& eps_grid,
                                            bool parallel = true);

} // namespace jlg
