#pragma once

#include "jlg/bounds.hpp"
#include "jlg/marginal.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace jlg {

// Signed correlation matrix of m projection directions: unit diagonal,
// symmetric, |rho| <= 1, positive semidefinite. Signs matter only inside
// this module (the Gaussian sampler needs them); the error distribution
// itself depends on the squares alone.
struct CorrelationStructure {
    int m = 0;
    std::vector<double> rho; // m x m, row-major

    double at(int i, int j) const { return rho[static_cast<std::size_t>(i) * m + j]; }
    static CorrelationStructure identity(int m);
    // convenience for m = 2 / m = 3
    static CorrelationStructure pair(double rho12);
    static CorrelationStructure triple(double rho12, double rho13, double rho23);
};

void validate(const CorrelationStructure& s);

// Lower-triangular square root with PSD pivot clamping: pivots within
// 1e-12 of zero are treated as exactly zero (rank-deficient structures such
// as perfectly collinear directions), pivots below -1e-12 reject the matrix.
struct CholeskyFactor {
    int m = 0;
    std::vector<double> lower; // m x m, row-major
};
CholeskyFactor factor_structure(const CorrelationStructure& s);

struct SimulationConfig {
    long long samples = 0;
    std::uint64_t seed = 0;
    long long chunk_size = 65536;
};

// Estimates are bit-identical for fixed (samples, seed, chunk_size)
// regardless of thread count or execution order: each chunk derives its own
// generator from (seed, chunk index) and partial results merge in chunk
// order.
struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0; // sample standard deviation / sqrt(samples)
    long long samples = 0;
    std::uint64_t seed = 0;
};

// Streams the correlated error tuples (V_1,...,V_m), V_i = sum of k squared
// correlated standard normals, to the sink in sample order. Serial by
// construction (a streaming consumer fixes the order); the statistical
// kernels below share the same per-chunk sampling and run parallel.
void sample_error_tuples(long long k, const CorrelationStructure& s,
                         const SimulationConfig& config,
                         const std::function<void(const double*, int)>& sink);

// Frequency of all m errors landing in [k(1-eps), k(1+eps)], with binomial
// standard error.
McEstimate estimate_joint_success(long long k, double epsilon,
                                  const CorrelationStructure& s,
                                  const SimulationConfig& config,
                                  bool parallel = true);

// First and second moments of the error tuple: marginal means (expected k)
// and one covariance per pair i<j in lexicographic order (expected
// 2 k rho_ij^2). Standard errors via the delta method on shifted one-pass
// accumulators.
struct TupleMoments {
    std::vector<double> mean, mean_se;
    std::vector<double> cov, cov_se; // pairs (0,1), (0,2), (1,2), ...
    long long samples = 0;
    std::uint64_t seed = 0;
};
TupleMoments estimate_moments(long long k, const CorrelationStructure& s,
                              const SimulationConfig& config, bool parallel = true);

// Monte Carlo probe of the three-success inequality p(S1,S2,S3) >= mu^3.
// No analytic ground truth exists (the inequality is conjectural); a
// violation candidate is an estimate more than 4 standard errors below
// mu^3, worth reproducing from the recorded seed, not a test failure.
enum class ConjectureVerdict { consistent, violation_candidate };
struct ConjectureReport {
    McEstimate estimate;
    double mu = 0.0;
    double mu_cubed = 0.0;
    double margin_in_se = 0.0; // (estimate - mu^3) / SE
    ConjectureVerdict verdict = ConjectureVerdict::consistent;
};
ConjectureReport test_three_success_conjecture(long long k, double epsilon,
                                               const CorrelationStructure& s,
                                               const SimulationConfig& config,
                                               bool parallel = true);

// (rho12 - rho13 rho23) / sqrt((1-rho13^2)(1-rho23^2)); zero exactly when
// directions 1 and 2 are conditionally independent given direction 3.
double partial_correlation(double rho12, double rho13, double rho23);

// Realizable random structure: pairwise dot products of m independent
// uniform unit vectors in R^d, hence positive semidefinite by construction.
CorrelationStructure random_structure(int m, std::uint64_t seed, int d);

// Full pipeline on an explicit point set: every trial draws one d x k
// standard normal matrix, forms all C(n,2) projection errors, and records
// whether any distance failed. Rejects duplicate points (their difference
// has no unit direction).
struct PointSet {
    long long n = 0;
    int d = 0;
    std::vector<double> coords; // n x d, row-major
};

struct EndToEndReport {
    McEstimate no_failure;                 // frequency of zero failures
    BoundReport bounds;                    // analytic bounds at (n, k, eps)
    double data_dependent_lb = 0.0;        // identity pairing of the actual geometry
    double geometry_value = 0.0;           // collinear comparison value
    std::vector<long long> per_pair_failures; // pairs (i<j) lexicographic
    std::vector<double> pair_rho;          // direction dot products, same order
};

EndToEndReport end_to_end_experiment(const PointSet& points, long long k,
                                     double epsilon, const SimulationConfig& config,
                                     bool parallel = true);

} // namespace jlg
