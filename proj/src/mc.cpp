#include "jlg/mc.hpp"
#include "jlg/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

namespace jlg {

namespace {

constexpr double kPivotTol = 1e-12;

void validate_config(const SimulationConfig& config) {
    if (config.samples < 1)
        throw std::invalid_argument("simulation: samples must be positive");
    if (config.chunk_size < 1)
        throw std::invalid_argument("simulation: chunk_size must be positive");
}

// Runs body(chunk_index, first_sample, count, partial&) over all chunks and
// merges partials in chunk-index order. The merge order, not the execution
// order, determines the result, so the parallel and serial paths are
// bit-identical.
template <class Partial, class Body>
Partial run_chunked(const SimulationConfig& config, bool parallel, Body body) {
    const long long nchunks =
        (config.samples + config.chunk_size - 1) / config.chunk_size;
    std::vector<Partial> parts(static_cast<std::size_t>(nchunks));

    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long c = 0; c < nchunks; ++c) {
            const long long first = c * config.chunk_size;
            const long long count = std::min(config.chunk_size, config.samples - first);
            body(c, first, count, parts[static_cast<std::size_t>(c)]);
        }
    } else {
        for (long long c = 0; c < nchunks; ++c) {
            const long long first = c * config.chunk_size;
            const long long count = std::min(config.chunk_size, config.samples - first);
            body(c, first, count, parts[static_cast<std::size_t>(c)]);
        }
    }

    Partial total{};
    for (const Partial& p : parts) total.merge(p);
    return total;
}

// one error tuple: V_i = sum over k rows of squared correlated normals
inline void draw_tuple(NormalSampler& normals, long long k, int m,
                       const double* lower, double* v, double* z, double* y) {
    std::memset(v, 0, sizeof(double) * static_cast<std::size_t>(m));
    for (long long row = 0; row < k; ++row) {
        for (int i = 0; i < m; ++i) z[i] = normals();
        for (int i = 0; i < m; ++i) {
            double acc = 0.0;
            const double* li = lower + static_cast<std::size_t>(i) * m;
            for (int j = 0; j <= i; ++j) acc += li[j] * z[j];
            y[i] = acc;
        }
        for (int i = 0; i < m; ++i) v[i] += y[i] * y[i];
    }
}

double binomial_se(double p_hat, long long n) {
    const double var = std::max(0.0, p_hat * (1.0 - p_hat));
    return std::sqrt(var / static_cast<double>(n));
}

} // namespace

CorrelationStructure CorrelationStructure::identity(int m) {
    CorrelationStructure s;
    s.m = m;
    s.rho.assign(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) s.rho[static_cast<std::size_t>(i) * m + i] = 1.0;
    return s;
}

CorrelationStructure CorrelationStructure::pair(double rho12) {
    CorrelationStructure s = identity(2);
    s.rho[1] = s.rho[2] = rho12;
    return s;
}

CorrelationStructure CorrelationStructure::triple(double rho12, double rho13,
                                                  double rho23) {
    CorrelationStructure s = identity(3);
    s.rho[1] = s.rho[3] = rho12;
    s.rho[2] = s.rho[6] = rho13;
    s.rho[5] = s.rho[7] = rho23;
    return s;
}

void validate(const CorrelationStructure& s) {
    if (s.m < 1)
        throw std::invalid_argument("correlation structure: need at least one direction");
    if (s.rho.size() != static_cast<std::size_t>(s.m) * s.m)
        throw std::invalid_argument("correlation structure: matrix size mismatch");
    for (int i = 0; i < s.m; ++i) {
        if (s.at(i, i) != 1.0)
            throw std::invalid_argument("correlation structure: diagonal must be 1");
        for (int j = 0; j < i; ++j) {
            if (s.at(i, j) != s.at(j, i))
                throw std::invalid_argument("correlation structure: must be symmetric");
            if (!(std::fabs(s.at(i, j)) <= 1.0))
                throw std::invalid_argument("correlation structure: |rho| must be <= 1");
        }
    }
}

CholeskyFactor factor_structure(const CorrelationStructure& s) {
    validate(s);
    const int m = s.m;
    CholeskyFactor f;
    f.m = m;
    f.lower.assign(static_cast<std::size_t>(m) * m, 0.0);
    auto L = [&f, m](int i, int j) -> double& {
        return f.lower[static_cast<std::size_t>(i) * m + j];
    };

    for (int j = 0; j < m; ++j) {
        double pivot = s.at(j, j);
        for (int t = 0; t < j; ++t) pivot -= L(j, t) * L(j, t);
        if (pivot < -kPivotTol)
            throw std::invalid_argument(
                "correlation structure is not positive semidefinite");
        // clamp a pivot within tolerance of zero: rank-deficient but valid
        const double diag = pivot <= kPivotTol ? 0.0 : std::sqrt(pivot);
        L(j, j) = diag;
        for (int i = j + 1; i < m; ++i) {
            double off = s.at(i, j);
            for (int t = 0; t < j; ++t) off -= L(i, t) * L(j, t);
            if (diag == 0.0) {
                // a zero pivot admits only a zero column beneath it
                if (std::fabs(off) > 1e-7)
                    throw std::invalid_argument(
                        "correlation structure is not positive semidefinite");
                L(i, j) = 0.0;
            } else {
                L(i, j) = off / diag;
            }
        }
    }
    return f;
}

void sample_error_tuples(long long k, const CorrelationStructure& s,
                         const SimulationConfig& config,
                         const std::function<void(const double*, int)>& sink) {
    if (k < 1) throw std::invalid_argument("sample_error_tuples: k must be positive");
    validate_config(config);
    const CholeskyFactor f = factor_structure(s);
    const int m = s.m;
    std::vector<double> v(m), z(m), y(m);

    const long long nchunks =
        (config.samples + config.chunk_size - 1) / config.chunk_size;
    for (long long c = 0; c < nchunks; ++c) {
        const long long count =
            std::min(config.chunk_size, config.samples - c * config.chunk_size);
        NormalSampler normals(chunk_seed(config.seed, static_cast<std::uint64_t>(c)));
        for (long long t = 0; t < count; ++t) {
            draw_tuple(normals, k, m, f.lower.data(), v.data(), z.data(), y.data());
            sink(v.data(), m);
        }
    }
}

McEstimate estimate_joint_success(long long k, double epsilon,
                                  const CorrelationStructure& s,
                                  const SimulationConfig& config, bool parallel) {
    if (k < 1) throw std::invalid_argument("estimate_joint_success: k must be positive");
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw std::invalid_argument("estimate_joint_success: epsilon must lie in (0,1)");
    validate_config(config);
    const CholeskyFactor f = factor_structure(s);
    const int m = s.m;
    const double lo = static_cast<double>(k) * (1.0 - epsilon);
    const double hi = static_cast<double>(k) * (1.0 + epsilon);

    struct Partial {
        long long hits = 0;
        void merge(const Partial& o) { hits += o.hits; }
    };

    const Partial total = run_chunked<Partial>(
        config, parallel,
        [&](long long c, long long, long long count, Partial& part) {
            NormalSampler normals(chunk_seed(config.seed, static_cast<std::uint64_t>(c)));
            std::vector<double> v(m), z(m), y(m);
            for (long long t = 0; t < count; ++t) {
                draw_tuple(normals, k, m, f.lower.data(), v.data(), z.data(), y.data());
                bool all = true;
                for (int i = 0; i < m; ++i) all = all && v[i] >= lo && v[i] <= hi;
                part.hits += all ? 1 : 0;
            }
        });

    McEstimate est;
    est.samples = config.samples;
    est.seed = config.seed;
    est.mean = static_cast<double>(total.hits) / static_cast<double>(config.samples);
    est.std_error = binomial_se(est.mean, config.samples);
    return est;
}

TupleMoments estimate_moments(long long k, const CorrelationStructure& s,
                              const SimulationConfig& config, bool parallel) {
    if (k < 1) throw std::invalid_argument("estimate_moments: k must be positive");
    validate_config(config);
    const CholeskyFactor f = factor_structure(s);
    const int m = s.m;
    const int npairs = m * (m - 1) / 2;
    const double shift = static_cast<double>(k); // center at the known mean

    // raw sums of W_i = V_i - k: s1/s2 per direction; s11/s21/s12/s22 per
    // pair, enough for the delta-method variance of the covariance estimate
    struct Partial {
        std::vector<double> s1, s2, s11, s21, s12, s22;
        void init(int m_, int npairs_) {
            s1.assign(m_, 0.0);
            s2.assign(m_, 0.0);
            s11.assign(npairs_, 0.0);
            s21.assign(npairs_, 0.0);
            s12.assign(npairs_, 0.0);
            s22.assign(npairs_, 0.0);
        }
        void merge(const Partial& o) {
            if (s1.empty()) {
                *this = o;
                return;
            }
            if (o.s1.empty()) return;
            for (std::size_t i = 0; i < s1.size(); ++i) s1[i] += o.s1[i];
            for (std::size_t i = 0; i < s2.size(); ++i) s2[i] += o.s2[i];
            for (std::size_t i = 0; i < s11.size(); ++i) {
                s11[i] += o.s11[i];
                s21[i] += o.s21[i];
                s12[i] += o.s12[i];
                s22[i] += o.s22[i];
            }
        }
    };

    const Partial total = run_chunked<Partial>(
        config, parallel,
        [&](long long c, long long, long long count, Partial& part) {
            part.init(m, npairs);
            NormalSampler normals(chunk_seed(config.seed, static_cast<std::uint64_t>(c)));
            std::vector<double> v(m), z(m), y(m);
            for (long long t = 0; t < count; ++t) {
                draw_tuple(normals, k, m, f.lower.data(), v.data(), z.data(), y.data());
                for (int i = 0; i < m; ++i) {
                    const double w = v[i] - shift;
                    part.s1[i] += w;
                    part.s2[i] += w * w;
                }
                int p = 0;
                for (int i = 0; i < m; ++i)
                    for (int j = i + 1; j < m; ++j, ++p) {
                        const double a = v[i] - shift, b = v[j] - shift;
                        part.s11[p] += a * b;
                        part.s21[p] += a * a * b;
                        part.s12[p] += a * b * b;
                        part.s22[p] += a * a * b * b;
                    }
            }
        });

    const double n = static_cast<double>(config.samples);
    TupleMoments out;
    out.samples = config.samples;
    out.seed = config.seed;
    out.mean.resize(m);
    out.mean_se.resize(m);
    for (int i = 0; i < m; ++i) {
        const double mw = total.s1[i] / n;
        out.mean[i] = shift + mw;
        const double var = std::max(0.0, total.s2[i] / n - mw * mw);
        out.mean_se[i] = std::sqrt(var / n);
    }
    out.cov.resize(npairs);
    out.cov_se.resize(npairs);
    int p = 0;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j, ++p) {
            const double ma = total.s1[i] / n, mb = total.s1[j] / n;
            const double cov = total.s11[p] / n - ma * mb;
            out.cov[p] = cov;
            // xi_t = (a_t - ma)(b_t - mb); Var(xi) from the raw sums:
            // sum xi^2 = s22 - 2 mb s12 - 2 ma s21 + mb^2 s2a + ma^2 s2b
            //            + 4 ma mb s11 - 3 n ma^2 mb^2
            const double sum_xi_sq = total.s22[p] - 2.0 * mb * total.s12[p] -
                                     2.0 * ma * total.s21[p] +
                                     mb * mb * total.s2[i] + ma * ma * total.s2[j] +
                                     4.0 * ma * mb * total.s11[p] -
                                     3.0 * n * ma * ma * mb * mb;
            const double var_xi = std::max(0.0, sum_xi_sq / n - cov * cov);
            out.cov_se[p] = std::sqrt(var_xi / n);
        }
    return out;
}

ConjectureReport test_three_success_conjecture(long long k, double epsilon,
                                               const CorrelationStructure& s,
                                               const SimulationConfig& config,
                                               bool parallel) {
    if (s.m != 3)
        throw std::invalid_argument(
            "test_three_success_conjecture: requires a 3x3 structure");
    ConjectureReport report;
    report.estimate = estimate_joint_success(k, epsilon, s, config, parallel);
    report.mu = success_probability(k, epsilon).value;
    report.mu_cubed = report.mu * report.mu * report.mu;
    const double se = report.estimate.std_error;
    report.margin_in_se =
        se > 0.0 ? (report.estimate.mean - report.mu_cubed) / se
                 : std::numeric_limits<double>::infinity() *
                       (report.estimate.mean >= report.mu_cubed ? 1.0 : -1.0);
    report.verdict = report.margin_in_se < -4.0 ? ConjectureVerdict::violation_candidate
                                                : ConjectureVerdict::consistent;
    return report;
}

double partial_correlation(double rho12, double rho13, double rho23) {
    if (!(std::fabs(rho13) < 1.0) || !(std::fabs(rho23) < 1.0))
        throw std::domain_error(
            "partial_correlation: conditioning correlations must satisfy |rho| < 1");
    return (rho12 - rho13 * rho23) /
           std::sqrt((1.0 - rho13 * rho13) * (1.0 - rho23 * rho23));
}

CorrelationStructure random_structure(int m, std::uint64_t seed, int d) {
    if (m < 1) throw std::invalid_argument("random_structure: m must be positive");
    if (m > d)
        throw std::invalid_argument(
            "random_structure: need m <= d for realizable unit vectors");
    NormalSampler normals(chunk_seed(seed, 0));
    std::vector<double> vecs(static_cast<std::size_t>(m) * d);
    for (int i = 0; i < m; ++i) {
        double norm_sq = 0.0;
        do {
            norm_sq = 0.0;
            for (int j = 0; j < d; ++j) {
                const double g = normals();
                vecs[static_cast<std::size_t>(i) * d + j] = g;
                norm_sq += g * g;
            }
        } while (norm_sq < 1e-30); // astronomically unlikely; keeps the unit direction defined
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (int j = 0; j < d; ++j) vecs[static_cast<std::size_t>(i) * d + j] *= inv;
    }
    CorrelationStructure s = CorrelationStructure::identity(m);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            double dot = 0.0;
            for (int t = 0; t < d; ++t)
                dot += vecs[static_cast<std::size_t>(i) * d + t] *
                       vecs[static_cast<std::size_t>(j) * d + t];
            s.rho[static_cast<std::size_t>(i) * m + j] = dot;
            s.rho[static_cast<std::size_t>(j) * m + i] = dot;
        }
    return s;
}

EndToEndReport end_to_end_experiment(const PointSet& points, long long k,
                                     double epsilon, const SimulationConfig& config,
                                     bool parallel) {
    if (points.n < 2)
        throw std::invalid_argument("end_to_end_experiment: need at least two points");
    if (points.d < 1 ||
        points.coords.size() != static_cast<std::size_t>(points.n) * points.d)
        throw std::invalid_argument("end_to_end_experiment: malformed point set");
    const EmbeddingSpec spec{points.n, k, epsilon};
    validate(spec);
    validate_config(config);

    const long long n = points.n;
    const int d = points.d;
    const unsigned long long npairs_wide = pair_count(n);
    if (npairs_wide > 10000)
        throw std::invalid_argument(
            "end_to_end_experiment: point set too large to simulate all pairs");
    const int npairs = static_cast<int>(npairs_wide);

    // unit difference directions, pairs (i<j) lexicographic
    std::vector<double> dirs(static_cast<std::size_t>(npairs) * d);
    {
        int p = 0;
        for (long long i = 0; i < n; ++i)
            for (long long j = i + 1; j < n; ++j, ++p) {
                double norm_sq = 0.0;
                for (int t = 0; t < d; ++t) {
                    const double diff = points.coords[static_cast<std::size_t>(i) * d + t] -
                                        points.coords[static_cast<std::size_t>(j) * d + t];
                    dirs[static_cast<std::size_t>(p) * d + t] = diff;
                    norm_sq += diff * diff;
                }
                if (norm_sq == 0.0)
                    throw std::invalid_argument(
                        "end_to_end_experiment: duplicate points have no unit direction");
                const double inv = 1.0 / std::sqrt(norm_sq);
                for (int t = 0; t < d; ++t) dirs[static_cast<std::size_t>(p) * d + t] *= inv;
            }
    }

    const double lo = static_cast<double>(k) * (1.0 - epsilon);
    const double hi = static_cast<double>(k) * (1.0 + epsilon);

    struct Partial {
        long long no_failure = 0;
        std::vector<long long> pair_failures;
        void merge(const Partial& o) {
            no_failure += o.no_failure;
            if (pair_failures.empty())
                pair_failures = o.pair_failures;
            else if (!o.pair_failures.empty())
                for (std::size_t i = 0; i < pair_failures.size(); ++i)
                    pair_failures[i] += o.pair_failures[i];
        }
    };

    const Partial total = run_chunked<Partial>(
        config, parallel,
        [&](long long c, long long, long long count, Partial& part) {
            part.pair_failures.assign(npairs, 0);
            NormalSampler normals(chunk_seed(config.seed, static_cast<std::uint64_t>(c)));
            std::vector<double> g(d), v(npairs);
            for (long long t = 0; t < count; ++t) {
                std::fill(v.begin(), v.end(), 0.0);
                // one d x k projection matrix, consumed row by row
                for (long long row = 0; row < k; ++row) {
                    for (int a = 0; a < d; ++a) g[a] = normals();
                    for (int p = 0; p < npairs; ++p) {
                        const double* w = dirs.data() + static_cast<std::size_t>(p) * d;
                        double dot = 0.0;
                        for (int a = 0; a < d; ++a) dot += g[a] * w[a];
                        v[p] += dot * dot;
                    }
                }
                bool clean = true;
                for (int p = 0; p < npairs; ++p) {
                    const bool fail = v[p] < lo || v[p] > hi;
                    part.pair_failures[p] += fail ? 1 : 0;
                    clean = clean && !fail;
                }
                part.no_failure += clean ? 1 : 0;
            }
        });

    EndToEndReport report;
    report.no_failure.samples = config.samples;
    report.no_failure.seed = config.seed;
    report.no_failure.mean =
        static_cast<double>(total.no_failure) / static_cast<double>(config.samples);
    report.no_failure.std_error = binomial_se(report.no_failure.mean, config.samples);
    report.per_pair_failures = total.pair_failures;
    report.bounds = make_bound_report(spec);
    report.geometry_value =
        geometry_comparison_value(spec.n, report.bounds.mu.value).value;

    // dot products of the event directions, event order (i<j) lexicographic
    report.pair_rho.resize(static_cast<std::size_t>(npairs) * (npairs - 1) / 2);
    {
        std::size_t q = 0;
        for (int a = 0; a < npairs; ++a)
            for (int b = a + 1; b < npairs; ++b, ++q) {
                double dot = 0.0;
                for (int t = 0; t < d; ++t)
                    dot += dirs[static_cast<std::size_t>(a) * d + t] *
                           dirs[static_cast<std::size_t>(b) * d + t];
                report.pair_rho[q] = dot;
            }
    }

    // identity pairing of consecutive events for the data-dependent bound
    PairingAssignment pairing;
    for (int e = 0; e + 1 < npairs; e += 2) {
        // rho of events (e, e+1) within the flattened upper triangle
        const int a = e, b = e + 1;
        double dot = 0.0;
        for (int t = 0; t < d; ++t)
            dot += dirs[static_cast<std::size_t>(a) * d + t] *
                   dirs[static_cast<std::size_t>(b) * d + t];
        pairing.rho_sq.push_back(std::min(1.0, dot * dot));
    }
    report.data_dependent_lb = data_dependent_lower_bound(spec, pairing);
    return report;
}

} // namespace jlg
