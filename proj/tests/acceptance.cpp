// Acceptance gate: one line per criterion, nonzero exit if any fails.
// Usage: jlg_acceptance <path-to-jlgamma-binary> <data-dir>

#include "jlg/bivariate.hpp"
#include "jlg/bounds.hpp"
#include "jlg/csv.hpp"
#include "jlg/embedding_dim.hpp"
#include "jlg/marginal.hpp"
#include "jlg/mc.hpp"
#include "jlg/rng.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

namespace {

int g_failures = 0;

#define CHECK_C(cond)                                                        \
    do {                                                                     \
        if (!(cond)) {                                                       \
            std::printf("  [FAIL] %s:%d  %s\n", __FILE__, __LINE__, #cond);  \
            ++g_failures;                                                    \
        }                                                                    \
    } while (0)

double now_s() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

struct Criterion {
    explicit Criterion(int number, const char* title)
        : number_(number), title_(title), start_(now_s()), failures_before_(g_failures) {}
    ~Criterion() {
        const char* verdict = g_failures == failures_before_ ? "PASS" : "FAIL";
        std::printf("criterion %2d %s  (%.1fs)  %s\n", number_, verdict,
                    now_s() - start_, title_);
        std::fflush(stdout);
    }
    int number_;
    const char* title_;
    double start_;
    int failures_before_;
};

// chi-square CDF with even dof k as the independent finite-sum oracle:
// P(V <= x) = 1 - e^{-x/2} sum_{j<k/2} (x/2)^j / j!
double chi_sq_cdf_even(long long k, double x) {
    const double h = 0.5 * x;
    double term = 1.0, sum = 1.0;
    for (long long j = 1; j < k / 2; ++j) {
        term *= h / static_cast<double>(j);
        sum += term;
    }
    return 1.0 - std::exp(-h) * sum;
}

void criterion_1() {
    Criterion c(1, "marginal success probability vs finite-sum chi-square oracle");
    for (long long k : {2, 4, 10, 100}) {
        for (double eps : {0.1, 0.3, 0.5}) {
            const double kd = static_cast<double>(k);
            const double oracle =
                chi_sq_cdf_even(k, kd * (1.0 + eps)) - chi_sq_cdf_even(k, kd * (1.0 - eps));
            const double got = jlg::success_probability(k, eps).value;
            CHECK_C(std::abs(got - oracle) <= 1e-12);
        }
    }
}

void criterion_2() {
    Criterion c(2, "joint success endpoints at k=1e3 and k=1e4, eps=0.025");
    const double p0_1e3 = jlg::joint_success_probability(1000, 0.025, 0.0).value;
    const double p1_1e3 = jlg::joint_success_probability(1000, 0.025, 1.0).value;
    const double p0_1e4 = jlg::joint_success_probability(10000, 0.025, 0.0).value;
    const double p1_1e4 = jlg::joint_success_probability(10000, 0.025, 1.0).value;
    CHECK_C(std::abs(p0_1e3 - 0.18) <= 0.01);
    CHECK_C(std::abs(p1_1e3 - 0.42) <= 0.01);
    CHECK_C(std::abs(p0_1e4 - 0.85) <= 0.01);
    CHECK_C(std::abs(p1_1e4 - 0.92) <= 0.01);
}

void criterion_3() {
    Criterion c(3, "bound improvement near 1e-14 at n=1e5, k=1e4, eps=0.1");
    const double mu = jlg::success_probability(10000, 0.1).value;
    const double delta = jlg::bound_delta(100000, mu);
    CHECK_C(delta > 1e-15);
    CHECK_C(delta < 1e-13);
}

void criterion_4() {
    Criterion c(4, "quadrature vs normal approximation at k=300 within 1e-4");
    double worst = 0.0;
    for (int i = 1; i <= 9; ++i) {
        const double rho_sq = 0.1 * static_cast<double>(i);
        for (double eps : {0.01, 0.025, 0.05}) {
            const double q =
                jlg::joint_success_probability(300, eps, rho_sq,
                                               jlg::JointMethod::quadrature)
                    .value;
            const double g =
                jlg::gaussian_approx_joint_success_probability(300, eps, rho_sq).value;
            worst = std::max(worst, std::abs(q - g));
        }
    }
    std::printf("  worst |quadrature - gaussian| = %.3e\n", worst);
    CHECK_C(worst <= 1e-4);
}

void criterion_5() {
    Criterion c(5, "mu^2 <= joint success <= mu sandwich over the quadrature grid");
    for (long long k : {10, 50, 150, 300}) {
        for (double eps : {0.05, 0.1, 0.2}) {
            const double mu = jlg::success_probability(k, eps).value;
            for (int i = 1; i <= 9; ++i) {
                const double rho_sq = 0.1 * static_cast<double>(i);
                const double p = jlg::joint_success_probability(k, eps, rho_sq).value;
                CHECK_C(p >= mu * mu - 1e-8);
                CHECK_C(p <= mu + 1e-8);
            }
        }
    }
}

void criterion_6() {
    Criterion c(6, "sample covariance matches 2 k rho^2 within 4 SE at 1e6 samples");
    struct Cell {
        long long k;
        double rho;
    };
    std::uint64_t seed = 60001;
    for (const Cell cell : {Cell{10, 0.2}, Cell{30, 0.6}, Cell{100, 0.9}}) {
        const jlg::SimulationConfig config{1000000, seed++, 65536};
        const jlg::TupleMoments m = jlg::estimate_moments(
            cell.k, jlg::CorrelationStructure::pair(cell.rho), config);
        const double target = 2.0 * static_cast<double>(cell.k) * cell.rho * cell.rho;
        std::printf("  k=%lld rho=%.1f: cov %.4f target %.4f SE %.4f\n", cell.k,
                    cell.rho, m.cov[0], target, m.cov_se[0]);
        CHECK_C(std::abs(m.cov[0] - target) <= 4.0 * m.cov_se[0]);
    }
}

void criterion_7() {
    Criterion c(7, "dimension search equality and 0.78..0.94 ratio on the 5x20 grid");
    std::vector<long long> ns;
    for (const double v : jlg::parse_grid("logspace:4:8:20"))
        ns.push_back(std::llround(v));
    const std::vector<double> eps = jlg::parse_grid("linspace:0.01:0.2:5");
    const auto rows = jlg::dimension_ratio_sweep(ns, eps);
    CHECK_C(rows.size() == 100);
    double lo_ratio = 1e9, hi_ratio = -1e9;
    for (const auto& row : rows) {
        CHECK_C(row.k_min_marginal == row.k_min_bivariate);
        CHECK_C(row.ratio >= 0.78);
        CHECK_C(row.ratio <= 0.94);
        lo_ratio = std::min(lo_ratio, row.ratio);
        hi_ratio = std::max(hi_ratio, row.ratio);
    }
    std::printf("  ratio range [%.4f, %.4f]\n", lo_ratio, hi_ratio);
}

void criterion_8() {
    Criterion c(8, "bivariate bound dominates the marginal bound, strictly below mu=1");
    // n=2 has a single pair event, so the two bounds coincide there
    CHECK_C(jlg::bivariate_lower_bound(2, 0.5) == jlg::marginal_lower_bound(2, 0.5));
    for (long long n : {3, 4, 7, 50, 1000, 100000}) {
        for (double mu : {0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 1.0 - 1e-9}) {
            const double mlb = jlg::marginal_lower_bound(n, mu);
            const double blb = jlg::bivariate_lower_bound(n, mu);
            CHECK_C(blb >= mlb);
            // strict once the analytic gap floor(C/2) (1-mu)^2 is
            // representable at the bound's magnitude
            const double gap = jlg::bound_delta(n, mu);
            if (gap > 1e-13 * std::max(1.0, std::abs(mlb))) CHECK_C(blb > mlb);
        }
        CHECK_C(jlg::bivariate_lower_bound(n, 1.0) == jlg::marginal_lower_bound(n, 1.0));
    }
}

jlg::PointSet load_points(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::printf("  [FAIL] cannot open fixture %s\n", path.c_str());
        ++g_failures;
        return jlg::PointSet{};
    }
    return jlg::parse_points(in);
}

void criterion_9(const std::string& data_dir) {
    Criterion c(9, "end-to-end Monte Carlo vs the analytic bounds on bundled fixtures");

    const jlg::PointSet right_angle = load_points(data_dir + "/right_angle_3pt.txt");
    if (right_angle.n > 0) {
        const jlg::SimulationConfig config{1000000, 20240816, 65536};
        const jlg::EndToEndReport r =
            jlg::end_to_end_experiment(right_angle, 30, 0.4, config);
        std::printf("  right angle: freq %.6f bound %.6f SE %.2e\n",
                    r.no_failure.mean, r.bounds.bivariate_lb, r.no_failure.std_error);
        CHECK_C(r.no_failure.mean >=
                r.bounds.bivariate_lb - 4.0 * r.no_failure.std_error);
    }

    // collinear geometry: the comparison value 1 - C(1-mu)/2 and the exact
    // probability mu differ by (1-mu)/2, so the check runs at a k where that
    // gap sits inside the Monte Carlo resolution
    const jlg::PointSet collinear = load_points(data_dir + "/collinear_3pt.txt");
    if (collinear.n > 0) {
        const jlg::SimulationConfig config{1000000, 828501, 65536};
        const jlg::EndToEndReport r =
            jlg::end_to_end_experiment(collinear, 285, 0.4, config);
        std::printf("  collinear: freq %.8f comparison %.8f SE %.2e\n",
                    r.no_failure.mean, r.geometry_value, r.no_failure.std_error);
        CHECK_C(std::abs(r.no_failure.mean - r.geometry_value) <=
                4.0 * r.no_failure.std_error);
    }
}

void criterion_10() {
    Criterion c(10, "three-success probe: no violation candidates, provable cases agree");
    const long long k = 40;
    const double eps = 0.2;
    const double mu = jlg::success_probability(k, eps).value;

    int candidates = 0;
    const std::uint64_t master = 424242;
    for (int i = 0; i < 50; ++i) {
        const jlg::CorrelationStructure s =
            jlg::random_structure(3, jlg::chunk_seed(master, 2u * i), 5);
        const jlg::SimulationConfig config{100000, jlg::chunk_seed(master, 2u * i + 1),
                                           65536};
        const jlg::ConjectureReport r =
            jlg::test_three_success_conjecture(k, eps, s, config);
        if (r.verdict == jlg::ConjectureVerdict::violation_candidate) {
            ++candidates;
            std::printf("  violation candidate: draw %d margin %.2f SE\n", i,
                        r.margin_in_se);
        }
    }
    CHECK_C(candidates == 0);

    // provable case 1: independence, p = mu^3
    {
        const jlg::SimulationConfig config{1000000, 101, 65536};
        const jlg::ConjectureReport r = jlg::test_three_success_conjecture(
            k, eps, jlg::CorrelationStructure::identity(3), config);
        CHECK_C(std::abs(r.estimate.mean - r.mu_cubed) <= 4.0 * r.estimate.std_error);
    }
    // provable case 2: full collinearity, p = mu
    {
        const jlg::SimulationConfig config{1000000, 102, 65536};
        const jlg::ConjectureReport r = jlg::test_three_success_conjecture(
            k, eps, jlg::CorrelationStructure::triple(1.0, 1.0, 1.0), config);
        CHECK_C(std::abs(r.estimate.mean - mu) <= 4.0 * r.estimate.std_error);
        CHECK_C(r.verdict == jlg::ConjectureVerdict::consistent);
    }
    // provable case 3: zero partial correlation, p = p(S1,S3) p(S2,S3) / mu
    {
        CHECK_C(jlg::partial_correlation(0.2, 0.5, 0.4) == 0.0);
        const jlg::SimulationConfig config{1000000, 103, 65536};
        const jlg::ConjectureReport r = jlg::test_three_success_conjecture(
            k, eps, jlg::CorrelationStructure::triple(0.2, 0.5, 0.4), config);
        const double p13 = jlg::joint_success_probability(k, eps, 0.25).value;
        const double p23 = jlg::joint_success_probability(k, eps, 0.16).value;
        const double predicted = p13 * p23 / mu;
        std::printf("  factorized case: estimate %.6f predicted %.6f SE %.2e\n",
                    r.estimate.mean, predicted, r.estimate.std_error);
        CHECK_C(std::abs(r.estimate.mean - predicted) <= 4.0 * r.estimate.std_error);
    }
}

std::string run_command(const std::string& cmd, int& exit_code) {
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        exit_code = -1;
        return out;
    }
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

void criterion_11(const std::string& binary, const std::string& data_dir) {
    Criterion c(11, "repeated seeded commands produce byte-identical output");
    const std::string simulate = "'" + binary + "' simulate --data '" + data_dir +
                                 "/right_angle_3pt.txt' --k 10 --eps 0.3 " +
                                 "--samples 20000 --seed 99 2>&1";
    const std::string conjecture = "'" + binary +
                                   "' conjecture --draws 2 --samples 20000 "
                                   "--k 20 --seed 7 2>&1";
    const std::string sweep =
        "'" + binary + "' sweep success_prob --k-grid 2,5 --eps-grid 0.1,0.2 2>&1";
    for (const std::string& cmd : {simulate, conjecture, sweep}) {
        int code_a = 0, code_b = 0;
        const std::string a = run_command(cmd, code_a);
        const std::string b = run_command(cmd, code_b);
        CHECK_C(!a.empty());
        CHECK_C(a == b);
        CHECK_C(code_a == code_b);
        CHECK_C(code_a == 0);
    }
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: jlg_acceptance <jlgamma-binary> <data-dir>\n");
        return 2;
    }
    const std::string binary = argv[1];
    const std::string data_dir = argv[2];

    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9(data_dir);
    criterion_10();
    criterion_11(binary, data_dir);

    if (g_failures > 0) {
        std::printf("ACCEPTANCE: %d check(s) failed\n", g_failures);
        return 1;
    }
    std::printf("ACCEPTANCE: all criteria passed\n");
    return 0;
}
