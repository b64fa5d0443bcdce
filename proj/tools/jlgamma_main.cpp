// jlgamma: probability bounds for random-projection distance preservation.
//
// Subcommands: bounds, sweep, min-dim, simulate, conjecture. All output is
// deterministic given the full flag set (including --seed); sweeps emit CSV.
// Exit codes: 0 ok, 2 usage error, 3 numerical failure, 4 conjecture
// violation candidate found.

#include "jlg/bivariate.hpp"
#include "jlg/bounds.hpp"
#include "jlg/csv.hpp"
#include "jlg/embedding_dim.hpp"
#include "jlg/marginal.hpp"
#include "jlg/mc.hpp"
#include "jlg/rng.hpp"
#include "jlg/special.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitViolation = 4;

std::uint64_t ensure_seed(CLI::Option* seed_opt, std::uint64_t seed) {
    if (seed_opt->count() > 0) return seed;
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::vector<long long> to_integer_grid(const std::vector<double>& vals,
                                       long long min_value, const char* what) {
    std::vector<long long> out;
    out.reserve(vals.size());
    for (const double v : vals) {
        const long long r = std::llround(v);
        if (r < min_value)
            throw std::invalid_argument(std::string(what) + ": value below minimum");
        out.push_back(r);
    }
    return out;
}

struct OutStream {
    explicit OutStream(const std::string& path) {
        if (!path.empty()) {
            file = std::make_unique<std::ofstream>(path);
            if (!*file)
                throw std::invalid_argument("cannot open output file: " + path);
        }
    }
    std::ostream& get() { return file ? *file : std::cout; }
    std::unique_ptr<std::ofstream> file;
};

const char* parity_name(jlg::Parity p) {
    return p == jlg::Parity::even ? "even" : "odd";
}

const char* method_name(jlg::ProbMethod m) {
    switch (m) {
        case jlg::ProbMethod::closed_form: return "closed_form";
        case jlg::ProbMethod::quadrature: return "quadrature";
        case jlg::ProbMethod::gaussian_approx: return "gaussian_approx";
        case jlg::ProbMethod::monte_carlo: return "monte_carlo";
    }
    return "unknown";
}

void print_bound_report(std::ostream& os, const jlg::BoundReport& r) {
    using jlg::format_double;
    os << "n:                  " << r.spec.n << "\n"
       << "k:                  " << r.spec.k << "\n"
       << "epsilon:            " << format_double(r.spec.epsilon) << "\n"
       << "pairs:              " << jlg::pair_count(r.spec.n) << " ("
       << parity_name(r.pair_count_parity) << ")\n"
       << "mu:                 " << format_double(r.mu.value) << "\n"
       << "failure (1-mu):     " << format_double(r.failure) << "\n"
       << "marginal bound:     " << format_double(r.marginal_lb) << "\n"
       << "bivariate bound:    " << format_double(r.bivariate_lb) << "\n"
       << "delta:              " << format_double(r.delta) << "\n"
       << "trivariate bound:   " << format_double(r.trivariate_lb)
       << "  (conditional on the three-success inequality)\n";
}

int cmd_bounds(long long n, long long k, double eps, const std::string& csv_path) {
    const jlg::EmbeddingSpec spec{n, k, eps};
    const jlg::BoundReport r = jlg::make_bound_report(spec);
    print_bound_report(std::cout, r);
    if (!csv_path.empty()) {
        OutStream out(csv_path);
        jlg::write_csv_row(out.get(), {"n", "k", "epsilon", "mu", "failure",
                                       "marginal_lb", "bivariate_lb", "delta",
                                       "trivariate_lb", "parity"});
        jlg::write_csv_row(
            out.get(),
            {std::to_string(r.spec.n), std::to_string(r.spec.k),
             jlg::format_double(r.spec.epsilon), jlg::format_double(r.mu.value),
             jlg::format_double(r.failure), jlg::format_double(r.marginal_lb),
             jlg::format_double(r.bivariate_lb), jlg::format_double(r.delta),
             jlg::format_double(r.trivariate_lb), parity_name(r.pair_count_parity)});
    }
    return kExitOk;
}

std::string defaulted(const std::string& value, const char* fallback) {
    return value.empty() ? std::string(fallback) : value;
}

int cmd_sweep(const std::string& figure, const std::string& k_grid,
              const std::string& eps_grid, const std::string& n_grid,
              const std::string& rho_grid, long long k_scalar, double eps_scalar,
              bool eps_given, const std::string& out_path) {
    OutStream out(out_path);
    std::ostream& os = out.get();

    if (figure == "success_prob") {
        const auto ks = to_integer_grid(
            jlg::parse_grid(defaulted(k_grid, "2,5,10,20,50,100,200,500,1000,2000,5000,10000")),
            1, "k grid");
        const auto epss = jlg::parse_grid(defaulted(eps_grid, "0.01,0.025,0.05,0.1,0.2"));
        jlg::write_csv_row(os, {"k", "epsilon", "mu"});
        for (const long long k : ks)
            for (const double e : epss)
                jlg::write_csv_row(os, {std::to_string(k), jlg::format_double(e),
                                        jlg::format_double(
                                            jlg::success_probability(k, e).value)});
        return kExitOk;
    }

    if (figure == "joint_prob") {
        const auto rhos = jlg::parse_grid(defaulted(rho_grid, "linspace:0:1:21"));
        jlg::write_csv_row(os, {"k", "epsilon", "rho_sq", "joint_success", "method"});
        for (const double r : rhos) {
            const jlg::Probability p =
                jlg::joint_success_probability(k_scalar, eps_scalar, r);
            jlg::write_csv_row(os, {std::to_string(k_scalar),
                                    jlg::format_double(eps_scalar),
                                    jlg::format_double(r), jlg::format_double(p.value),
                                    method_name(p.method)});
        }
        return kExitOk;
    }

    if (figure == "embedding_dim") {
        const auto ns =
            to_integer_grid(jlg::parse_grid(defaulted(n_grid, "logspace:4:8:20")), 2, "n grid");
        const auto epss = jlg::parse_grid(defaulted(eps_grid, "linspace:0.01:0.2:5"));
        const auto rows = jlg::dimension_ratio_sweep(ns, epss);
        jlg::write_csv_row(os, {"n", "epsilon", "k_min_marginal", "k_min_bivariate",
                                "k_dasgupta", "ratio"});
        for (const auto& row : rows)
            jlg::write_csv_row(
                os, {std::to_string(row.n), jlg::format_double(row.epsilon),
                     std::to_string(row.k_min_marginal),
                     std::to_string(row.k_min_bivariate),
                     std::to_string(row.k_dasgupta), jlg::format_double(row.ratio)});
        return kExitOk;
    }

    if (figure == "bound_delta") {
        const auto ns =
            to_integer_grid(jlg::parse_grid(defaulted(n_grid, "logspace:2:6:9")), 2, "n grid");
        const auto ks =
            to_integer_grid(jlg::parse_grid(defaulted(k_grid, "1000,10000")), 1, "k grid");
        const double eps = eps_given ? eps_scalar : 0.1;
        jlg::write_csv_row(os, {"n", "k", "epsilon", "mu", "failure", "marginal_lb",
                                "bivariate_lb", "delta", "trivariate_lb", "parity"});
        for (const long long n : ns)
            for (const long long k : ks) {
                const jlg::BoundReport r =
                    jlg::make_bound_report(jlg::EmbeddingSpec{n, k, eps});
                jlg::write_csv_row(
                    os,
                    {std::to_string(n), std::to_string(k),
                     jlg::format_double(eps), jlg::format_double(r.mu.value),
                     jlg::format_double(r.failure), jlg::format_double(r.marginal_lb),
                     jlg::format_double(r.bivariate_lb), jlg::format_double(r.delta),
                     jlg::format_double(r.trivariate_lb),
                     parity_name(r.pair_count_parity)});
            }
        return kExitOk;
    }

    throw CLI::ValidationError("figure",
                               "unknown figure '" + figure +
                                   "' (expected success_prob, joint_prob, "
                                   "embedding_dim, or bound_delta)");
}

int cmd_min_dim(long long n, double eps, const std::string& bound) {
    const auto run = [n, eps](jlg::BoundKind kind, const char* label) {
        const jlg::DimensionSearchResult r = jlg::min_dimension(n, eps, kind);
        std::cout << label << " k_min:      " << r.k_min << "  (iterations "
                  << r.iterations << ", bracket (" << r.bracket_low << ", "
                  << r.bracket_high << "], local threshold "
                  << (r.monotonicity_verified ? "clean" : "NOT monotone") << ")\n";
        return r.k_min;
    };

    long long k_numeric = 0;
    if (bound == "marginal") {
        k_numeric = run(jlg::BoundKind::marginal, "marginal ");
    } else if (bound == "bivariate") {
        k_numeric = run(jlg::BoundKind::bivariate, "bivariate");
    } else if (bound == "both") {
        const long long km = run(jlg::BoundKind::marginal, "marginal ");
        const long long kb = run(jlg::BoundKind::bivariate, "bivariate");
        if (km != kb)
            std::cout << "note: bounds disagree; this would be a notable finding\n";
        k_numeric = kb;
    } else {
        throw CLI::ValidationError(
            "bound", "expected 'marginal', 'bivariate', or 'both'");
    }

    const long long kd = jlg::dasgupta_dimension(n, eps);
    std::cout << "analytic dimension:  " << kd << "\n"
              << "ratio:               "
              << jlg::format_double(static_cast<double>(k_numeric) /
                                    static_cast<double>(kd))
              << "\n";
    return kExitOk;
}

int cmd_simulate(const std::string& data_path, long long k, double eps,
                 long long samples, std::uint64_t seed, long long chunk) {
    std::ifstream in(data_path);
    if (!in) throw std::invalid_argument("cannot open dataset: " + data_path);
    const jlg::PointSet points = jlg::parse_points(in);

    const jlg::SimulationConfig config{samples, seed, chunk};
    const jlg::EndToEndReport r = jlg::end_to_end_experiment(points, k, eps, config);

    using jlg::format_double;
    std::cout << "seed:                 " << seed << "\n"
              << "points:               " << points.n << " in R^" << points.d << "\n"
              << "samples:              " << samples << "\n"
              << "no-failure frequency: " << format_double(r.no_failure.mean)
              << "  (SE " << format_double(r.no_failure.std_error) << ")\n";
    print_bound_report(std::cout, r.bounds);
    std::cout << "data-dependent bound: " << format_double(r.data_dependent_lb)
              << "\n"
              << "collinear-case value: " << format_double(r.geometry_value)
              << "  (equals the no-failure bound only for collinear geometry)\n";
    std::cout << "per-pair failures:   ";
    for (const long long c : r.per_pair_failures) std::cout << ' ' << c;
    std::cout << "\npair direction dots: ";
    for (const double x : r.pair_rho) std::cout << ' ' << format_double(x);
    std::cout << "\n";
    return kExitOk;
}

int cmd_conjecture(long long k, double eps, int draws, long long samples,
                   std::uint64_t seed, long long chunk, int dim) {
    std::cout << "seed: " << seed << "\n";
    std::cout << "k,epsilon,draw,rho12,rho13,rho23,estimate,mu_cubed,margin_se,verdict\n";
    int violations = 0;
    for (int i = 0; i < draws; ++i) {
        // two independent streams per draw, both reproducible from the one seed
        const std::uint64_t structure_seed =
            jlg::chunk_seed(seed, static_cast<std::uint64_t>(2 * i));
        const std::uint64_t sim_seed =
            jlg::chunk_seed(seed, static_cast<std::uint64_t>(2 * i + 1));
        const jlg::CorrelationStructure s = jlg::random_structure(3, structure_seed, dim);
        const jlg::SimulationConfig config{samples, sim_seed, chunk};
        const jlg::ConjectureReport r =
            jlg::test_three_success_conjecture(k, eps, s, config);
        const bool hit = r.verdict == jlg::ConjectureVerdict::violation_candidate;
        violations += hit ? 1 : 0;
        std::cout << k << ',' << jlg::format_double(eps) << ',' << i << ','
                  << jlg::format_double(s.at(0, 1)) << ','
                  << jlg::format_double(s.at(0, 2)) << ','
                  << jlg::format_double(s.at(1, 2)) << ','
                  << jlg::format_double(r.estimate.mean) << ','
                  << jlg::format_double(r.mu_cubed) << ','
                  << jlg::format_double(r.margin_in_se) << ','
                  << (hit ? "violation_candidate" : "consistent") << "\n";
    }
    if (violations > 0) {
        std::cout << "violation candidates: " << violations
                  << " (reproduce with the seed above; statistical fluctuations "
                     "are expected at rate ~3e-5 per draw)\n";
        return kExitViolation;
    }
    std::cout << "violation candidates: 0\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Distance-preservation probability bounds for Gaussian random "
        "projections: exact marginal/bivariate gamma models, lower-bound "
        "calculus, embedding dimension selection, and a seeded Monte Carlo "
        "oracle.\nThread count follows OMP_NUM_THREADS; results do not depend "
        "on it."};
    app.require_subcommand(1);

    // bounds
    auto* bounds = app.add_subcommand("bounds", "Print the bound report for one (n, k, epsilon)");
    long long b_n = 0, b_k = 0;
    double b_eps = 0.0;
    std::string b_csv;
    bounds->add_option("--n", b_n, "number of points")->required();
    bounds->add_option("--k", b_k, "embedding dimension")->required();
    bounds->add_option("--eps", b_eps, "distance tolerance in (0,1)")->required();
    bounds->add_option("--csv", b_csv, "also write the report as a CSV file");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Emit a parameter sweep as CSV");
    std::string s_figure;
    std::string s_k_grid, s_eps_grid, s_n_grid, s_rho_grid;
    long long s_k = 1000;
    double s_eps = 0.025;
    std::string s_out;
    sweep->add_option("figure", s_figure,
                      "one of: success_prob, joint_prob, embedding_dim, bound_delta")
        ->required()
        ->check(CLI::IsMember(
            {"success_prob", "joint_prob", "embedding_dim", "bound_delta"}));
    sweep->add_option(
        "--k-grid", s_k_grid,
        "k grid (list, linspace:a:b:n, logspace:a:b:n); success_prob default "
        "2,5,...,10000; bound_delta default 1000,10000");
    sweep->add_option("--eps-grid", s_eps_grid,
                      "epsilon grid; success_prob default 0.01,0.025,0.05,0.1,0.2; "
                      "embedding_dim default linspace:0.01:0.2:5");
    sweep->add_option("--n-grid", s_n_grid,
                      "n grid; embedding_dim default logspace:4:8:20; bound_delta "
                      "default logspace:2:6:9");
    sweep->add_option("--rho-grid", s_rho_grid,
                      "rho_sq grid for joint_prob (default linspace:0:1:21)");
    sweep->add_option("--k", s_k, "fixed k for joint_prob (default 1000)");
    auto* s_eps_opt = sweep->add_option(
        "--eps", s_eps,
        "fixed epsilon: joint_prob default 0.025, bound_delta default 0.1");
    sweep->add_option("--out", s_out, "output file (default stdout)");

    // min-dim
    auto* mindim = app.add_subcommand(
        "min-dim", "Smallest k with a positive lower bound, vs the analytic dimension");
    long long m_n = 0;
    double m_eps = 0.0;
    std::string m_bound = "both";
    mindim->add_option("--n", m_n, "number of points")->required();
    mindim->add_option("--eps", m_eps, "distance tolerance in (0,1)")->required();
    mindim->add_option("--bound", m_bound, "marginal, bivariate, or both (default)");

    // simulate
    auto* sim = app.add_subcommand(
        "simulate", "End-to-end Monte Carlo on a dataset of points");
    std::string d_path;
    long long d_k = 0, d_samples = 100000, d_chunk = 65536;
    double d_eps = 0.0;
    std::uint64_t d_seed = 0;
    sim->add_option("--data", d_path,
                    "dataset file: one point per line, whitespace separated")
        ->required();
    sim->add_option("--k", d_k, "embedding dimension")->required();
    sim->add_option("--eps", d_eps, "distance tolerance in (0,1)")->required();
    sim->add_option("--samples", d_samples, "Monte Carlo trials (default 100000)");
    auto* d_seed_opt =
        sim->add_option("--seed", d_seed, "RNG seed; generated and printed if absent");
    sim->add_option("--chunk", d_chunk, "samples per deterministic chunk (default 65536)");

    // conjecture
    auto* conj = app.add_subcommand(
        "conjecture", "Probe the three-success inequality on random structures");
    long long c_k = 40, c_samples = 100000, c_chunk = 65536;
    double c_eps = 0.2;
    int c_draws = 50, c_dim = 5;
    std::uint64_t c_seed = 0;
    conj->add_option("--k", c_k, "embedding dimension (default 40)");
    conj->add_option("--eps", c_eps, "distance tolerance (default 0.2)");
    conj->add_option("--draws", c_draws, "number of random structures (default 50)");
    conj->add_option("--samples", c_samples, "Monte Carlo trials per draw (default 100000)");
    auto* c_seed_opt =
        conj->add_option("--seed", c_seed, "RNG seed; generated and printed if absent");
    conj->add_option("--chunk", c_chunk, "samples per deterministic chunk (default 65536)");
    conj->add_option("--dim", c_dim, "ambient dimension of the random unit vectors (default 5)");

    try {
        app.parse(argc, argv);

        if (bounds->parsed()) return cmd_bounds(b_n, b_k, b_eps, b_csv);
        if (sweep->parsed())
            return cmd_sweep(s_figure, s_k_grid, s_eps_grid, s_n_grid, s_rho_grid,
                             s_k, s_eps, s_eps_opt->count() > 0, s_out);
        if (mindim->parsed()) return cmd_min_dim(m_n, m_eps, m_bound);
        if (sim->parsed())
            return cmd_simulate(d_path, d_k, d_eps, d_samples,
                                ensure_seed(d_seed_opt, d_seed), d_chunk);
        if (conj->parsed())
            return cmd_conjecture(c_k, c_eps, c_draws, c_samples,
                                  ensure_seed(c_seed_opt, c_seed), c_chunk, c_dim);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const jlg::numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
