// Timing comparison between the serial reference paths and the OpenMP
// kernels. Both paths produce bit-identical results (asserted here), so the
// only difference is wall time. Run with OMP_NUM_THREADS set to taste.

#include "jlg/embedding_dim.hpp"
#include "jlg/mc.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

template <typename F>
double time_call(F&& f) {
    const double t0 = now_seconds();
    f();
    return now_seconds() - t0;
}

void row(const char* name, double serial_s, double parallel_s) {
    std::printf("%-28s %10.3fs %10.3fs %8.2fx\n", name, serial_s, parallel_s,
                serial_s / parallel_s);
}

} // namespace

int main(int argc, char** argv) {
    long long samples = 2000000;
    if (argc > 1) samples = std::atoll(argv[1]);

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("threads: %d   mc samples: %lld\n\n", threads, samples);
    std::printf("%-28s %11s %11s %9s\n", "kernel", "serial", "parallel", "speedup");

    const jlg::CorrelationStructure pair = jlg::CorrelationStructure::pair(0.7);
    const jlg::SimulationConfig serial_cfg{samples, 17, 65536};

    jlg::McEstimate ser{}, par{};
    const double t_ser = time_call([&] {
        ser = jlg::estimate_joint_success(40, 0.2, pair, serial_cfg, false);
    });
    const double t_par = time_call([&] {
        par = jlg::estimate_joint_success(40, 0.2, pair, serial_cfg, true);
    });
    row("mc joint success (m=2)", t_ser, t_par);
    if (ser.mean != par.mean) {
        std::fprintf(stderr, "FATAL: serial/parallel mismatch in joint success\n");
        return 1;
    }

    const jlg::CorrelationStructure triple = jlg::CorrelationStructure::triple(0.4, 0.5, 0.3);
    jlg::TupleMoments mser{}, mpar{};
    const double t_mser = time_call([&] {
        mser = jlg::estimate_moments(40, triple, serial_cfg, false);
    });
    const double t_mpar = time_call([&] {
        mpar = jlg::estimate_moments(40, triple, serial_cfg, true);
    });
    row("mc moments (m=3)", t_mser, t_mpar);
    if (mser.mean[0] != mpar.mean[0] || mser.cov[1] != mpar.cov[1]) {
        std::fprintf(stderr, "FATAL: serial/parallel mismatch in moments\n");
        return 1;
    }

    const std::vector<long long> ns = {10000, 100000, 1000000, 10000000};
    const std::vector<double> epss = {0.05, 0.1, 0.15, 0.2};
    std::vector<jlg::RatioRow> rows_ser, rows_par;
    const double t_dser =
        time_call([&] { rows_ser = jlg::dimension_ratio_sweep(ns, epss, false); });
    const double t_dpar =
        time_call([&] { rows_par = jlg::dimension_ratio_sweep(ns, epss, true); });
    row("dimension ratio sweep", t_dser, t_dpar);
    for (std::size_t i = 0; i < rows_ser.size(); ++i)
        if (rows_ser[i].k_min_bivariate != rows_par[i].k_min_bivariate) {
            std::fprintf(stderr, "FATAL: serial/parallel mismatch in sweep\n");
            return 1;
        }

    std::printf("\nall serial/parallel pairs agree bit for bit\n");
    return 0;
}
