// Times the sweep kernels serial vs OpenMP-parallel and checks that the two
// paths produce identical results.

#include <chrono>
#include <cstdio>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qthermo/scan.hpp"

namespace {

using namespace qthermo;
using Clock = std::chrono::steady_clock;

template <class F>
double time_best_of(int reps, F&& f) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        auto t0 = Clock::now();
        f();
        auto t1 = Clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

void report(const char* name, double serial_s, double parallel_s, bool identical) {
    std::printf("%-14s serial %8.3f ms   parallel %8.3f ms   speedup %5.2fx   results %s\n",
                name, serial_s * 1e3, parallel_s * 1e3, serial_s / parallel_s,
                identical ? "identical" : "DIFFER");
}

} // namespace

int main(int argc, char** argv) {
    std::size_t n_sign = 40000, n_dp = 4000;
    int n_grid = 4000;
    if (argc > 1 && std::strcmp(argv[1], "--quick") == 0) {
        n_sign = 4000;
        n_dp = 400;
        n_grid = 400;
    }

#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; both columns run the serial code\n");
#endif

    bool all_identical = true;

    {
        SweepOptions serial{n_sign, CounterRng::kDefaultSeed, false};
        SweepOptions parallel{n_sign, CounterRng::kDefaultSeed, true};
        SignSweepResult rs, rp;
        double ts = time_best_of(3, [&] { rs = sign_sweep(serial); });
        double tp = time_best_of(3, [&] { rp = sign_sweep(parallel); });
        bool same = rs.evaluated == rp.evaluated && rs.skipped == rp.skipped &&
                    rs.sign_violations == rp.sign_violations &&
                    rs.min_bracket == rp.min_bracket;
        all_identical = all_identical && same;
        report("sign sweep", ts, tp, same);
    }

    {
        SweepOptions serial{n_dp, CounterRng::kDefaultSeed, false};
        SweepOptions parallel{n_dp, CounterRng::kDefaultSeed, true};
        DataProcResult rs, rp;
        double ts = time_best_of(3, [&] { rs = data_processing_sweep(serial); });
        double tp = time_best_of(3, [&] { rp = data_processing_sweep(parallel); });
        bool same = rs.violations == rp.violations && rs.max_increase == rp.max_increase;
        all_identical = all_identical && same;
        report("dataproc sweep", ts, tp, same);
    }

    {
        GadSchedule sched = make_gad_schedule(1.0, 1.0, 0.1);
        std::vector<double> vs, vp;
        double ts = time_best_of(3, [&] { vs = gad_sigma_grid(sched, 10.0, n_grid, false); });
        double tp = time_best_of(3, [&] { vp = gad_sigma_grid(sched, 10.0, n_grid, true); });
        bool same = vs == vp;
        all_identical = all_identical && same;
        report("sigma grid", ts, tp, same);
    }

    return all_identical ? 0 : 1;
}
