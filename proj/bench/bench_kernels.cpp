// Benchmark: OpenMP kernels against their serial reference implementations
// (the sweep engine and the brute-force grid oracle), with a result check
// so a mismatch is reported rather than silently timed.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "isacmarket/solver.hpp"
#include "isacmarket/statics.hpp"

using namespace isac;

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double time_ms(F&& f) {
    const auto t0 = Clock::now();
    f();
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled (serial build)\n");
#endif

    const ModelParams params{};
    const SolverConfig cfg{};

    SweepSpec spec;
    spec.parameter = SweepParameter::w_p;
    spec.start = 0.001;
    spec.stop = 0.055;
    spec.steps = 55;
    spec.base = params;

    SweepResult sweep_serial, sweep_parallel;
    const double t_sweep_serial = time_ms([&] { sweep_serial = run_sweep_serial(spec, cfg); });
    const double t_sweep_parallel = time_ms([&] { sweep_parallel = run_sweep(spec, cfg); });
    bool sweep_match = sweep_serial.points.size() == sweep_parallel.points.size();
    for (std::size_t i = 0; sweep_match && i < sweep_serial.points.size(); ++i)
        sweep_match = sweep_serial.points[i].eq.profit == sweep_parallel.points[i].eq.profit;

    std::printf("sweep (55 points)   serial %8.1f ms   parallel %8.1f ms   speedup %.2fx   %s\n",
                t_sweep_serial, t_sweep_parallel, t_sweep_serial / t_sweep_parallel,
                sweep_match ? "results match" : "RESULTS DIFFER");

    OracleResult oracle_serial, oracle_parallel;
    const double t_oracle_serial =
        time_ms([&] { oracle_serial = brute_force_oracle_serial(params, cfg); });
    const double t_oracle_parallel =
        time_ms([&] { oracle_parallel = brute_force_oracle(params, cfg); });
    const bool oracle_match = oracle_serial.max_profit == oracle_parallel.max_profit &&
                              oracle_serial.argmax.P_r == oracle_parallel.argmax.P_r &&
                              oracle_serial.argmax.P_c == oracle_parallel.argmax.P_c &&
                              oracle_serial.argmax.W_c == oracle_parallel.argmax.W_c;

    std::printf("oracle (200^3 x 3)  serial %8.1f ms   parallel %8.1f ms   speedup %.2fx   %s\n",
                t_oracle_serial, t_oracle_parallel, t_oracle_serial / t_oracle_parallel,
                oracle_match ? "results match" : "RESULTS DIFFER");

    return (sweep_match && oracle_match) ? 0 : 1;
}
