// Timing comparison of the serial sweep loop against the OpenMP worker pool
// on a realistic Bogoliubov workload, and a bitwise identity check between
// the two result sets.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <vector>

#include "adiavac/sweep.hpp"

using namespace adiavac;

namespace {

template <typename F>
double timed(F&& f) {
    const auto start = std::chrono::steady_clock::now();
    f();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}

} // namespace

int main(int argc, char** argv) {
    int n_modes = 48;
    double tol = 1e-10;
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::strcmp(argv[i], "--modes") == 0) n_modes = std::atoi(argv[i + 1]);
        if (std::strcmp(argv[i], "--tol") == 0) tol = std::atof(argv[i + 1]);
    }

    const ScaleFactorModel model = ScaleFactorModel::tanh_transition(2.0, 1.0, 1.0);
    std::vector<double> ks(static_cast<size_t>(n_modes));
    for (int i = 0; i < n_modes; ++i) ks[static_cast<size_t>(i)] = 1.0 + 0.25 * i;

    std::vector<BogoliubovSweepRow> serial, parallel;
    const double t_serial = timed([&] {
        serial = bogoliubov_sweep(model, 0, ks, 1.0, -10.0, 10.0, 2, tol, 1, false);
    });
    const int threads = resolve_thread_count(0);
    const double t_parallel = timed([&] {
        parallel = bogoliubov_sweep(model, 0, ks, 1.0, -10.0, 10.0, 2, tol, threads, true);
    });

    bool identical = serial.size() == parallel.size();
    for (size_t i = 0; identical && i < serial.size(); ++i)
        identical = std::memcmp(&serial[i], &parallel[i], sizeof serial[i]) == 0;

    std::printf("modes            %d\n", n_modes);
    std::printf("threads          %d\n", threads);
    std::printf("serial    [s]    %.3f\n", t_serial);
    std::printf("parallel  [s]    %.3f\n", t_parallel);
    std::printf("speedup          %.2fx\n", t_serial / t_parallel);
    std::printf("bit-identical    %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
