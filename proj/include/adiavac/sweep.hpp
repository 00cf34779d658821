#ifndef ADIAVAC_SWEEP_HPP
#define ADIAVAC_SWEEP_HPP

#include <functional>
#include <vector>

#include "adiavac/mode_evolution.hpp"

namespace adiavac {

/// Worker-pool size: `requested` wins when > 0, else the ADIAVAC_THREADS
/// environment variable, else (0 = auto) the hardware concurrency.
int resolve_thread_count(int requested = 0);

/// Run job(i) for i in [0, n) on `threads` OpenMP threads. Each job writes
/// only its own output slot, so results are bit-identical to run_indexed_serial
/// regardless of thread count or schedule.
void run_indexed(int n, int threads, const std::function<void(int)>& job);

/// Serial reference for run_indexed; kept as the comparison baseline.
void run_indexed_serial(int n, const std::function<void(int)>& job);

/// One row of a Bogoliubov sweep: the mode evolved from order-n data at t0 is
/// expanded in the order-n data imposed at t1.
struct BogoliubovSweepRow {
    double k;
    BogoliubovPair pair;
    double beta_sq;         // |beta|^2
    double norm_residual;   // |alpha|^2 - |beta|^2 - 1
};

/// Per-mode pipeline (tower -> initial data -> integrate -> project) fanned
/// out over k_list; rows come back in input order. The first failing mode's
/// error is rethrown, in input order, for deterministic diagnostics.
std::vector<BogoliubovSweepRow> bogoliubov_sweep(const ScaleFactorModel& model, int kappa,
                                                 const std::vector<double>& k_list, double m,
                                                 double t0, double t1, int order_n, double tol,
                                                 int threads = 0, bool parallel = true);

} // namespace adiavac

#endif
