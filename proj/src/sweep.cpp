#include "adiavac/sweep.hpp"

#include <cstdlib>
#include <exception>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace adiavac {

int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("ADIAVAC_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void run_indexed_serial(int n, const std::function<void(int)>& job) {
    for (int i = 0; i < n; ++i) job(i);
}

void run_indexed(int n, int threads, const std::function<void(int)>& job) {
#ifdef _OPENMP
    if (threads > 1 && n > 1) {
        std::vector<std::exception_ptr> errors(static_cast<size_t>(n));
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (int i = 0; i < n; ++i) {
            try {
                job(i);
            } catch (...) {
                errors[static_cast<size_t>(i)] = std::current_exception();
            }
        }
        // first failure in input order, independent of the schedule
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
        return;
    }
#else
    (void)threads;
#endif
    run_indexed_serial(n, job);
}

namespace {

BogoliubovSweepRow sweep_one(const ScaleFactorModel& model, int kappa, double k, double m,
                             double t0, double t1, int order_n, double tol) {
    const ModeSpec spec(kappa, k, m);

    const OmegaTower in_tower = omega_tower(model, spec, t0, order_n);
    if (in_tower.failure || static_cast<int>(in_tower.orders.size()) <= order_n) {
        const auto f = in_tower.failure.value_or(
            TowerFailure{ErrorKind::OrderExhausted, order_n, 0.0, 2 * order_n + 2});
        if (f.kind == ErrorKind::HadamardViolation)
            throw HadamardError(f.order_n, f.omega_sq, "tower failed at k = " + std::to_string(k));
        throw OrderError(f.order_n, f.demanded_order, "tower failed at k = " + std::to_string(k));
    }
    const Jet a0 = model.jet(t0, 1);
    const AdiabaticInitialData in_data =
        adiabatic_initial_data(in_tower.orders.back(), a0, t0);

    const ModeSolution evolved = integrate_mode(model, spec, in_data, t1, tol, 2);

    const OmegaTower out_tower = omega_tower(model, spec, t1, order_n);
    if (out_tower.failure || static_cast<int>(out_tower.orders.size()) <= order_n) {
        const auto f = out_tower.failure.value_or(
            TowerFailure{ErrorKind::OrderExhausted, order_n, 0.0, 2 * order_n + 2});
        if (f.kind == ErrorKind::HadamardViolation)
            throw HadamardError(f.order_n, f.omega_sq,
                                "out-state tower failed at k = " + std::to_string(k));
        throw OrderError(f.order_n, f.demanded_order,
                         "out-state tower failed at k = " + std::to_string(k));
    }
    const Jet a1 = model.jet(t1, 1);
    const AdiabaticInitialData out_data =
        adiabatic_initial_data(out_tower.orders.back(), a1, t1);

    // out-state solution "integrated" over zero span: wrap the data directly
    ModeSolution out_sol{{t1},
                         {out_data.T0},
                         {out_data.T0_dot},
                         {std::pow(model.value(t1), 3.0) * out_data.T0_dot},
                         spec,
                         order_n,
                         t1,
                         0.0,
                         0};

    const BogoliubovPair pair = bogoliubov(out_sol, evolved, t1);
    const double beta_sq = std::norm(pair.beta);
    return BogoliubovSweepRow{k, pair, beta_sq, std::norm(pair.alpha) - beta_sq - 1.0};
}

} // namespace

std::vector<BogoliubovSweepRow> bogoliubov_sweep(const ScaleFactorModel& model, int kappa,
                                                 const std::vector<double>& k_list, double m,
                                                 double t0, double t1, int order_n, double tol,
                                                 int threads, bool parallel) {
    const int n = static_cast<int>(k_list.size());
    std::vector<BogoliubovSweepRow> rows(k_list.size());
    const auto job = [&](int i) {
        rows[static_cast<size_t>(i)] =
            sweep_one(model, kappa, k_list[static_cast<size_t>(i)], m, t0, t1, order_n, tol);
    };
    if (parallel)
        run_indexed(n, resolve_thread_count(threads), job);
    else
        run_indexed_serial(n, job);
    return rows;
}

} // namespace adiavac
