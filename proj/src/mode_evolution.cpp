#include "adiavac/mode_evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace adiavac {

namespace {

// Dormand-Prince 5(4) pair with the classic quartic dense-output polynomial.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

// The controller runs well below the user tolerance: the Wronskian invariant
// accumulates roughly one local error per step, and the contract bounds its
// drift by 10*tol over spans of ~40 time units (thousands of steps).
constexpr double internal_tol_factor = 1e-3;
constexpr double internal_tol_floor = 1e-14;

struct State {
    cplx q, p;
};

State operator+(const State& x, const State& y) { return {x.q + y.q, x.p + y.p}; }
State operator*(double c, const State& x) { return {c * x.q, c * x.p}; }

struct ModeOde {
    const ScaleFactorModel& model;
    double E;
    double m2;
    mutable long evals = 0;

    State rhs(double t, const State& y) const {
        ++evals;
        const double a = model.value(t);
        if (!(a > 0.0))
            throw Error(ErrorKind::PositivityLoss,
                        "a(t) <= 0 at t = " + std::to_string(t));
        const double a3 = a * a * a;
        return {y.p / a3, -(E * a + m2 * a3) * y.q};
    }

    double omega(double t) const {
        const double a = model.value(t);
        return std::sqrt(E / (a * a) + m2);
    }
};

double error_norm(const State& err, const State& y0, const State& y1, double atol, double rtol) {
    const double e[4] = {err.q.real(), err.q.imag(), err.p.real(), err.p.imag()};
    const double u[4] = {y0.q.real(), y0.q.imag(), y0.p.real(), y0.p.imag()};
    const double v[4] = {y1.q.real(), y1.q.imag(), y1.p.real(), y1.p.imag()};
    double s = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double sk = atol + rtol * std::max(std::abs(u[i]), std::abs(v[i]));
        const double q = e[i] / sk;
        s += q * q;
    }
    return std::sqrt(s / 4.0);
}

} // namespace

size_t ModeSolution::index_of_time(double t) const {
    const double tol = 1e-9 * std::max(1.0, std::abs(t));
    const auto it = std::lower_bound(times.begin(), times.end(), t - tol);
    if (it == times.end() || std::abs(*it - t) > tol)
        throw Error(ErrorKind::DomainError,
                    "t = " + std::to_string(t) + " is not a stored sample time");
    return static_cast<size_t>(it - times.begin());
}

ModeSolution integrate_mode(const ScaleFactorModel& model, const ModeSpec& spec,
                            const AdiabaticInitialData& init, double t_end, double tol,
                            int samples) {
    if (!(tol >= 1e-13 && tol <= 1e-3))
        throw Error(ErrorKind::DomainError, "tol must lie in [1e-13, 1e-3]");
    if (samples < 2) throw Error(ErrorKind::DomainError, "need at least 2 samples");
    if (t_end == init.t0) throw Error(ErrorKind::DomainError, "t_end must differ from t0");

    const ModeOde ode{model, energy_eigenvalue(spec), spec.m * spec.m};
    const double t0 = init.t0;
    const double dir = t_end > t0 ? 1.0 : -1.0;
    const double span = std::abs(t_end - t0);

    const double atol = std::max(tol * internal_tol_factor, internal_tol_floor);
    const double rtol = atol;

    // sample grid, in integration order
    std::vector<double> grid(static_cast<size_t>(samples));
    for (int i = 0; i < samples; ++i)
        grid[static_cast<size_t>(i)] = t0 + (t_end - t0) * (static_cast<double>(i) / (samples - 1));
    grid.back() = t_end;

    ModeSolution sol{{}, {}, {}, {}, spec, init.order_n, t0, 0.0, 0};
    sol.times.reserve(grid.size());
    sol.T.reserve(grid.size());
    sol.T_dot.reserve(grid.size());
    sol.p.reserve(grid.size());

    const auto emit = [&](double t, const State& y) {
        const double a = model.value(t);
        const double a3 = a * a * a;
        sol.times.push_back(t);
        sol.T.push_back(y.q);
        sol.T_dot.push_back(y.p / a3);
        sol.p.push_back(y.p);
        const double drift = std::abs(std::imag(std::conj(y.q) * y.p) + 0.5);
        sol.max_wronskian_error = std::max(sol.max_wronskian_error, drift);
    };

    State y{init.T0, std::pow(model.value(t0), 3.0) * init.T0_dot};
    double t = t0;
    size_t next_sample = 0;
    emit(t, y);
    ++next_sample;

    State k1 = ode.rhs(t, y);
    const auto step_cap = [&](double at) {
        return std::min(span, (2.0 * M_PI / ode.omega(at)) / 20.0);
    };
    double h = dir * std::min(step_cap(t0), span / 100.0);

    const double h_min = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, span);
    int rejected_in_a_row = 0;

    // A scale factor collapsing through zero stalls the stepper first (omega
    // and T-dot diverge), so a stall probes ahead before being reported.
    const auto stall_error = [&](const char* what) {
        for (double frac : {1e-8, 1e-6, 1e-4, 1e-2}) {
            const double ahead = std::min(span * frac + 4.0 * h_min, std::abs(t_end - t));
            try {
                if (model.value(t + dir * ahead) <= 0.0)
                    return Error(ErrorKind::PositivityLoss,
                                 "a <= 0 just ahead of t = " + std::to_string(t));
            } catch (const Error&) {
                break;
            }
        }
        return Error(ErrorKind::StepFailure, std::string(what) + " at t = " + std::to_string(t));
    };

    while (dir * (t_end - t) > 0.0) {
        if (std::abs(h) < h_min) throw stall_error("step size underflow");
        h = dir * std::min(std::abs(h), step_cap(t));
        bool last = false;
        if (dir * (t + h - t_end) >= 0.0) {
            h = t_end - t;
            last = true;
        }

        const State k2 = ode.rhs(t + c2 * h, y + (h * a21) * k1);
        const State k3 = ode.rhs(t + c3 * h, y + (h * a31) * k1 + (h * a32) * k2);
        const State k4 = ode.rhs(t + c4 * h, y + (h * a41) * k1 + (h * a42) * k2 + (h * a43) * k3);
        const State k5 = ode.rhs(t + c5 * h, y + (h * a51) * k1 + (h * a52) * k2 +
                                                 (h * a53) * k3 + (h * a54) * k4);
        const State k6 = ode.rhs(t + h, y + (h * a61) * k1 + (h * a62) * k2 + (h * a63) * k3 +
                                            (h * a64) * k4 + (h * a65) * k5);
        const State y1 = y + (h * b1) * k1 + (h * b3) * k3 + (h * b4) * k4 + (h * b5) * k5 +
                         (h * b6) * k6;
        const State k7 = ode.rhs(t + h, y1);  // FSAL
        const State err = (h * e1) * k1 + (h * e3) * k3 + (h * e4) * k4 + (h * e5) * k5 +
                          (h * e6) * k6 + (h * e7) * k7;

        const double errn = error_norm(err, y, y1, atol, rtol);
        if (errn <= 1.0) {
            // dense output over (t, t+h]
            const State ydiff = y1 + (-1.0) * y;
            const State bspl = h * k1 + (-1.0) * ydiff;
            const State r1 = y;
            const State r2 = ydiff;
            const State r3 = bspl;
            const State r4 = ydiff + (-1.0) * (h * k7) + (-1.0) * bspl;
            const State r5 =
                h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
            while (next_sample < grid.size()) {
                const double ts = grid[next_sample];
                if (!last && dir * (ts - (t + h)) > 0.0) break;
                if (last && next_sample + 1 == grid.size()) {
                    emit(t_end, y1);
                    ++next_sample;
                    break;
                }
                const double theta = (ts - t) / h;
                const double th1 = 1.0 - theta;
                const State ys =
                    r1 + theta * (r2 + th1 * (r3 + theta * (r4 + th1 * r5)));
                emit(ts, ys);
                ++next_sample;
            }
            t = last ? t_end : t + h;
            y = y1;
            k1 = k7;
            rejected_in_a_row = 0;
            const double grow = 0.9 * std::pow(std::max(errn, 1e-10), -0.2);
            h *= std::clamp(grow, 0.2, 5.0);
        } else {
            ++rejected_in_a_row;
            if (rejected_in_a_row > 60) throw stall_error("no acceptable step");
            h *= std::clamp(0.9 * std::pow(errn, -0.2), 0.1, 0.5);
        }
    }

    if (next_sample != grid.size())
        throw Error(ErrorKind::StepFailure, "dense output did not cover the sample grid");

    sol.rhs_evaluations = ode.evals;
    if (dir < 0.0) {
        std::reverse(sol.times.begin(), sol.times.end());
        std::reverse(sol.T.begin(), sol.T.end());
        std::reverse(sol.T_dot.begin(), sol.T_dot.end());
        std::reverse(sol.p.begin(), sol.p.end());
    }
    return sol;
}

TwoPointMatrix two_point_matrix(cplx q, cplx p) {
    const double defect = std::abs(wronskian_defect(q, p));
    if (defect > 1e-8)
        throw Error(ErrorKind::WronskianBroken,
                    "pair violates conj(q) p - q conj(p) = -i by " + std::to_string(defect));
    return TwoPointMatrix{std::norm(p), -q * std::conj(p), -std::conj(q) * p, std::norm(q)};
}

PositivityReport quasifree_positivity_check(const TwoPointMatrix& S, int trials,
                                            std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);

    const auto mu = [&S](const double F[2], const double G[2]) {
        const cplx v = F[0] * (S.s00 * G[0] + S.s01 * G[1]) + F[1] * (S.s10 * G[0] + S.s11 * G[1]);
        return v.real();
    };

    PositivityReport rep{trials, 0, 0.0};
    for (int i = 0; i < trials; ++i) {
        const double F1[2] = {uni(rng), uni(rng)};
        const double F2[2] = {uni(rng), uni(rng)};
        const double sig = -(F1[0] * F2[1] - F2[0] * F1[1]);
        const double lhs = 0.25 * sig * sig;
        const double rhs = mu(F1, F1) * mu(F2, F2);
        const double scale = std::max({1.0, lhs, std::abs(rhs)});
        if (lhs > rhs) {
            rep.max_violation = std::max(rep.max_violation, lhs - rhs);
            if (lhs - rhs > 1e-12 * scale) ++rep.violations;
        }
    }
    return rep;
}

BogoliubovPair bogoliubov(const ModeSolution& sol_a, const ModeSolution& sol_b, double t) {
    if (!(sol_a.mode == sol_b.mode))
        throw Error(ErrorKind::ModeMismatch, "solutions belong to different modes");
    const size_t ia = sol_a.index_of_time(t);
    const size_t ib = sol_b.index_of_time(t);

    const cplx qa = sol_a.T[ia], pa = sol_a.p[ia];
    const cplx qb = sol_b.T[ib], pb = sol_b.p[ib];
    for (const auto& [q, p] : {std::pair{qa, pa}, std::pair{qb, pb}})
        if (std::abs(wronskian_defect(q, p)) > 1e-8)
            throw Error(ErrorKind::WronskianBroken, "solution not normalized at t");

    const cplx i_unit(0.0, 1.0);
    return BogoliubovPair{i_unit * (std::conj(qa) * pb - std::conj(pa) * qb),
                          -i_unit * (qa * pb - pa * qb)};
}

} // namespace adiavac
