#include "adiavac/adiabatic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace adiavac {

AdiabaticFrequency zeroth_order(const Jet& a, const ModeSpec& spec) {
    Jet osq = omega_squared_jet(a, spec);
    if (!(osq.value() > 0.0))
        throw HadamardError(0, osq.value(), "omega^2 <= 0 at base point (E = m = 0 mode?)");
    return AdiabaticFrequency{sqrt(osq), 0, spec};
}

AdiabaticFrequency iterate_omega(const AdiabaticFrequency& prev, const Jet& a,
                                 const ModeSpec& spec) {
    const int n_next = prev.order_n + 1;
    if (prev.omega.order() < 2)
        throw OrderError(n_next, prev.omega.order() + 2,
                         "jet budget exhausted at iteration " + std::to_string(n_next));
    if (a.order() < prev.omega.order())
        throw OrderError(n_next, prev.omega.order(),
                         "a-jet shorter than the frequency it must refine");
    if (!(a.value() > 0.0))
        throw Error(ErrorKind::PositivityLoss, "a <= 0 at base point");

    const Jet osq = omega_squared_jet(a, spec);
    const Jet adot = derivative_jet(a);
    const Jet hubble = adot / a;
    const Jet accel = derivative_jet(adot) / a;
    const Jet om_dot = derivative_jet(prev.omega);
    const Jet r1 = om_dot / prev.omega;
    const Jet r2 = derivative_jet(om_dot) / prev.omega;

    const Jet next_sq =
        osq - 0.75 * mul(hubble, hubble) - 1.5 * accel + 0.75 * mul(r1, r1) - 0.5 * r2;

    if (!(next_sq.value() > 0.0))
        throw HadamardError(n_next, next_sq.value(),
                            "(Omega^[" + std::to_string(n_next) + "])^2 = " +
                                std::to_string(next_sq.value()) + " at base point");
    return AdiabaticFrequency{sqrt(next_sq), n_next, spec};
}

OmegaTower omega_tower(const ScaleFactorModel& model, const ModeSpec& spec, double t0,
                       int n_max) {
    if (n_max < 0) throw Error(ErrorKind::DomainError, "n_max must be >= 0");

    const int demanded = 2 * n_max + 2;
    const int available = std::min(demanded, model.smoothness_class());

    OmegaTower tower;
    if (available < 2) {
        tower.failure = TowerFailure{ErrorKind::OrderExhausted, 0, 0.0, 2};
        return tower;
    }

    const Jet a = model.jet(t0, available);
    try {
        tower.orders.push_back(zeroth_order(a, spec));
    } catch (const HadamardError& e) {
        tower.failure = TowerFailure{ErrorKind::HadamardViolation, 0, e.omega_sq(), 2};
        return tower;
    }

    for (int n = 1; n <= n_max; ++n) {
        if (2 * n + 2 > available) {
            tower.failure = TowerFailure{ErrorKind::OrderExhausted, n, 0.0, 2 * n + 2};
            break;
        }
        try {
            tower.orders.push_back(iterate_omega(tower.orders.back(), a, spec));
        } catch (const HadamardError& e) {
            tower.failure = TowerFailure{ErrorKind::HadamardViolation, n, e.omega_sq(), 2 * n + 2};
            break;
        }
    }
    return tower;
}

AdiabaticInitialData adiabatic_initial_data(const AdiabaticFrequency& freq, const Jet& a,
                                            double t0) {
    if (freq.omega.base_point() != t0 || a.base_point() != t0)
        throw Error(ErrorKind::BasePointMismatch, "initial data jets not based at t0");
    if (freq.omega.order() < 1)
        throw OrderError(freq.order_n, 1, "initial data needs Omega-dot: jet order >= 1");
    if (a.order() < 1)
        throw OrderError(freq.order_n, 1, "initial data needs a-dot: a-jet order >= 1");

    const double om = freq.omega.value();
    const double om_dot = freq.omega.derivative(1);
    const double a0 = a.value();
    const double a_dot = a.derivative(1);

    const double T0 = 1.0 / (std::pow(a0, 1.5) * std::sqrt(2.0 * om));
    const std::complex<double> log_deriv(-1.5 * a_dot / a0 - om_dot / (2.0 * om), -om);
    return AdiabaticInitialData{T0, T0 * log_deriv, t0, freq.order_n};
}

std::complex<double> wronskian_defect(std::complex<double> q, std::complex<double> p) {
    return std::conj(q) * p - q * std::conj(p) + std::complex<double>(0.0, 1.0);
}

} // namespace adiavac
