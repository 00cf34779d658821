#include "adiavac/probe.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace adiavac {

double omega1_squared_point(double a, double a_dot, double a_ddot, const ModeSpec& spec) {
    if (!(a > 0.0)) throw Error(ErrorKind::DomainError, "need a > 0");
    const Jet a_jet(0.0, {a, a_dot, 0.5 * a_ddot});
    const AdiabaticFrequency omega0 = zeroth_order(a_jet, spec);

    // iterate_omega would reject a non-positive square; here the value itself
    // is the object of study, so recompute the square without the sqrt gate.
    const Jet osq = omega_squared_jet(a_jet, spec);
    const Jet adot_jet = derivative_jet(a_jet);
    const Jet hubble = adot_jet / a_jet;
    const Jet accel = derivative_jet(adot_jet) / a_jet;
    const Jet om_dot = derivative_jet(omega0.omega);
    const Jet r1 = om_dot / omega0.omega;
    const Jet r2 = derivative_jet(om_dot) / omega0.omega;
    const Jet next_sq =
        osq - 0.75 * mul(hubble, hubble) - 1.5 * accel + 0.75 * mul(r1, r1) - 0.5 * r2;
    return next_sq.value();
}

AffineDecomposition affine_decompose(double a, double a_dot, const ModeSpec& spec,
                                     double a_ddot_scale) {
    const double h = 1e-3 * std::max(1.0, std::abs(a_ddot_scale));
    const double f0 = omega1_squared_point(a, a_dot, 0.0, spec);
    const double fp = omega1_squared_point(a, a_dot, +h, spec);
    const double fm = omega1_squared_point(a, a_dot, -h, spec);

    const double residual = fp + fm - 2.0 * f0;
    const double scale = std::max({1.0, std::abs(f0), std::abs(fp), std::abs(fm)});
    if (std::abs(residual) > 1e-9 * scale)
        throw Error(ErrorKind::NotAffine,
                    "quadratic residual " + std::to_string(residual) +
                        " in the a-ddot dependence of (Omega^[1])^2");

    return AffineDecomposition{(fp - fm) / (2.0 * h), f0};
}

double closed_form_slope(double a, const ModeSpec& spec) {
    const double E = energy_eigenvalue(spec);
    const double osq = omega_squared_value(a, spec);
    return -1.5 / a + E / (2.0 * a * a * a * osq);
}

double recover_addot(double omega1_sq, double a, double a_dot, const ModeSpec& spec) {
    const AffineDecomposition d = affine_decompose(a, a_dot, spec);
    if (!(std::abs(d.slope) > 1e-300))
        throw Error(ErrorKind::DegenerateSlope, "vanishing slope");  // unreachable: slope < 0
    return (omega1_sq - d.intercept) / d.slope;
}

FnChain fn_chain(const ScaleFactorModel& model, const ModeSpec& spec, double t0, int n) {
    if (n < 2) throw Error(ErrorKind::DomainError, "fn_chain starts at f_2: need n >= 2");

    const Jet a1 = model.jet(t0, 1);
    const double f2 = affine_decompose(a1.value(), a1.derivative(1), spec).slope;

    FnChain chain;
    chain.recursion.push_back(f2);
    chain.closed_form.push_back(f2);

    const OmegaTower tower = omega_tower(model, spec, t0, n - 1);
    for (size_t i = 1; i < tower.orders.size(); ++i)
        chain.omega_sq.push_back(tower.orders[i].omega.value() * tower.orders[i].omega.value());

    // recursion: f_{j+1} = -1/4 f_j / (Omega^[j-1])^2 for j = 2..n
    double f = f2;
    double product = 1.0;
    for (int j = 2; j <= n; ++j) {
        const size_t idx = static_cast<size_t>(j - 2);  // (Omega^[j-1])^2
        if (idx >= chain.omega_sq.size()) break;        // tower stopped early
        f *= -0.25 / chain.omega_sq[idx];
        chain.recursion.push_back(f);
        product /= chain.omega_sq[idx];
        chain.closed_form.push_back(std::pow(-0.25, j - 1) * f2 * product);
    }
    return chain;
}

MaxOrderReport max_adiabatic_order(const ScaleFactorModel& model, const ModeSpec& spec,
                                   double t0, int n_cap) {
    const OmegaTower tower = omega_tower(model, spec, t0, n_cap);
    const int max_order = static_cast<int>(tower.orders.size()) - 1;
    return MaxOrderReport{max_order, tower.failure};
}

} // namespace adiavac
