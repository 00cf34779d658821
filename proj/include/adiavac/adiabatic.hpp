#ifndef ADIAVAC_ADIABATIC_HPP
#define ADIAVAC_ADIABATIC_HPP

#include <complex>
#include <optional>
#include <vector>

#include "adiavac/cosmology.hpp"
#include "adiavac/scale_factor.hpp"

namespace adiavac {

/// The n-th iterate Omega_k^[n] of the frequency recursion, as a jet at t0.
/// Each iteration consumes two derivative orders (Omega-dot and Omega-ddot),
/// so omega.order() == <a-jet order> - 2 n, and omega.value() > 0 by
/// construction: an iterate whose square goes non-positive at the base point
/// is rejected instead of built.
struct AdiabaticFrequency {
    Jet omega;
    int order_n;
    ModeSpec mode;

    int jet_budget_consumed() const { return 2 * order_n; }
};

/// Mode initial data (T, T-dot) at t0 drawn from an adiabatic frequency.
/// With q = T0 and p = a^3(t0) T0_dot the pair satisfies the Wronskian
/// normalization conj(q) p - q conj(p) = -i.
struct AdiabaticInitialData {
    std::complex<double> T0;
    std::complex<double> T0_dot;
    double t0;
    int order_n;
};

struct TowerFailure {
    ErrorKind kind;        // HadamardViolation or OrderExhausted
    int order_n;           // first order that could not be built
    double omega_sq;       // offending (Omega^[n])^2 value (HadamardViolation only)
    int demanded_order;    // a-jet order that order would have needed
};

/// Frequencies Omega^[0..n] actually built, plus why the tower stopped short
/// of the request (if it did).
struct OmegaTower {
    std::vector<AdiabaticFrequency> orders;
    std::optional<TowerFailure> failure;
};

/// Omega^[0] = omega_k, the zeroth iterate (same jet order as a).
AdiabaticFrequency zeroth_order(const Jet& a, const ModeSpec& spec);

/// One step of the frequency recursion:
///   (Omega^[n+1])^2 = omega^2 - 3/4 (a'/a)^2 - 3/2 (a''/a)
///                     + 3/4 (Omega'/Omega)^2 - 1/2 (Omega''/Omega),
/// evaluated entirely in jet arithmetic and square-rooted. The result order
/// is prev.omega.order() - 2, exactly.
///
/// Throws OrderError when prev has fewer than two spare orders and
/// HadamardError when the squared iterate is non-positive at the base point.
AdiabaticFrequency iterate_omega(const AdiabaticFrequency& prev, const Jet& a,
                                 const ModeSpec& spec);

/// Build Omega^[0..n_max] at t0. Order n needs an a-jet of order 2n+2 (two
/// orders per iteration plus two spare so the top iterate still has a usable
/// second derivative); towers on finite-smoothness models therefore stop with
/// OrderExhausted at the first order whose demand exceeds the model class,
/// and (H3) failures stop the tower with the offending squared value recorded.
OmegaTower omega_tower(const ScaleFactorModel& model, const ModeSpec& spec, double t0,
                       int n_max);

/// Initial data of Definition-style order-n states, with the phase integral
/// taken from t0 to t0:
///   T0     = 1 / (a^{3/2} sqrt(2 Omega))
///   T0_dot = T0 (-i Omega - 3/2 (a'/a) - Omega'/(2 Omega)).
AdiabaticInitialData adiabatic_initial_data(const AdiabaticFrequency& freq, const Jet& a,
                                            double t0);

/// conj(q) p - q conj(p) + i; zero for exactly normalized data.
std::complex<double> wronskian_defect(std::complex<double> q, std::complex<double> p);

} // namespace adiavac

#endif
