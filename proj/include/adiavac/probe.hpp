#ifndef ADIAVAC_PROBE_HPP
#define ADIAVAC_PROBE_HPP

#include <optional>
#include <vector>

#include "adiavac/adiabatic.hpp"

namespace adiavac {

/// (Omega^[1])^2 viewed as a function of a-ddot at fixed (a, a-dot) is exactly
/// affine: slope * a_ddot + intercept. The closed form of the slope is
/// -3/(2a) + E/(2 a^3 omega^2), strictly negative whenever E + m^2 > 0.
struct AffineDecomposition {
    double slope;
    double intercept;
};

/// (Omega^[1])^2 from point data (a, a-dot, a-ddot): builds the order-2 jet
/// [a, a_dot, a_ddot/2] and runs one frequency iteration, so all omega
/// derivatives enter through the chain rule and nothing is transcribed from
/// any expanded display.
double omega1_squared_point(double a, double a_dot, double a_ddot, const ModeSpec& spec);

/// Exact affine fit of omega1_squared_point over a_ddot in {0, +h, -h};
/// the quadratic residual of the three-point fit must vanish (NotAffine
/// beyond 1e-9 * scale would falsify the linearity claim).
AffineDecomposition affine_decompose(double a, double a_dot, const ModeSpec& spec,
                                     double a_ddot_scale = 1.0);

double closed_form_slope(double a, const ModeSpec& spec);

/// Invert the affine relation: a_ddot = (omega1_sq - intercept) / slope.
double recover_addot(double omega1_sq, double a, double a_dot, const ModeSpec& spec);

/// f_2 = d(Omega^[1])^2/d(a-ddot) and the recursion
///   f_{n+1} = -1/4 f_n / (Omega^[n-1])^2,
/// chained link-by-link and, independently, through the closed-form product
///   f_{n+1} = (-1/4)^{n-1} f_2 prod_{i=1}^{n-1} (Omega^[i])^{-2}.
struct FnChain {
    std::vector<double> recursion;    // f_2 .. f_{n+1} via the recursion
    std::vector<double> closed_form;  // same values via the product formula
    std::vector<double> omega_sq;     // (Omega^[1])^2 .. (Omega^[n-1])^2 used
    int first_index = 2;
};

/// Evaluate f_2..f_{n+1} at t0 (needs the frequency tower up to n-1; links
/// past a tower failure are simply not produced).
FnChain fn_chain(const ScaleFactorModel& model, const ModeSpec& spec, double t0, int n);

struct MaxOrderReport {
    int max_order;                       // largest n with a positive iterate built
    std::optional<TowerFailure> failure; // why n_cap was not reached, if it wasn't
};

/// Largest adiabatic order <= n_cap constructible at t0, with the failure
/// mode (HadamardViolation vs OrderExhausted) when the cap is not reached.
MaxOrderReport max_adiabatic_order(const ScaleFactorModel& model, const ModeSpec& spec,
                                   double t0, int n_cap);

} // namespace adiavac

#endif
