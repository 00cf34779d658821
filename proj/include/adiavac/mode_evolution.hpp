#ifndef ADIAVAC_MODE_EVOLUTION_HPP
#define ADIAVAC_MODE_EVOLUTION_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "adiavac/adiabatic.hpp"

namespace adiavac {

using cplx = std::complex<double>;

/// Sampled trajectory of one mode. The integration runs in the symplectic
/// pair (q, p) = (T, a^3 T-dot), whose Wronskian Im(conj(q) p) = -1/2 is an
/// exact invariant of the flow; p is stored alongside T-dot so the pairing
/// can be checked without re-touching the model.
struct ModeSolution {
    std::vector<double> times;     // strictly increasing
    std::vector<cplx> T;
    std::vector<cplx> T_dot;
    std::vector<cplx> p;           // a^3 T_dot, the integrator's own state
    ModeSpec mode;
    int order_n;                   // provenance: adiabatic order of the data
    double t0;                     // provenance: where the data was imposed
    double max_wronskian_error;    // max over samples of |Im(conj(q) p) + 1/2|
    long rhs_evaluations;

    size_t index_of_time(double t) const;  // exact-grid lookup
};

/// Integrate T'' + 3(a'/a) T' + omega^2 T = 0 from adiabatic initial data to
/// t_end (either direction), sampling `samples` points uniformly from
/// init.t0 to t_end via dense output. Local error per step <= tol.
ModeSolution integrate_mode(const ScaleFactorModel& model, const ModeSpec& spec,
                            const AdiabaticInitialData& init, double t_end,
                            double tol = 1e-10, int samples = 201);

/// Rank-one two-point matrix of a normalized mode pair:
///   S = [ |p|^2      -q conj(p) ]
///       [ -conj(q) p  |q|^2     ]
/// Hermitian, positive semidefinite, det S = 0.
struct TwoPointMatrix {
    cplx s00, s01, s10, s11;

    cplx det() const { return s00 * s11 - s01 * s10; }
    double trace() const { return s00.real() + s11.real(); }
};

/// Requires |conj(q) p - q conj(p) + i| <= 1e-8 (WronskianBroken otherwise).
TwoPointMatrix two_point_matrix(cplx q, cplx p);

struct PositivityReport {
    int trials;
    int violations;          // trials where lhs exceeded rhs beyond rounding
    double max_violation;    // max over trials of max(0, lhs - rhs)
};

/// Monte-Carlo check of the quasifree positivity inequality
///   1/4 |sigma(F1,F2)|^2 <= mu(F1,F1) mu(F2,F2)
/// with mu(F,G) = Re(F^T S G) and sigma the per-mode symplectic form
/// -(F1[0] F2[1] - F2[0] F1[1]), over `trials` random real pairs in [-1,1]^2.
PositivityReport quasifree_positivity_check(const TwoPointMatrix& S, int trials,
                                            std::uint64_t seed = 0x5eed5eedULL);

struct BogoliubovPair {
    cplx alpha;
    cplx beta;
};

/// Coefficients expanding solution b in (solution a, conjugate solution a) at
/// time t (t must be a stored sample of both):
///   alpha = i (conj(q_a) p_b - conj(p_a) q_b)
///   beta  = -i (q_a p_b - p_a q_b)
/// Both solutions Wronskian-normalized at t implies |alpha|^2 - |beta|^2 = 1.
BogoliubovPair bogoliubov(const ModeSolution& sol_a, const ModeSolution& sol_b, double t);

} // namespace adiavac

#endif
