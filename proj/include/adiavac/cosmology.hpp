#ifndef ADIAVAC_COSMOLOGY_HPP
#define ADIAVAC_COSMOLOGY_HPP

#include "adiavac/jet.hpp"

namespace adiavac {

/// One spatial Fourier mode of the field: curvature sign kappa in {-1,0,+1},
/// mode number k (a non-negative integer when kappa=+1, a non-negative real
/// otherwise) and field mass m >= 0.
struct ModeSpec {
    int kappa;
    double k;
    double m;

    ModeSpec(int kappa_, double k_, double m_);

    bool operator==(const ModeSpec& o) const {
        return kappa == o.kappa && k == o.k && m == o.m;
    }
};

/// Spatial Laplacian eigenvalue E(k):
///   kappa = +1: k(k+2),  kappa = 0: k^2,  kappa = -1: k^2 + 1.
double energy_eigenvalue(const ModeSpec& spec);

/// omega_k^2(t) = E(k)/a^2(t) + m^2 as a jet at the base point of a.
Jet omega_squared_jet(const Jet& a, const ModeSpec& spec);

/// Point value of omega_k^2 given a = a(t).
double omega_squared_value(double a, const ModeSpec& spec);

} // namespace adiavac

#endif
