#include "adiavac/cosmology.hpp"

#include <cmath>
#include <string>

namespace adiavac {

ModeSpec::ModeSpec(int kappa_, double k_, double m_) : kappa(kappa_), k(k_), m(m_) {
    if (kappa != -1 && kappa != 0 && kappa != 1)
        throw Error(ErrorKind::DomainError, "kappa must be -1, 0 or +1");
    if (!(k >= 0.0) || !std::isfinite(k))
        throw Error(ErrorKind::DomainError, "mode number k must be finite and >= 0");
    if (kappa == 1 && k != std::floor(k))
        throw Error(ErrorKind::DomainError, "kappa=+1 modes are discrete: k must be an integer");
    if (!(m >= 0.0) || !std::isfinite(m))
        throw Error(ErrorKind::DomainError, "mass m must be finite and >= 0");
}

double energy_eigenvalue(const ModeSpec& spec) {
    switch (spec.kappa) {
        case 1: return spec.k * (spec.k + 2.0);
        case 0: return spec.k * spec.k;
        default: return spec.k * spec.k + 1.0;
    }
}

Jet omega_squared_jet(const Jet& a, const ModeSpec& spec) {
    const double E = energy_eigenvalue(spec);
    return E / mul(a, a) + spec.m * spec.m;
}

double omega_squared_value(double a, const ModeSpec& spec) {
    return energy_eigenvalue(spec) / (a * a) + spec.m * spec.m;
}

} // namespace adiavac
