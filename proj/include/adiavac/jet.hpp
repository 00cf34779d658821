#ifndef ADIAVAC_JET_HPP
#define ADIAVAC_JET_HPP

#include <vector>

#include "adiavac/errors.hpp"

namespace adiavac {

/// Truncated Taylor expansion of a real function f at a base point t0,
/// stored in normalized form: coeff(j) = f^(j)(t0) / j!.
///
/// Jets are immutable values; every operation returns a fresh jet. Binary
/// operations require identical base points and truncate to the smaller of
/// the two orders (the honest order: higher coefficients of the result
/// would depend on coefficients the shorter input no longer carries).
class Jet {
public:
    Jet(double base_point, std::vector<double> coeffs);

    /// Jet of the constant function c (all derivatives zero).
    static Jet constant(double base_point, double value, int order);
    /// Jet of the identity-like function t -> value + (t - t0).
    static Jet variable(double base_point, double value, int order);

    double base_point() const { return t0_; }
    int order() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<double>& coeffs() const { return c_; }

    double coeff(int j) const { return c_[static_cast<size_t>(j)]; }
    double value() const { return c_[0]; }
    /// j-th derivative at the base point, i.e. j! * coeff(j).
    double derivative(int j) const;

    /// Evaluate the truncated polynomial at t0 + dt (Horner).
    double eval(double dt) const;

    /// Same coefficients extended with zeros up to `order`. Exact only when
    /// the underlying function is a polynomial of degree <= order().
    Jet pad(int order) const;

private:
    double t0_;
    std::vector<double> c_;
};

Jet add(const Jet& x, const Jet& y);
Jet sub(const Jet& x, const Jet& y);
Jet mul(const Jet& x, const Jet& y);
Jet div(const Jet& x, const Jet& y);

Jet sqrt(const Jet& x);                 // requires x.value() > 0
Jet exp(const Jet& x);
Jet powi(const Jet& x, int p);          // p < 0 requires x.value() != 0
Jet powf(const Jet& x, double p);       // requires x.value() > 0

/// Jet of f' at the same base point; order drops by one.
Jet derivative_jet(const Jet& x);

Jet operator+(const Jet& x, const Jet& y);
Jet operator-(const Jet& x, const Jet& y);
Jet operator*(const Jet& x, const Jet& y);
Jet operator/(const Jet& x, const Jet& y);
Jet operator-(const Jet& x);

Jet operator+(const Jet& x, double c);
Jet operator+(double c, const Jet& x);
Jet operator-(const Jet& x, double c);
Jet operator-(double c, const Jet& x);
Jet operator*(const Jet& x, double c);
Jet operator*(double c, const Jet& x);
Jet operator/(const Jet& x, double c);
Jet operator/(double c, const Jet& x);

} // namespace adiavac

#endif
