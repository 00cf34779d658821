#ifndef ADIAVAC_SCALE_FACTOR_HPP
#define ADIAVAC_SCALE_FACTOR_HPP

#include <map>
#include <string>
#include <vector>

#include "adiavac/jet.hpp"

namespace adiavac {

enum class ScaleFactorKind { Constant, DeSitter, PowerLaw, TanhTransition, Spline };

/// A Robertson-Walker scale factor a(t), strictly positive on its domain,
/// able to emit jets of a at any admissible point up to its smoothness class.
///
/// Built-in kinds:
///   constant(A)                 a(t) = A
///   de_sitter(H)                a(t) = exp(H t)
///   power_law(p, t_offset)      a(t) = (t + t_offset)^p   on t + t_offset > 0
///   tanh_transition(A, B, tau)  a(t) = A + B tanh(t/tau), |B| < A
///   spline(knots)               natural C^2 cubic through (t_i, a_i)
///
/// The analytic kinds report an unbounded smoothness class; the spline kind
/// reports class 2 and refuses jets of higher order rather than silently
/// extrapolating.
class ScaleFactorModel {
public:
    static ScaleFactorModel constant(double A);
    static ScaleFactorModel de_sitter(double H);
    static ScaleFactorModel power_law(double p, double t_offset);
    static ScaleFactorModel tanh_transition(double A, double B, double tau);
    static ScaleFactorModel spline(std::vector<double> t, std::vector<double> a);

    /// Build from key=value pairs, e.g. {kind: de_sitter, H: 0.1}. The spline
    /// kind takes knots=<path to a two-column CSV (t, a)>.
    static ScaleFactorModel from_key_values(const std::map<std::string, std::string>& kv);
    /// Parse a plain-text key=value definition file.
    static ScaleFactorModel from_file(const std::string& path);

    ScaleFactorKind kind() const { return kind_; }
    /// Maximal derivative order reliably available (INT_MAX when analytic).
    int smoothness_class() const;

    double value(double t) const;
    /// Jet of a at t; order > smoothness_class() is SmoothnessExceeded.
    Jet jet(double t, int order) const;

    /// Human/machine readable one-line description, e.g. "de_sitter(H=0.1)".
    std::string describe() const;

private:
    ScaleFactorModel() = default;

    void check_domain(double t) const;

    ScaleFactorKind kind_ = ScaleFactorKind::Constant;
    // parameters; meaning depends on kind
    double A_ = 1.0;      // constant / tanh amplitude
    double H_ = 0.0;      // de Sitter rate
    double p_ = 0.0;      // power-law exponent
    double t_offset_ = 0.0;
    double B_ = 0.0;      // tanh step
    double tau_ = 1.0;    // tanh time scale
    // spline data
    std::vector<double> knot_t_;
    std::vector<double> knot_a_;
    std::vector<double> knot_m_;  // second derivatives at knots
};

} // namespace adiavac

#endif
