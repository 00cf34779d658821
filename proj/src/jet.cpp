#include "adiavac/jet.hpp"

#include <cmath>
#include <cstddef>
#include <string>

namespace adiavac {

namespace {

void require_same_base(const Jet& x, const Jet& y) {
    if (x.base_point() != y.base_point())
        throw Error(ErrorKind::BasePointMismatch,
                    "jets at t0=" + std::to_string(x.base_point()) + " and t0=" +
                        std::to_string(y.base_point()));
}

int common_order(const Jet& x, const Jet& y) {
    return x.order() < y.order() ? x.order() : y.order();
}

} // namespace

Jet::Jet(double base_point, std::vector<double> coeffs) : t0_(base_point), c_(std::move(coeffs)) {
    if (c_.empty())
        throw Error(ErrorKind::InvariantFailure, "jet needs at least the order-0 coefficient");
    if (!std::isfinite(t0_))
        throw Error(ErrorKind::InvariantFailure, "non-finite base point");
    for (double v : c_)
        if (!std::isfinite(v))
            throw Error(ErrorKind::InvariantFailure, "non-finite jet coefficient");
}

Jet Jet::constant(double base_point, double value, int order) {
    std::vector<double> c(static_cast<size_t>(order) + 1, 0.0);
    c[0] = value;
    return Jet(base_point, std::move(c));
}

Jet Jet::variable(double base_point, double value, int order) {
    std::vector<double> c(static_cast<size_t>(order) + 1, 0.0);
    c[0] = value;
    if (order >= 1) c[1] = 1.0;
    return Jet(base_point, std::move(c));
}

double Jet::derivative(int j) const {
    double f = 1.0;
    for (int i = 2; i <= j; ++i) f *= i;
    return f * c_[static_cast<size_t>(j)];
}

double Jet::eval(double dt) const {
    double r = 0.0;
    for (size_t i = c_.size(); i-- > 0;) r = c_[i] + dt * r;
    return r;
}

Jet Jet::pad(int order) const {
    std::vector<double> c(c_);
    c.resize(static_cast<size_t>(order) + 1, 0.0);
    return Jet(t0_, std::move(c));
}

Jet add(const Jet& x, const Jet& y) {
    require_same_base(x, y);
    const int n = common_order(x, y);
    std::vector<double> c(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) c[static_cast<size_t>(i)] = x.coeff(i) + y.coeff(i);
    return Jet(x.base_point(), std::move(c));
}

Jet sub(const Jet& x, const Jet& y) {
    require_same_base(x, y);
    const int n = common_order(x, y);
    std::vector<double> c(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) c[static_cast<size_t>(i)] = x.coeff(i) - y.coeff(i);
    return Jet(x.base_point(), std::move(c));
}

Jet mul(const Jet& x, const Jet& y) {
    require_same_base(x, y);
    const int n = common_order(x, y);
    std::vector<double> c(static_cast<size_t>(n) + 1, 0.0);
    for (int i = 0; i <= n; ++i) {
        double s = 0.0;
        for (int j = 0; j <= i; ++j) s += x.coeff(j) * y.coeff(i - j);
        c[static_cast<size_t>(i)] = s;
    }
    return Jet(x.base_point(), std::move(c));
}

Jet div(const Jet& x, const Jet& y) {
    require_same_base(x, y);
    if (y.value() == 0.0)
        throw Error(ErrorKind::DivisionByZeroJet, "divisor jet vanishes at the base point");
    const int n = common_order(x, y);
    std::vector<double> q(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        double s = x.coeff(i);
        for (int j = 0; j < i; ++j) s -= q[static_cast<size_t>(j)] * y.coeff(i - j);
        q[static_cast<size_t>(i)] = s / y.value();
    }
    return Jet(x.base_point(), std::move(q));
}

Jet sqrt(const Jet& x) {
    if (!(x.value() > 0.0))
        throw Error(ErrorKind::NonPositiveLeadingCoefficient,
                    "sqrt of jet with leading coefficient " + std::to_string(x.value()));
    const int n = x.order();
    std::vector<double> s(static_cast<size_t>(n) + 1);
    s[0] = std::sqrt(x.value());
    for (int i = 1; i <= n; ++i) {
        double acc = x.coeff(i);
        for (int j = 1; j < i; ++j) acc -= s[static_cast<size_t>(j)] * s[static_cast<size_t>(i - j)];
        s[static_cast<size_t>(i)] = acc / (2.0 * s[0]);
    }
    return Jet(x.base_point(), std::move(s));
}

Jet exp(const Jet& x) {
    const int n = x.order();
    std::vector<double> e(static_cast<size_t>(n) + 1);
    e[0] = std::exp(x.value());
    for (int i = 1; i <= n; ++i) {
        double s = 0.0;
        for (int j = 1; j <= i; ++j) s += j * x.coeff(j) * e[static_cast<size_t>(i - j)];
        e[static_cast<size_t>(i)] = s / i;
    }
    return Jet(x.base_point(), std::move(e));
}

Jet powi(const Jet& x, int p) {
    if (p < 0) {
        if (x.value() == 0.0)
            throw Error(ErrorKind::DivisionByZeroJet, "negative power of jet vanishing at base point");
        return div(Jet::constant(x.base_point(), 1.0, x.order()), powi(x, -p));
    }
    Jet acc = Jet::constant(x.base_point(), 1.0, x.order());
    Jet base = x;
    // binary exponentiation
    while (p > 0) {
        if (p & 1) acc = mul(acc, base);
        p >>= 1;
        if (p > 0) base = mul(base, base);
    }
    return acc;
}

Jet powf(const Jet& x, double p) {
    if (!(x.value() > 0.0))
        throw Error(ErrorKind::NonPositiveLeadingCoefficient,
                    "powf of jet with leading coefficient " + std::to_string(x.value()));
    const int n = x.order();
    std::vector<double> w(static_cast<size_t>(n) + 1);
    w[0] = std::pow(x.value(), p);
    // from x * w' = p * w * x':  w_i = (1/(i x_0)) sum_{j=1..i} ((p+1) j - i) x_j w_{i-j}
    for (int i = 1; i <= n; ++i) {
        double s = 0.0;
        for (int j = 1; j <= i; ++j)
            s += ((p + 1.0) * j - i) * x.coeff(j) * w[static_cast<size_t>(i - j)];
        w[static_cast<size_t>(i)] = s / (i * x.value());
    }
    return Jet(x.base_point(), std::move(w));
}

Jet derivative_jet(const Jet& x) {
    if (x.order() < 1)
        throw OrderError(0, 1, "cannot differentiate an order-0 jet");
    const int n = x.order() - 1;
    std::vector<double> d(static_cast<size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) d[static_cast<size_t>(j)] = (j + 1) * x.coeff(j + 1);
    return Jet(x.base_point(), std::move(d));
}

Jet operator+(const Jet& x, const Jet& y) { return add(x, y); }
Jet operator-(const Jet& x, const Jet& y) { return sub(x, y); }
Jet operator*(const Jet& x, const Jet& y) { return mul(x, y); }
Jet operator/(const Jet& x, const Jet& y) { return div(x, y); }

Jet operator-(const Jet& x) {
    std::vector<double> c(x.coeffs());
    for (double& v : c) v = -v;
    return Jet(x.base_point(), std::move(c));
}

Jet operator+(const Jet& x, double c) { return add(x, Jet::constant(x.base_point(), c, x.order())); }
Jet operator+(double c, const Jet& x) { return x + c; }
Jet operator-(const Jet& x, double c) { return x + (-c); }
Jet operator-(double c, const Jet& x) { return add(-x, Jet::constant(x.base_point(), c, x.order())); }

Jet operator*(const Jet& x, double c) {
    std::vector<double> v(x.coeffs());
    for (double& t : v) t *= c;
    return Jet(x.base_point(), std::move(v));
}
Jet operator*(double c, const Jet& x) { return x * c; }
Jet operator/(const Jet& x, double c) { return x * (1.0 / c); }
Jet operator/(double c, const Jet& x) { return div(Jet::constant(x.base_point(), c, x.order()), x); }

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::BasePointMismatch: return "base_point_mismatch";
        case ErrorKind::DivisionByZeroJet: return "division_by_zero_jet";
        case ErrorKind::NonPositiveLeadingCoefficient: return "non_positive_leading_coefficient";
        case ErrorKind::OrderExhausted: return "order_exhausted";
        case ErrorKind::SmoothnessExceeded: return "smoothness_exceeded";
        case ErrorKind::HadamardViolation: return "hadamard_violation";
        case ErrorKind::DomainError: return "domain_error";
        case ErrorKind::NotAffine: return "not_affine";
        case ErrorKind::DegenerateSlope: return "degenerate_slope";
        case ErrorKind::WronskianBroken: return "wronskian_broken";
        case ErrorKind::ModeMismatch: return "mode_mismatch";
        case ErrorKind::StepFailure: return "step_failure";
        case ErrorKind::PositivityLoss: return "positivity_loss";
        case ErrorKind::ParseError: return "parse_error";
        case ErrorKind::InvariantFailure: return "invariant_failure";
    }
    return "unknown_error";
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::HadamardViolation:
            return 2;
        case ErrorKind::OrderExhausted:
        case ErrorKind::SmoothnessExceeded:
            return 3;
        case ErrorKind::ParseError:
        case ErrorKind::DomainError:
            return 4;
        default:
            return 5;
    }
}

} // namespace adiavac
