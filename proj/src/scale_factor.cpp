#include "adiavac/scale_factor.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <fstream>
#include <sstream>

#include "adiavac/io.hpp"

namespace adiavac {

namespace {

// Jet of tanh(t/tau) at t, from s' = (1 - s^2)/tau: the coefficient recurrence
// needs only s_0..s_i to produce s_{i+1}, so it runs to any order without the
// overflow risk of forming exp(2t/tau) first.
std::vector<double> tanh_jet_coeffs(double t, double tau, int order) {
    std::vector<double> s(static_cast<size_t>(order) + 1);
    s[0] = std::tanh(t / tau);
    for (int i = 0; i < order; ++i) {
        double sq = 0.0;
        for (int j = 0; j <= i; ++j) sq += s[static_cast<size_t>(j)] * s[static_cast<size_t>(i - j)];
        const double rhs = (i == 0) ? 1.0 - sq : -sq;
        s[static_cast<size_t>(i) + 1] = rhs / (tau * (i + 1));
    }
    return s;
}

} // namespace

ScaleFactorModel ScaleFactorModel::constant(double A) {
    if (!(A > 0.0)) throw Error(ErrorKind::DomainError, "constant model needs A > 0");
    ScaleFactorModel m;
    m.kind_ = ScaleFactorKind::Constant;
    m.A_ = A;
    return m;
}

ScaleFactorModel ScaleFactorModel::de_sitter(double H) {
    if (!std::isfinite(H)) throw Error(ErrorKind::DomainError, "de_sitter model needs finite H");
    ScaleFactorModel m;
    m.kind_ = ScaleFactorKind::DeSitter;
    m.H_ = H;
    return m;
}

ScaleFactorModel ScaleFactorModel::power_law(double p, double t_offset) {
    if (!std::isfinite(p) || !std::isfinite(t_offset))
        throw Error(ErrorKind::DomainError, "power_law model needs finite parameters");
    ScaleFactorModel m;
    m.kind_ = ScaleFactorKind::PowerLaw;
    m.p_ = p;
    m.t_offset_ = t_offset;
    return m;
}

ScaleFactorModel ScaleFactorModel::tanh_transition(double A, double B, double tau) {
    if (!(tau != 0.0) || !std::isfinite(A) || !std::isfinite(B) || !std::isfinite(tau))
        throw Error(ErrorKind::DomainError, "tanh_transition model needs finite A, B and tau != 0");
    if (!(A > std::abs(B)))
        throw Error(ErrorKind::DomainError, "tanh_transition needs A > |B| so that a(t) > 0 everywhere");
    ScaleFactorModel m;
    m.kind_ = ScaleFactorKind::TanhTransition;
    m.A_ = A;
    m.B_ = B;
    m.tau_ = tau;
    return m;
}

ScaleFactorModel ScaleFactorModel::spline(std::vector<double> t, std::vector<double> a) {
    if (t.size() != a.size() || t.size() < 2)
        throw Error(ErrorKind::DomainError, "spline model needs >= 2 knots with matching columns");
    for (size_t i = 0; i + 1 < t.size(); ++i)
        if (!(t[i] < t[i + 1]))
            throw Error(ErrorKind::DomainError, "spline knot times must be strictly increasing");
    for (double v : a)
        if (!(v > 0.0)) throw Error(ErrorKind::DomainError, "spline knot values must be positive");

    // natural cubic: tridiagonal solve for second derivatives M_i, M_0 = M_{n-1} = 0
    const size_t n = t.size();
    std::vector<double> M(n, 0.0);
    if (n > 2) {
        std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
        for (size_t i = 1; i + 1 < n; ++i) {
            const double h0 = t[i] - t[i - 1];
            const double h1 = t[i + 1] - t[i];
            diag[i] = 2.0 * (h0 + h1);
            upper[i] = h1;
            rhs[i] = 6.0 * ((a[i + 1] - a[i]) / h1 - (a[i] - a[i - 1]) / h0);
        }
        // Thomas, interior rows only
        for (size_t i = 2; i + 1 < n; ++i) {
            const double w = (t[i] - t[i - 1]) / diag[i - 1];
            diag[i] -= w * upper[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        for (size_t i = n - 2; i >= 1; --i) {
            M[i] = (rhs[i] - upper[i] * M[i + 1]) / diag[i];
            if (i == 1) break;
        }
    }

    ScaleFactorModel m;
    m.kind_ = ScaleFactorKind::Spline;
    m.knot_t_ = std::move(t);
    m.knot_a_ = std::move(a);
    m.knot_m_ = std::move(M);
    return m;
}

int ScaleFactorModel::smoothness_class() const {
    return kind_ == ScaleFactorKind::Spline ? 2 : INT_MAX;
}

void ScaleFactorModel::check_domain(double t) const {
    switch (kind_) {
        case ScaleFactorKind::PowerLaw:
            if (!(t + t_offset_ > 0.0))
                throw Error(ErrorKind::DomainError,
                            "power_law model undefined at t = " + std::to_string(t));
            break;
        case ScaleFactorKind::Spline:
            if (t < knot_t_.front() || t > knot_t_.back())
                throw Error(ErrorKind::DomainError,
                            "t = " + std::to_string(t) + " outside spline knot range");
            break;
        default:
            break;
    }
}

double ScaleFactorModel::value(double t) const {
    check_domain(t);
    switch (kind_) {
        case ScaleFactorKind::Constant: return A_;
        case ScaleFactorKind::DeSitter: return std::exp(H_ * t);
        case ScaleFactorKind::PowerLaw: return std::pow(t + t_offset_, p_);
        case ScaleFactorKind::TanhTransition: return A_ + B_ * std::tanh(t / tau_);
        case ScaleFactorKind::Spline: break;
    }
    // spline evaluation
    const auto it = std::upper_bound(knot_t_.begin(), knot_t_.end(), t);
    size_t i = (it == knot_t_.begin()) ? 0 : static_cast<size_t>(it - knot_t_.begin()) - 1;
    if (i + 1 >= knot_t_.size()) i = knot_t_.size() - 2;
    const double h = knot_t_[i + 1] - knot_t_[i];
    const double x = t - knot_t_[i];
    const double y = knot_t_[i + 1] - t;
    return (knot_m_[i] * y * y * y + knot_m_[i + 1] * x * x * x) / (6.0 * h) +
           (knot_a_[i] / h - knot_m_[i] * h / 6.0) * y +
           (knot_a_[i + 1] / h - knot_m_[i + 1] * h / 6.0) * x;
}

Jet ScaleFactorModel::jet(double t, int order) const {
    if (order < 0) throw Error(ErrorKind::DomainError, "jet order must be non-negative");
    if (order > smoothness_class())
        throw Error(ErrorKind::SmoothnessExceeded,
                    "order " + std::to_string(order) + " jet of a class-" +
                        std::to_string(smoothness_class()) + " model");
    check_domain(t);

    switch (kind_) {
        case ScaleFactorKind::Constant:
            return Jet::constant(t, A_, order);
        case ScaleFactorKind::DeSitter: {
            // c_j = e^{Ht} H^j / j!
            std::vector<double> c(static_cast<size_t>(order) + 1);
            c[0] = std::exp(H_ * t);
            for (int j = 1; j <= order; ++j)
                c[static_cast<size_t>(j)] = c[static_cast<size_t>(j) - 1] * H_ / j;
            return Jet(t, std::move(c));
        }
        case ScaleFactorKind::PowerLaw:
            return powf(Jet::variable(t, t + t_offset_, order), p_);
        case ScaleFactorKind::TanhTransition: {
            std::vector<double> c = tanh_jet_coeffs(t, tau_, order);
            for (double& v : c) v *= B_;
            c[0] += A_;
            return Jet(t, std::move(c));
        }
        case ScaleFactorKind::Spline: {
            const auto it = std::upper_bound(knot_t_.begin(), knot_t_.end(), t);
            size_t i = (it == knot_t_.begin()) ? 0 : static_cast<size_t>(it - knot_t_.begin()) - 1;
            if (i + 1 >= knot_t_.size()) i = knot_t_.size() - 2;
            const double h = knot_t_[i + 1] - knot_t_[i];
            const double x = t - knot_t_[i];
            const double y = knot_t_[i + 1] - t;
            const double s0 = value(t);
            std::vector<double> c(static_cast<size_t>(order) + 1, 0.0);
            c[0] = s0;
            if (order >= 1)
                c[1] = (-knot_m_[i] * y * y + knot_m_[i + 1] * x * x) / (2.0 * h) +
                       (knot_a_[i + 1] - knot_a_[i]) / h - (knot_m_[i + 1] - knot_m_[i]) * h / 6.0;
            if (order >= 2)
                c[2] = (knot_m_[i] * y + knot_m_[i + 1] * x) / (2.0 * h);
            return Jet(t, std::move(c));
        }
    }
    throw Error(ErrorKind::InvariantFailure, "unreachable model kind");
}

std::string ScaleFactorModel::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case ScaleFactorKind::Constant:
            os << "constant(A=" << fmt_shortest(A_) << ")"; break;
        case ScaleFactorKind::DeSitter:
            os << "de_sitter(H=" << fmt_shortest(H_) << ")"; break;
        case ScaleFactorKind::PowerLaw:
            os << "power_law(p=" << fmt_shortest(p_) << ",t_offset=" << fmt_shortest(t_offset_) << ")"; break;
        case ScaleFactorKind::TanhTransition:
            os << "tanh_transition(A=" << fmt_shortest(A_) << ",B=" << fmt_shortest(B_)
               << ",tau=" << fmt_shortest(tau_) << ")"; break;
        case ScaleFactorKind::Spline:
            os << "spline(" << knot_t_.size() << " knots on [" << fmt_shortest(knot_t_.front())
               << "," << fmt_shortest(knot_t_.back()) << "])"; break;
    }
    return os.str();
}

ScaleFactorModel ScaleFactorModel::from_key_values(const std::map<std::string, std::string>& kv) {
    const auto get = [&kv](const std::string& key) -> const std::string& {
        const auto it = kv.find(key);
        if (it == kv.end())
            throw Error(ErrorKind::ParseError, "scale factor definition missing key '" + key + "'");
        return it->second;
    };
    const auto num = [&get](const std::string& key) { return parse_double(get(key), key); };

    const std::string kind = get("kind");
    if (kind == "constant") return constant(num("A"));
    if (kind == "de_sitter" || kind == "desitter") return de_sitter(num("H"));
    if (kind == "power_law" || kind == "powerlaw") return power_law(num("p"), num("t_offset"));
    if (kind == "tanh_transition" || kind == "tanh")
        return tanh_transition(num("A"), num("B"), num("tau"));
    if (kind == "spline") {
        auto [t, a] = read_two_column_csv(get("knots"));
        return spline(std::move(t), std::move(a));
    }
    throw Error(ErrorKind::ParseError, "unknown scale factor kind '" + kind + "'");
}

ScaleFactorModel ScaleFactorModel::from_file(const std::string& path) {
    return from_key_values(read_key_value_file(path));
}

} // namespace adiavac
