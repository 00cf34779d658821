#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "adiavac/cosmology.hpp"
#include "adiavac/scale_factor.hpp"

using namespace adiavac;

namespace {

// a(t) = 2 + tanh(t/1.3) at t = 0.3: Taylor coefficients a^(j)/j! computed
// with 25-digit symbolic differentiation and frozen here.
constexpr double tanh_jet_expected[13] = {
    2.226758156925051782322138,
    0.7296774909753489157050125,
    -0.1272771715409740193299697,
    -0.1217197351696283475443267,
    0.04633547307574128272819833,
    0.02160291239634388665152957,
    -0.01389762357676352347474256,
    -0.003103771080661176001039343,
    0.003698863001994891403297183,
    0.0002073789847616648077647933,
    -0.0008974826742051043999953123,
    0.00007773320527204268648121018,
    0.0001997319678442238732486914,
};

// 4th-order central stencils for derivatives 1..4 (7-point rows padded with
// zeros), offsets -3h..+3h, divided by h^order.
constexpr double stencil[4][7] = {
    {0, 1.0 / 12, -8.0 / 12, 0, 8.0 / 12, -1.0 / 12, 0},
    {0, -1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12, 0},
    {1.0 / 8, -1.0, 13.0 / 8, 0, -13.0 / 8, 1.0, -1.0 / 8},
    {-1.0 / 6, 2.0, -13.0 / 2, 28.0 / 3, -13.0 / 2, 2.0, -1.0 / 6},
};

double fd_derivative(const ScaleFactorModel& model, double t, int order, double h) {
    double s = 0.0;
    for (int i = 0; i < 7; ++i) s += stencil[order - 1][i] * model.value(t + (i - 3) * h);
    return s / std::pow(h, order);
}

std::string write_temp_file(const char* name, const std::string& body) {
    std::string path = std::string("/tmp/adiavac_test_") + name;
    std::ofstream out(path);
    out << body;
    return path;
}

} // namespace

TEST_CASE("energy eigenvalues per curvature case") {
    CHECK(energy_eigenvalue(ModeSpec(1, 2, 0.0)) == 8.0);
    CHECK(energy_eigenvalue(ModeSpec(0, 0, 1.0)) == 0.0);
    CHECK(energy_eigenvalue(ModeSpec(-1, 0, 1.0)) == 1.0);
    CHECK(energy_eigenvalue(ModeSpec(1, 3, 0.0)) == 15.0);

    // monotone in k for kappa = 0
    double prev = -1.0;
    for (double k = 0.0; k <= 8.0; k += 0.5) {
        const double e = energy_eigenvalue(ModeSpec(0, k, 0.0));
        CHECK(e >= prev);
        prev = e;
    }
}

TEST_CASE("mode spec validation") {
    CHECK_THROWS_AS(ModeSpec(2, 1, 1), Error);
    CHECK_THROWS_AS(ModeSpec(1, 2.5, 1), Error);  // discrete spectrum
    CHECK_THROWS_AS(ModeSpec(0, -1.0, 1), Error);
    CHECK_THROWS_AS(ModeSpec(0, 1.0, -0.5), Error);
    CHECK_NOTHROW(ModeSpec(-1, 2.5, 1));
    CHECK_NOTHROW(ModeSpec(0, 0.0, 0.0));
}

TEST_CASE("constant model jets") {
    const ScaleFactorModel m = ScaleFactorModel::constant(1.0);
    const Jet j = m.jet(17.3, 4);
    CHECK(j.order() == 4);
    CHECK(j.coeff(0) == 1.0);
    for (int i = 1; i <= 4; ++i) CHECK(j.coeff(i) == 0.0);
    CHECK(m.smoothness_class() > 1000);
}

TEST_CASE("de Sitter jet coefficients H^j/j! e^{Ht}") {
    const ScaleFactorModel m = ScaleFactorModel::de_sitter(0.1);
    const Jet j = m.jet(0.0, 2);
    CHECK(j.coeff(0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(j.coeff(1) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(j.coeff(2) == doctest::Approx(0.005).epsilon(1e-15));

    const Jet j12 = m.jet(1.7, 12);
    const double a = std::exp(0.1 * 1.7);
    double expect = a;
    for (int n = 0; n <= 12; ++n) {
        CHECK(j12.coeff(n) == doctest::Approx(expect).epsilon(1e-10));
        expect *= 0.1 / (n + 1);
    }
}

TEST_CASE("power-law jets match falling-factorial derivatives to order 12") {
    const double p = 2.6, off = 3.0, t = 0.4;
    const ScaleFactorModel m = ScaleFactorModel::power_law(p, off);
    const Jet j = m.jet(t, 12);
    const double u = t + off;
    double coeff = std::pow(u, p);
    for (int n = 0; n <= 12; ++n) {
        CHECK(j.coeff(n) == doctest::Approx(coeff).epsilon(1e-10));
        coeff *= (p - n) / ((n + 1) * u);
    }
    CHECK_THROWS_AS(m.jet(-3.0, 2), Error);  // domain edge
    CHECK_THROWS_AS(m.value(-4.0), Error);
}

TEST_CASE("tanh jets match frozen symbolic coefficients to order 12") {
    const ScaleFactorModel m = ScaleFactorModel::tanh_transition(2.0, 1.0, 1.3);
    const Jet j = m.jet(0.3, 12);
    for (int n = 0; n <= 12; ++n) {
        const double expect = tanh_jet_expected[n];
        CHECK(std::abs(j.coeff(n) - expect) <= 1e-10 * std::max(1.0, std::abs(expect)));
    }
}

TEST_CASE("tanh construction rejects non-positive profiles") {
    CHECK_THROWS_AS(ScaleFactorModel::tanh_transition(1.0, 1.0, 1.0), Error);
    CHECK_THROWS_AS(ScaleFactorModel::tanh_transition(0.5, 1.0, 1.0), Error);
    CHECK_NOTHROW(ScaleFactorModel::tanh_transition(1.01, -1.0, 2.0));
}

TEST_CASE("analytic jets vs finite differences, orders 1-4") {
    // orders 1-2 at the literal 1e-4 spacing; orders 3-4 need a larger step
    // before roundoff in the stencil numerator eats the quotient
    const ScaleFactorModel models[] = {
        ScaleFactorModel::de_sitter(0.8),
        ScaleFactorModel::tanh_transition(2.0, 1.0, 1.0),
        ScaleFactorModel::power_law(2.5, 3.0),
    };
    for (const auto& m : models) {
        const double t = 0.4;
        const Jet j = m.jet(t, 4);
        for (int order = 1; order <= 4; ++order) {
            const double h = order <= 2 ? 1e-4 : 0.02;
            const double fd = fd_derivative(m, t, order, h);
            const double exact = j.derivative(order);
            CHECK(std::abs(fd - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
        }
    }
}

TEST_CASE("spline: C2 interpolation, class-2 jets, SmoothnessExceeded above") {
    std::vector<double> t, a;
    for (int i = 0; i <= 20; ++i) {
        const double x = -2.0 + 0.2 * i;
        t.push_back(x);
        a.push_back(2.0 + std::tanh(x));
    }
    const ScaleFactorModel s = ScaleFactorModel::spline(t, a);
    CHECK(s.smoothness_class() == 2);

    // interpolates knots exactly, approximates between
    CHECK(s.value(0.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(s.value(0.1) == doctest::Approx(2.0 + std::tanh(0.1)).epsilon(1e-3));

    const Jet j = s.jet(0.1, 2);
    CHECK(j.order() == 2);
    CHECK(j.coeff(0) == doctest::Approx(s.value(0.1)).epsilon(1e-14));
    // first derivative of the interpolant tracks sech^2
    const double sech = 1.0 / std::cosh(0.1);
    CHECK(j.derivative(1) == doctest::Approx(sech * sech).epsilon(1e-2));

    CHECK_THROWS_AS(s.jet(0.1, 3), Error);
    try {
        s.jet(0.1, 3);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SmoothnessExceeded);
    }
    CHECK_THROWS_AS(s.value(5.0), Error);  // outside knot range
}

TEST_CASE("spline jets agree with finite differences of the interpolant") {
    std::vector<double> t, a;
    for (int i = 0; i <= 40; ++i) {
        t.push_back(-2.0 + 0.1 * i);
        a.push_back(1.5 + 0.5 * std::sin(t.back()));
    }
    const ScaleFactorModel s = ScaleFactorModel::spline(t, a);
    const double x = 0.137;
    const Jet j = s.jet(x, 2);
    const double h = 1e-5;
    const double d1 = (s.value(x + h) - s.value(x - h)) / (2 * h);
    const double d2 = (s.value(x + h) - 2 * s.value(x) + s.value(x - h)) / (h * h);
    CHECK(j.derivative(1) == doctest::Approx(d1).epsilon(1e-6));
    CHECK(j.derivative(2) == doctest::Approx(d2).epsilon(1e-4));
}

TEST_CASE("omega squared jets") {
    const ModeSpec flat(0, 1.0, 0.0);
    const Jet stat = omega_squared_jet(Jet(0.0, {1.0, 0.0, 0.0}), flat);
    CHECK(stat.coeff(0) == 1.0);
    CHECK(stat.coeff(1) == 0.0);
    CHECK(stat.coeff(2) == 0.0);

    const ModeSpec open_zero(-1, 0.0, 1.0);
    const Jet two = omega_squared_jet(Jet(0.0, {1.0, 0.0, 0.0}), open_zero);
    CHECK(two.coeff(0) == 2.0);
    CHECK(two.coeff(1) == 0.0);

    // de Sitter H=1, E=1, m=1: omega^2(t) = e^{-2t} + 1
    const ScaleFactorModel ds = ScaleFactorModel::de_sitter(1.0);
    const Jet osq = omega_squared_jet(ds.jet(0.0, 4), open_zero);
    CHECK(osq.value() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(osq.derivative(1) == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(osq.derivative(2) == doctest::Approx(4.0).epsilon(1e-13));
}

TEST_CASE("omega^2 >= m^2 across models, times and modes") {
    const ScaleFactorModel models[] = {
        ScaleFactorModel::de_sitter(0.5),
        ScaleFactorModel::tanh_transition(3.0, 2.0, 0.7),
        ScaleFactorModel::power_law(1.5, 5.0),
    };
    for (const auto& m : models)
        for (double t = -2.0; t <= 2.0; t += 0.25)
            for (double k = 0.0; k <= 4.0; k += 1.0) {
                const ModeSpec spec(0, k, 0.75);
                const Jet osq = omega_squared_jet(m.jet(t, 2), spec);
                CHECK(osq.value() >= 0.75 * 0.75 - 1e-14);
            }
}

TEST_CASE("model definition files") {
    const std::string path = write_temp_file("model.cfg",
                                             "# comment line\n"
                                             "kind=de_sitter\n"
                                             "H = 0.1\n");
    const ScaleFactorModel m = ScaleFactorModel::from_file(path);
    CHECK(m.kind() == ScaleFactorKind::DeSitter);
    CHECK(m.value(1.0) == doctest::Approx(std::exp(0.1)).epsilon(1e-15));
    CHECK(m.describe() == "de_sitter(H=0.1)");

    const std::string knots = write_temp_file("knots.csv",
                                              "t,a\n"
                                              "0,1\n"
                                              "1,1.5\n"
                                              "2,2\n"
                                              "3,2.2\n");
    const std::string spline_cfg =
        write_temp_file("spline.cfg", "kind=spline\nknots=" + knots + "\n");
    const ScaleFactorModel s = ScaleFactorModel::from_file(spline_cfg);
    CHECK(s.kind() == ScaleFactorKind::Spline);
    CHECK(s.value(1.0) == doctest::Approx(1.5).epsilon(1e-12));

    CHECK_THROWS_AS(ScaleFactorModel::from_file("/nonexistent/x.cfg"), Error);
    const std::string bad = write_temp_file("bad.cfg", "kind=warp_drive\n");
    CHECK_THROWS_AS(ScaleFactorModel::from_file(bad), Error);
    const std::string missing = write_temp_file("missing.cfg", "kind=de_sitter\n");
    CHECK_THROWS_AS(ScaleFactorModel::from_file(missing), Error);
}
