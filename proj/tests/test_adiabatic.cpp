#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "adiavac/adiabatic.hpp"
#include "adiavac/probe.hpp"

using namespace adiavac;
using cplx = std::complex<double>;

namespace {

double omega_sq_of(const AdiabaticFrequency& f) { return f.omega.value() * f.omega.value(); }

std::vector<double> spline_knots_t() {
    std::vector<double> t;
    for (int i = 0; i <= 40; ++i) t.push_back(-2.0 + 0.1 * i);
    return t;
}

std::vector<double> spline_knots_a() {
    std::vector<double> a;
    for (int i = 0; i <= 40; ++i) a.push_back(2.0 + std::tanh(-2.0 + 0.1 * i));
    return a;
}

} // namespace

TEST_CASE("Minkowski fixed point: constant a reproduces omega at every order") {
    const double cases[][3] = {{1.0, 1.0, 1.0}, {0.0, 1.0, 1.0}, {4.0, 0.5, 1.0}, {1.0, 1.0, 1.7}};
    for (const auto& c : cases) {
        const double E = c[0], m = c[1], A = c[2];
        const double k = std::sqrt(E);  // kappa = 0 realizes E = k^2
        const ScaleFactorModel model = ScaleFactorModel::constant(A);
        const ModeSpec spec(0, k, m);
        const double omega = std::sqrt(E / (A * A) + m * m);

        const OmegaTower tower = omega_tower(model, spec, 0.0, 4);
        REQUIRE(!tower.failure);
        REQUIRE(tower.orders.size() == 5);
        for (const auto& f : tower.orders)
            CHECK(std::abs(f.omega.value() - omega) <= 1e-13);
    }
}

TEST_CASE("de Sitter H=0.1 spot values (symbolic oracle)") {
    const ScaleFactorModel model = ScaleFactorModel::de_sitter(0.1);
    const ModeSpec spec(-1, 0.0, 1.0);  // E = 1
    const OmegaTower tower = omega_tower(model, spec, 0.0, 2);
    REQUIRE(!tower.failure);
    REQUIRE(tower.orders.size() == 3);
    CHECK(std::abs(omega_sq_of(tower.orders[0]) - 2.0) <= 1e-14);
    CHECK(std::abs(omega_sq_of(tower.orders[1]) - 1.975625) <= 1e-12);
    CHECK(std::abs(omega_sq_of(tower.orders[2]) - 1.97563699362715138) <= 1e-12);
}

TEST_CASE("de Sitter H=1 fails (H3) at first iteration with the exact value") {
    const ScaleFactorModel model = ScaleFactorModel::de_sitter(1.0);
    const ModeSpec spec(-1, 0.0, 1.0);

    const OmegaTower tower = omega_tower(model, spec, 0.0, 1);
    REQUIRE(tower.failure.has_value());
    CHECK(tower.failure->kind == ErrorKind::HadamardViolation);
    CHECK(tower.failure->order_n == 1);
    CHECK(std::abs(tower.failure->omega_sq - (-0.4375)) <= 1e-12);
    CHECK(tower.orders.size() == 1);  // partial tower still reported

    const Jet a = model.jet(0.0, 4);
    CHECK_THROWS_AS(iterate_omega(zeroth_order(a, spec), a, spec), HadamardError);
    try {
        iterate_omega(zeroth_order(a, spec), a, spec);
    } catch (const HadamardError& e) {
        CHECK(e.order_n() == 1);
        CHECK(std::abs(e.omega_sq() - (-0.4375)) <= 1e-12);
    }
}

TEST_CASE("iteration consumes exactly two jet orders per step") {
    const ScaleFactorModel model = ScaleFactorModel::tanh_transition(2.0, 1.0, 1.0);
    const ModeSpec spec(0, 3.0, 1.0);
    const int n_max = 4;
    const OmegaTower tower = omega_tower(model, spec, 0.0, n_max);
    REQUIRE(!tower.failure);
    const int a_order = 2 * n_max + 2;
    for (const auto& f : tower.orders) {
        CHECK(f.omega.order() == a_order - 2 * f.order_n);
        CHECK(f.jet_budget_consumed() == 2 * f.order_n);
    }
}

TEST_CASE("iterate_omega rejects an exhausted jet budget") {
    const ScaleFactorModel model = ScaleFactorModel::de_sitter(0.05);
    const ModeSpec spec(0, 1.0, 1.0);
    const Jet a2 = model.jet(0.0, 2);
    AdiabaticFrequency f = zeroth_order(a2, spec);
    f = iterate_omega(f, a2, spec);  // order 0 jet now
    CHECK_THROWS_AS(iterate_omega(f, a2, spec), OrderError);

    // a-jet shorter than the frequency it should refine is also an error
    const Jet a6 = model.jet(0.0, 6);
    const AdiabaticFrequency f6 = zeroth_order(a6, spec);
    CHECK_THROWS_AS(iterate_omega(f6, a2, spec), OrderError);
}

TEST_CASE("spline tower stops with OrderExhausted at n=1") {
    const ScaleFactorModel s = ScaleFactorModel::spline(spline_knots_t(), spline_knots_a());
    const ModeSpec spec(0, 1.0, 1.0);
    const OmegaTower tower = omega_tower(s, spec, 0.0, 1);
    REQUIRE(tower.failure.has_value());
    CHECK(tower.failure->kind == ErrorKind::OrderExhausted);
    CHECK(tower.failure->order_n == 1);
    CHECK(tower.failure->demanded_order == 4);
    CHECK(tower.orders.size() == 1);  // Omega^[0] from the order-2 jet
    CHECK(tower.orders[0].omega.order() == 2);
}

TEST_CASE("tanh tower at the transition (frozen symbolic values)") {
    const ScaleFactorModel model = ScaleFactorModel::tanh_transition(2.0, 1.0, 1.0);
    const ModeSpec spec(0, 1.0, 1.0);
    const OmegaTower tower = omega_tower(model, spec, 0.0, 2);
    REQUIRE(!tower.failure);
    REQUIRE(tower.orders.size() == 3);
    CHECK(std::abs(omega_sq_of(tower.orders[0]) - 1.25) <= 1e-14);
    CHECK(std::abs(omega_sq_of(tower.orders[1]) - 1.0) <= 1e-12);
    CHECK(std::abs(omega_sq_of(tower.orders[2]) - 1.7975) <= 1e-12);
    for (const auto& f : tower.orders) CHECK(f.omega.value() > 0.0);
}

TEST_CASE("tanh tower cross-checked against finite differences in t") {
    // rebuild (Omega^[2])^2(0) with the omega^[1] time dependence obtained by
    // finite differencing point evaluations, instead of jet propagation
    const ScaleFactorModel model = ScaleFactorModel::tanh_transition(2.0, 1.0, 1.0);
    const ModeSpec spec(0, 1.0, 1.0);

    const auto omega1 = [&](double t) {
        const Jet a = model.jet(t, 2);
        return std::sqrt(
            omega1_squared_point(a.coeff(0), a.derivative(1), a.derivative(2), spec));
    };
    // 4th-order stencils so truncation stays well under the 1e-6 bound
    const double h = 1e-2;
    const double om1 = omega1(0.0);
    const double f1 = omega1(h), f2 = omega1(2 * h), fm1 = omega1(-h), fm2 = omega1(-2 * h);
    const double d1 = (fm2 - 8 * fm1 + 8 * f1 - f2) / (12 * h);
    const double d2 = (-fm2 + 16 * fm1 - 30 * om1 + 16 * f1 - f2) / (12 * h * h);

    const Jet a = model.jet(0.0, 2);
    const double asq = a.coeff(0) * a.coeff(0);
    const double osq = energy_eigenvalue(spec) / asq + spec.m * spec.m;
    const double fd_omega2_sq = osq - 0.75 * std::pow(a.derivative(1) / a.coeff(0), 2) -
                                1.5 * a.derivative(2) / a.coeff(0) + 0.75 * std::pow(d1 / om1, 2) -
                                0.5 * d2 / om1;
    CHECK(std::abs(fd_omega2_sq - 1.7975) <= 1e-6);
}

TEST_CASE("adiabatic initial data: flat-space positive frequency modes") {
    const ScaleFactorModel model = ScaleFactorModel::constant(1.0);

    // omega = 1: (E, m) = (0, 1)
    {
        const ModeSpec spec(0, 0.0, 1.0);
        const OmegaTower tower = omega_tower(model, spec, 0.0, 0);
        const AdiabaticInitialData d =
            adiabatic_initial_data(tower.orders[0], model.jet(0.0, 1), 0.0);
        CHECK(std::abs(d.T0 - cplx(1.0 / std::sqrt(2.0), 0.0)) <= 1e-15);
        CHECK(std::abs(d.T0_dot - cplx(0.0, -1.0 / std::sqrt(2.0))) <= 1e-15);
        CHECK(std::abs(wronskian_defect(d.T0, d.T0_dot)) <= 1e-15);  // a^3 = 1
    }
    // omega = 2: (E, m) = (0, 2)
    {
        const ModeSpec spec(0, 0.0, 2.0);
        const OmegaTower tower = omega_tower(model, spec, 0.0, 0);
        const AdiabaticInitialData d =
            adiabatic_initial_data(tower.orders[0], model.jet(0.0, 1), 0.0);
        CHECK(std::abs(d.T0 - cplx(0.5, 0.0)) <= 1e-15);
        CHECK(std::abs(d.T0_dot - cplx(0.0, -1.0)) <= 1e-15);
    }
}

TEST_CASE("Wronskian normalization across models, modes and orders") {
    const ScaleFactorModel models[] = {
        ScaleFactorModel::constant(1.0),
        ScaleFactorModel::de_sitter(0.05),
        ScaleFactorModel::de_sitter(0.1),
        ScaleFactorModel::power_law(2.0, 10.0),
        ScaleFactorModel::tanh_transition(2.0, 1.0, 1.0),
    };
    const ModeSpec specs[] = {
        ModeSpec(0, 1.0, 1.0),  ModeSpec(0, 5.0, 1.0),  ModeSpec(-1, 0.0, 1.0),
        ModeSpec(-1, 2.0, 0.5), ModeSpec(1, 3.0, 1.0),
    };
    int combos = 0;
    for (const auto& model : models)
        for (const auto& spec : specs)
            for (int n = 0; n <= 2; ++n) {
                const OmegaTower tower = omega_tower(model, spec, 0.0, n);
                if (tower.failure) continue;
                const Jet a1 = model.jet(0.0, 1);
                const AdiabaticInitialData d =
                    adiabatic_initial_data(tower.orders.back(), a1, 0.0);
                const double a3 = std::pow(model.value(0.0), 3.0);
                CHECK(std::abs(wronskian_defect(d.T0, a3 * d.T0_dot)) <= 1e-12);
                ++combos;
            }
    CHECK(combos >= 20);
}

TEST_CASE("large-k asymptotics: first iterate converges to omega") {
    const ScaleFactorModel model = ScaleFactorModel::tanh_transition(2.0, 1.0, 1.0);
    double prev = 1e300;
    for (double k : {1.0, 10.0, 100.0, 1000.0}) {
        const ModeSpec spec(0, k, 1.0);
        const OmegaTower tower = omega_tower(model, spec, 0.3, 1);
        REQUIRE(!tower.failure);
        const double osq0 = omega_sq_of(tower.orders[0]);
        const double osq1 = omega_sq_of(tower.orders[1]);
        const double rel = std::abs(osq1 / osq0 - 1.0);
        CHECK(rel < prev);
        prev = rel;
    }
    CHECK(prev <= 1e-6);  // by k = 1000 the WKB regime is fully established
}

TEST_CASE("zeroth order rejects the E = m = 0 degenerate mode") {
    const ScaleFactorModel model = ScaleFactorModel::constant(1.0);
    const ModeSpec null_mode(0, 0.0, 0.0);
    CHECK_THROWS_AS(zeroth_order(model.jet(0.0, 2), null_mode), HadamardError);
    const OmegaTower tower = omega_tower(model, null_mode, 0.0, 1);
    CHECK(tower.orders.empty());
    REQUIRE(tower.failure.has_value());
    CHECK(tower.failure->order_n == 0);
}
