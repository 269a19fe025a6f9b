#include <catch2/catch_amalgamated.hpp>

#include "pagespec/quadrature.hpp"
#include "pagespec/schrodinger.hpp"

#include <cmath>

using namespace pagespec;

TEST_CASE("nu-zero transform is arccos", "[schrodinger]") {
    auto sl = build_nu_zero_reference(ModeNumbers::make(0, 0));
    auto sf = schrodinger_transform_numeric(sl);
    REQUIRE(sf.s_max == Catch::Approx(M_PI).margin(1e-12));
    for (double x : {-0.95, -0.4, 0.0, 0.3, 0.88}) {
        REQUIRE(sf.s_of_x(x) == Catch::Approx(std::acos(-x)).margin(1e-10));
        REQUIRE(sf.x_of_s(std::acos(-x)) == Catch::Approx(x).margin(1e-10));
        REQUIRE(sf.m_of_x(x) == Catch::Approx(std::pow(1.0 - x * x, -0.25)).epsilon(1e-12));
    }
    REQUIRE(sf.s_of_x(-1.0) == Catch::Approx(0.0).margin(1e-12));
    double prev = -1.0;
    for (int i = 0; i <= 50; ++i) {
        double s = sf.s_of_x(-1.0 + 2.0 * i / 50.0);
        REQUIRE(s > prev);
        prev = s;
    }
}

TEST_CASE("nu-zero potential matches the closed form", "[schrodinger]") {
    for (auto [n, k] : {std::pair<long, long>{0, 0}, {1, 0}, {2, 1}, {0, 2}}) {
        auto m = ModeNumbers::make(n, k);
        auto sl = build_nu_zero_reference(m);
        auto sf = schrodinger_transform_numeric(sl);
        for (double s : {0.4, 0.9, 1.5708, 2.2, 2.7}) {
            double x = -std::cos(s);
            REQUIRE(sf.V_of_x(x) == Catch::Approx(v0_potential(s, m.n, m.mu)).margin(1e-8));
        }
    }
}

TEST_CASE("x(s) matches the small-nu expansion", "[schrodinger]") {
    // x(s) = -cos s + nu^2 sin s (sin s cos s - 3s)/6 + O(nu^4)
    auto err_at = [](double nu) {
        auto params = MetricParams::from_nu(nu);
        auto sl = build_scalar(ModeNumbers::make(0, 0), params);
        auto sf = schrodinger_transform_numeric(sl);
        double emax = 0.0;
        for (double s : {0.5, 1.0, 1.8, 2.5}) {
            double pred = -std::cos(s) + nu * nu * std::sin(s) * (std::sin(s) * std::cos(s) - 3.0 * s) / 6.0;
            emax = std::max(emax, std::abs(sf.x_of_s(s) - pred));
        }
        return emax;
    };
    double e1 = err_at(0.05), e2 = err_at(0.1);
    REQUIRE(e1 < 3.0 * std::pow(0.05, 4));
    REQUIRE(e2 < 3.0 * std::pow(0.1, 4));
    REQUIRE(e2 / e1 > 8.0);  // scales like nu^4
}

TEST_CASE("page potential at the quartic root", "[schrodinger]") {
    auto params = MetricParams::page();
    auto sl = build_scalar(ModeNumbers::make(0, 0), params);
    auto sf = schrodinger_transform_numeric(sl);
    // s_max = pi (1 + nu^2/2 + ...) grows with nu
    REQUIRE(sf.s_max > M_PI);
    REQUIRE(sf.s_max == Catch::Approx(M_PI * (1.0 + 0.5 * params.nu * params.nu)).margin(2e-3));
    REQUIRE(std::isfinite(sf.V_of_x(0.0)));
    // n = 0 potential dives at the walls like the -csc^2/4 reference structure
    REQUIRE(sf.V_of_x(0.999) < sf.V_of_x(0.9));
    REQUIRE(sf.V_of_x(0.999) < -50.0);
}

TEST_CASE("closed-form potential spot values", "[schrodinger]") {
    REQUIRE(v0_potential(M_PI / 2.0, 0, 0) == Catch::Approx(-0.5).epsilon(1e-14));
    double nu = 0.2;
    double a = delta_v_potential(1.0, 0, 0, nu);
    REQUIRE(std::isfinite(a));
    // scaling with nu^2
    REQUIRE(delta_v_potential(1.0, 0, 0, 2.0 * nu) == Catch::Approx(4.0 * a).epsilon(1e-12));
    // y normalization: int y^2 = 1
    for (auto [l, n] : {std::pair<int, int>{1, 0}, {3, 1}, {5, 2}}) {
        double v = integrate_0_pi_endpoint_safe([l, n](double s) {
            double y = y_mode(s, l, n);
            return y * y;
        });
        REQUIRE(v == Catch::Approx(1.0).margin(1e-10));
    }
}

TEST_CASE("non-integrable endpoint is rejected", "[schrodinger]") {
    SLProblem bad;
    bad.p = [](double x) { return (1.0 - x * x) * (1.0 - x * x); };  // double zero: 1/(1-x) not integrable
    bad.w = [](double) { return 1.0; };
    bad.q = [](double) { return 0.0; };
    bad.p_prime = [](double x) { return -4.0 * x * (1.0 - x * x); };
    bad.p_jet = [](double x, int order) {
        Jet xj = Jet::variable(x, order);
        return (1.0 - xj * xj) * (1.0 - xj * xj);
    };
    bad.w_jet = [](double, int order) { return Jet::constant(1.0, order); };
    REQUIRE_THROWS_AS(schrodinger_transform_numeric(bad), std::runtime_error);
}
