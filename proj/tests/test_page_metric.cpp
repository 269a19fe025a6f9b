#include <catch2/catch_amalgamated.hpp>

#include "pagespec/page_metric.hpp"

using namespace pagespec;

namespace {

// independent oracle: plain bisection on the sign change over (0,1)
double bisect_nu() {
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (nu_quartic(mid) > 0.0) hi = mid; else lo = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("quartic root", "[page_metric]") {
    double nu = solve_nu();
    REQUIRE(nu == Catch::Approx(0.281702).margin(5e-7));  // printed digits
    REQUIRE(std::abs(nu_quartic(nu)) < 1e-13);
    REQUIRE(nu_quartic(0.0) == Catch::Approx(-3.0));
    REQUIRE(nu_quartic(1.0) == Catch::Approx(8.0));
    REQUIRE(nu == Catch::Approx(bisect_nu()).margin(1e-14));
}

TEST_CASE("params derived from (nu, Lambda)", "[page_metric]") {
    auto p = MetricParams::page();
    REQUIRE(p.s_scale == Catch::Approx(3.0 * (1.0 + p.nu * p.nu)).epsilon(1e-15));
    REQUIRE(p.alpha == Catch::Approx(1.0 / (2.0 * (3.0 + p.nu * p.nu))).epsilon(1e-15));
    REQUIRE(p.nu > 0.0);
    REQUIRE(p.nu < 1.0);
    REQUIRE(p.alpha > 0.0);
    REQUIRE(p.alpha < 1.0 / 6.0);
    REQUIRE_THROWS_AS(MetricParams::page(-1.0), std::invalid_argument);
}

TEST_CASE("metric functions", "[page_metric]") {
    auto p = MetricParams::page();
    REQUIRE(metric_A(1.0, p) == Catch::Approx(0.0).margin(1e-14));
    REQUIRE(metric_A(-1.0, p) == Catch::Approx(0.0).margin(1e-14));
    REQUIRE(metric_A(0.0, p) == Catch::Approx(3.0 - p.nu * p.nu).epsilon(1e-15));
    REQUIRE(metric_A(0.0, p) == Catch::Approx(2.92064).margin(1e-5));
    double n2 = p.nu * p.nu;
    REQUIRE(metric_B(0.0, p) == Catch::Approx(1.0 / (3.0 + 6.0 * n2 - n2 * n2)).epsilon(1e-15));
    REQUIRE(metric_B(1.0, p) == Catch::Approx((1.0 - n2) / (3.0 + 6.0 * n2 - n2 * n2)).epsilon(1e-15));

    // evenness and positivity on a dense grid; B minimum at the endpoints
    double bmin = 1e300;
    int argmin = -1;
    for (int i = 0; i <= 1000; ++i) {
        double x = -1.0 + 2.0 * i / 1000.0;
        REQUIRE(metric_A(x, p) == Catch::Approx(metric_A(-x, p)).margin(1e-15));
        REQUIRE(metric_B(x, p) == Catch::Approx(metric_B(-x, p)).margin(1e-15));
        REQUIRE(metric_B(x, p) > 0.0);
        if (std::abs(x) < 1.0 - 1e-9) REQUIRE(metric_A(x, p) > 0.0);
        if (metric_B(x, p) < bmin) { bmin = metric_B(x, p); argmin = i; }
    }
    REQUIRE((argmin == 0 || argmin == 1000));
}

TEST_CASE("jet evaluators agree with point evaluators", "[page_metric]") {
    auto p = MetricParams::page();
    double n2 = p.nu * p.nu;
    for (double x : {-0.9, -0.3, 0.0, 0.55, 0.99}) {
        Jet xj = Jet::variable(x, 2);
        REQUIRE(metric_A(xj, n2).value() == Catch::Approx(metric_A(x, p)).epsilon(1e-14));
        REQUIRE(metric_B(xj, n2).value() == Catch::Approx(metric_B(x, p)).epsilon(1e-14));
    }
}
