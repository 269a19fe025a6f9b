#include <catch2/catch_amalgamated.hpp>

#include "pagespec/scalar_operator.hpp"

using namespace pagespec;

TEST_CASE("scalar SL fields", "[scalar_operator]") {
    auto params = MetricParams::page();
    auto m00 = ModeNumbers::make(0, 0);
    auto sl = build_scalar(m00, params);

    // (0,0): q vanishes identically in the interior
    for (double x : {-0.8, -0.2, 0.4, 0.95}) REQUIRE(sl.q(x) == Catch::Approx(0.0).margin(1e-15));

    // p(0) = A(0) sqrt(B(0))
    REQUIRE(sl.p(0.0) == Catch::Approx(metric_A(0.0, params) * std::sqrt(metric_B(0.0, params))).epsilon(1e-15));

    // p and w positive in the interior, p vanishing at the ends
    for (int i = 1; i < 400; ++i) {
        double x = -1.0 + 2.0 * i / 400.0;
        REQUIRE(sl.p(x) > 0.0);
        REQUIRE(sl.w(x) > 0.0);
    }
    REQUIRE(sl.p(1.0) == Catch::Approx(0.0).margin(1e-14));
    REQUIRE(sl.p(-1.0) == Catch::Approx(0.0).margin(1e-14));

    // n = k = 0 equals the invariant-eigenfunction reduction
    // d/dx[sqrt(B) A u'] = -S sqrt(B) lambda u, i.e. p = A sqrt(B), w = S sqrt(B), q = 0
    for (double x : {-0.7, 0.1, 0.6}) {
        REQUIRE(sl.p(x) == Catch::Approx(metric_A(x, params) * std::sqrt(metric_B(x, params))).epsilon(1e-14));
        REQUIRE(sl.w(x) == Catch::Approx(params.s_scale * std::sqrt(metric_B(x, params))).epsilon(1e-14));
    }

    // p' evaluator against central differences
    for (double x : {-0.5, 0.3}) {
        double h = 1e-6;
        REQUIRE(sl.p_prime(x) == Catch::Approx((sl.p(x + h) - sl.p(x - h)) / (2.0 * h)).margin(1e-8));
    }
}

TEST_CASE("coefficient parity and endpoint blowup", "[scalar_operator]") {
    auto params = MetricParams::page();
    auto m21 = ModeNumbers::make(2, 1);
    auto sl = build_scalar(m21, params);
    for (int i = 1; i < 100; ++i) {
        double x = -0.999 + 1.998 * i / 100.0;
        REQUIRE(sl.p(x) == Catch::Approx(sl.p(-x)).epsilon(1e-13));
        REQUIRE(sl.q(x) == Catch::Approx(sl.q(-x)).epsilon(1e-13));
        REQUIRE(sl.w(x) == Catch::Approx(sl.w(-x)).epsilon(1e-13));
    }
    // q/w unbounded at the ends for n != 0, bounded for n = 0
    double prev = 0.0;
    for (double t : {1e-2, 1e-4, 1e-6}) {
        double r = sl.q(1.0 - t) / sl.w(1.0 - t);
        REQUIRE(r > prev);
        prev = r;
    }
    REQUIRE(prev > 1e4);
    auto sl0 = build_scalar(ModeNumbers::make(0, 1), params);
    double r0a = sl0.q(1.0 - 1e-4) / sl0.w(1.0 - 1e-4);
    double r0b = sl0.q(1.0 - 1e-7) / sl0.w(1.0 - 1e-7);
    REQUIRE(std::abs(r0b - r0a) < 1.0);  // mu-term stays bounded
}

TEST_CASE("nu-zero reference problem", "[scalar_operator]") {
    auto m = ModeNumbers::make(1, 1);
    auto sl = build_nu_zero_reference(m);
    REQUIRE(sl.p(0.5) == Catch::Approx(0.75).epsilon(1e-15));
    REQUIRE(sl.w(0.5) == Catch::Approx(1.0));
    REQUIRE(sl.q(0.5) == Catch::Approx(m.mu / 4.0 + 1.0 / 0.75).epsilon(1e-14));
    // closed-form spectrum values used throughout: mu/4 + l(l+1), l = n + N
    REQUIRE(nu_zero_eigenvalue(ModeNumbers::make(0, 0), 1) == Catch::Approx(2.0));
    REQUIRE(nu_zero_eigenvalue(ModeNumbers::make(1, 1), 0) == Catch::Approx(5.5));  // mu = 14
}

TEST_CASE("endpoint data is consistent with interior coefficients", "[scalar_operator]") {
    auto params = MetricParams::page();
    auto sl = build_scalar(ModeNumbers::make(1, 2), params);
    auto d = sl.local(Endpoint::Right, 8);
    // T2(t) = -t p(1-t): compare at t = 0.1
    double t = 0.1;
    REQUIRE(d.T2.eval(t) == Catch::Approx(-t * sl.p(1.0 - t)).epsilon(1e-10));
    REQUIRE(d.T0.eval(t) == Catch::Approx(t * sl.q(1.0 - t)).epsilon(1e-9));
    REQUIRE(d.TL.eval(t) == Catch::Approx(t * sl.w(1.0 - t)).epsilon(1e-10));
    auto dl = sl.local(Endpoint::Left, 8);
    REQUIRE(dl.T2.eval(t) == Catch::Approx(-t * sl.p(-1.0 + t)).epsilon(1e-10));
}
