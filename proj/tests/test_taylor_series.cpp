#include <catch2/catch_amalgamated.hpp>

#include "pagespec/taylor_series.hpp"

#include <complex>

using namespace pagespec;

TEST_CASE("arithmetic matches closed forms", "[taylor]") {
    // f(x) = (1+x)^2 / (2 - x) at x0 = 0.5
    Jet x = Jet::variable(0.5, 5);
    Jet f = (1.0 + x) * (1.0 + x) / (2.0 - x);
    double v = 1.5 * 1.5 / 1.5;
    REQUIRE(f.value() == Catch::Approx(v).epsilon(1e-14));
    // f'(x) = [2(1+x)(2-x) + (1+x)^2]/(2-x)^2
    double fp = (2.0 * 1.5 * 1.5 + 1.5 * 1.5) / (1.5 * 1.5);
    REQUIRE(f[1] == Catch::Approx(fp).epsilon(1e-13));
}

TEST_CASE("sqrt and pow agree", "[taylor]") {
    Jet x = Jet::variable(0.3, 6);
    Jet a = 2.0 + x * x;
    Jet s = sqrt(a);
    Jet p = pow(a, 0.5);
    for (int k = 0; k <= 6; ++k) REQUIRE(s[k] == Catch::Approx(p[k]).margin(1e-13));
    Jet q = pow(a, 0.25);
    Jet q2 = q * q;
    for (int k = 0; k <= 6; ++k) REQUIRE(q2[k] == Catch::Approx(s[k]).margin(1e-13));
}

TEST_CASE("derivative and shifts", "[taylor]") {
    Jet x = Jet::variable(0.0, 6);
    Jet f = x * x * (3.0 + x);  // 3x^2 + x^3
    REQUIRE(f[2] == Catch::Approx(3.0));
    REQUIRE(f[3] == Catch::Approx(1.0));
    Jet d = f.derivative();
    REQUIRE(d[1] == Catch::Approx(6.0));
    Jet g = f.shift_down(2);
    REQUIRE(g[0] == Catch::Approx(3.0));
    REQUIRE(g[1] == Catch::Approx(1.0));
    REQUIRE_THROWS((x + 1.0).shift_down(1));
}

TEST_CASE("complex scalar works", "[taylor]") {
    using C = std::complex<double>;
    CJet z = CJet::variable(C(0.2, 0.1), 4);
    CJet f = sqrt(C(1.0) + z * z);
    C w = std::sqrt(C(1.0) + C(0.2, 0.1) * C(0.2, 0.1));
    REQUIRE(std::abs(f.value() - w) < 1e-14);
}

TEST_CASE("series division by t computes Laurent data", "[taylor]") {
    Jet t = Jet::variable(0.0, 5);
    Jet num = t * (2.0 + t);
    Jet den = t * (1.0 + t);
    Jet r = num.shift_down(1) / den.shift_down(1);  // (2+t)/(1+t) = 2 - t + ...
    REQUIRE(r[0] == Catch::Approx(2.0));
    REQUIRE(r[1] == Catch::Approx(-1.0));
}
