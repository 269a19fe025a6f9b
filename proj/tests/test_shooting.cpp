#include <catch2/catch_amalgamated.hpp>

#include "pagespec/shooting.hpp"
#include "pagespec/spectra.hpp"

#include <cmath>

using namespace pagespec;

TEST_CASE("exact legendre eigenvalues", "[shooting]") {
    auto sp = strip(build_nu_zero_reference(ModeNumbers::make(0, 0)).as_operator());
    // lambda = 2 (P_1) is an exact eigenvalue
    REQUIRE(std::abs(shoot_residual(sp, 2.0)) < 1e-8);
    // 2.5 is not
    REQUIRE(std::abs(shoot_residual(sp, 2.5)) > 1e-3);
}

TEST_CASE("scalar ground bracket", "[shooting]") {
    auto params = MetricParams::page();
    auto sp = strip(build_scalar(ModeNumbers::make(0, 0), params).as_operator());
    double lo = shoot_residual(sp, 1.8), hi = shoot_residual(sp, 1.9);
    REQUIRE(lo * hi < 0.0);  // sign change across 1.85251690621979
    auto r = refine(sp, {1.8, 1.9}, 1e-10);
    REQUIRE(r.eigenvalue == Catch::Approx(1.85251690621979).margin(2e-8));
    REQUIRE(std::abs(r.match_residual) < 1e-7);
    REQUIRE(r.eigenvalue > r.bracket.first);
    REQUIRE(r.eigenvalue < r.bracket.second);
    REQUIRE_THROWS_AS(refine(sp, {2.2, 2.4}, 1e-10), std::runtime_error);  // no sign change
}

TEST_CASE("residual is continuous in lambda", "[shooting]") {
    auto params = MetricParams::page();
    auto sp = strip(build_scalar(ModeNumbers::make(0, 0), params).as_operator());
    double prev = shoot_residual(sp, 1.3);
    for (int i = 1; i <= 20; ++i) {
        double lam = 1.3 + 0.02 * i;  // stays below the first eigenvalue 1.8525...
        double r = shoot_residual(sp, lam);
        REQUIRE(std::abs(r - prev) < 0.15);
        prev = r;
    }
}

TEST_CASE("shooting agrees with the spectral eigenvalues", "[shooting][oracle]") {
    auto params = MetricParams::page();
    auto sp = strip(build_scalar(ModeNumbers::make(0, 0), params).as_operator());
    auto spec = converge(sp, {140, 170});
    for (size_t i = 1; i <= 5; ++i) {  // skip the zero mode; brackets around nonzero values
        double lam = spec.pairs[i].eigenvalue;
        auto r = refine(sp, {lam - 1e-3 * (1.0 + lam), lam + 1e-3 * (1.0 + lam)}, 1e-11);
        REQUIRE(std::abs(r.eigenvalue - lam) <= 1e-8 * (1.0 + std::abs(lam)));
    }
}

TEST_CASE("tensor ground mode via sector shooting", "[shooting][oracle]") {
    auto params = MetricParams::page();
    auto even = tensor_even_sector(params);
    auto r = refine(even, {-7.0, -6.0}, 1e-12);
    REQUIRE(r.eigenvalue == Catch::Approx(-6.44142027579817).margin(1e-8));
}
