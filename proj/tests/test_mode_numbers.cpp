#include <catch2/catch_amalgamated.hpp>

#include "pagespec/mode_numbers.hpp"

using namespace pagespec;

TEST_CASE("charged-sphere eigenvalues", "[modes]") {
    REQUIRE(mu_of(0, 0) == 0);
    REQUIRE(mu_of(0, 1) == 8);
    REQUIRE(mu_of(1, 0) == 2);
    REQUIRE(mu_of(2, 1) == 20);
    REQUIRE_THROWS_AS(mu_of(1, -1), std::invalid_argument);
}

TEST_CASE("mu properties", "[modes]") {
    for (long n = 0; n <= 6; ++n) {
        for (long k = 0; k < 6; ++k) {
            REQUIRE(mu_of(n, k + 1) > mu_of(n, k));   // increasing in k
            REQUIRE(mu_of(-n, k) == mu_of(n, k));     // |n| dependence only
            REQUIRE(mu_of(n, k) >= 0);
        }
    }
}

TEST_CASE("mode bookkeeping", "[modes]") {
    auto m = ModeNumbers::make(-3, 2, 4);
    REQUIRE(m.n == 3);
    REQUIRE(m.ell_fiber == 7);
    REQUIRE(m.ell_fiber >= m.n);
    REQUIRE((m.ell_fiber - m.n) % 2 == 0);
    REQUIRE(m.mu == m.ell_fiber * (m.ell_fiber + 2) - m.n * m.n);
    REQUIRE(m.ell_legendre == 7);
    REQUIRE_THROWS_AS(ModeNumbers::make(0, -2), std::invalid_argument);
}
