#include "doctest.h"
#include "sunflower/bounds.hpp"
#include "sunflower/error.hpp"

using namespace sunflower;

TEST_CASE("seqsize") {
    CHECK(seqsize(3, 2) == 6);
    for (std::size_t n = 0; n < 8; ++n) CHECK(seqsize(n, 0) == 1);
    CHECK(seqsize(2, 3) == 0);
    for (std::size_t n = 1; n < 12; ++n)
        for (std::size_t k = 1; k <= n + 1; ++k) CHECK(seqsize(n, k) == n * seqsize(n - 1, k - 1));
}

TEST_CASE("beta validation") {
    CHECK_THROWS_AS(BetaFn({2, 4}), PreconditionError);
    CHECK_THROWS_AS(BetaFn({3, 3}), PreconditionError);
    CHECK_THROWS_AS(BetaFn(std::vector<std::uint64_t>{}), PreconditionError);
    BetaFn b({3, 4});
    CHECK(b.at(2) == 4);
    CHECK_THROWS_AS((void)b.at(3), HorizonExceeded);
    CHECK_THROWS_AS((void)b.at(0), HorizonExceeded);
}

TEST_CASE("gamma and its inverse") {
    BetaFn b({3, 4});
    CHECK(gamma(b, 0) == 0);
    CHECK(gamma(b, 1) == 3);
    CHECK(gamma(b, 2) == 14);
    CHECK(gamma_circ(b, 4) == 2);
    CHECK(gamma_circ(b, 0) == 0);
    CHECK(gamma_circ(b, 3) == 1);
    CHECK_THROWS_AS((void)gamma_circ(b, 15), HorizonExceeded);
    CHECK_THROWS_AS((void)gamma(b, 3), HorizonExceeded);
}

TEST_CASE("gamma is strictly increasing and gamma_circ is its generalized inverse") {
    BetaFn b({3, 4, 5, 9, 20, 21});
    for (std::size_t m = 1; m <= b.horizon(); ++m) CHECK(gamma(b, m - 1) < gamma(b, m));
    for (std::size_t m = 0; m <= b.horizon(); ++m) CHECK(gamma_circ(b, gamma(b, m)) == m);
    for (std::size_t m = 1; m <= b.horizon(); ++m) {
        BigInt lo = gamma(b, m - 1) + 1;
        BigInt hi = gamma(b, m);
        for (BigInt t = lo; t <= hi; t += (hi - lo) / 7 + 1) {
            std::size_t g = gamma_circ(b, t);
            CHECK(g == m);
            CHECK(gamma(b, g - 1) < t);
            CHECK(t <= gamma(b, g));
        }
    }
}

TEST_CASE("monotone map specs") {
    auto a = MonotoneMap::parse("k+3");
    CHECK(a(0) == 3);
    CHECK(a(5) == 8);
    CHECK(MonotoneMap::parse("2k+3")(4) == 11);
    CHECK(MonotoneMap::parse("affine:2,3")(4) == 11);
    CHECK(MonotoneMap::parse("poly:3,0,1")(4) == 19);
    auto s = MonotoneMap::parse("step:3,10,2");
    CHECK(s(9) == 3);
    CHECK(s(10) == 5);
    auto t = MonotoneMap::parse("table:3,3,4,7;slope=2");
    CHECK(t(2) == 4);
    CHECK(t(3) == 7);
    CHECK(t(4) == 9);
    CHECK_THROWS_AS(MonotoneMap::parse("table:3,4;slope=0"), PreconditionError);
    CHECK_THROWS_AS(MonotoneMap::parse("table:5,4;slope=1"), PreconditionError);
    CHECK_THROWS_AS(MonotoneMap::parse("affine:0,3"), PreconditionError);
    CHECK_THROWS_AS(MonotoneMap::parse("poly:7"), PreconditionError);
    CHECK_THROWS_AS(MonotoneMap::parse("cubic:1"), ParseError);
    CHECK_THROWS_AS(MonotoneMap::parse("affine:x,3"), ParseError);
    CHECK(MonotoneMap::parse("poly:0,0,0,1")(1u << 30) == UINT64_MAX);
}

TEST_CASE("alpha_circ") {
    auto a = MonotoneMap::parse("k+3");
    CHECK(alpha_circ(a, 5) == 2);
    CHECK(alpha_circ(a, 3) == 0);
    CHECK(alpha_circ(a, 0) == 0);
    CHECK(alpha_circ(MonotoneMap::parse("2k+3"), 10) == 4);
    auto s = MonotoneMap::parse("step:3,10,1");
    CHECK(alpha_circ(s, 5) == 20);
    CHECK_THROWS_AS((void)alpha_circ(a, BigInt(1) << 60), HorizonExceeded);
}

TEST_CASE("bounds") {
    CHECK(er_bound(3, 3) == 48);
    for (std::size_t k = 0; k < 10; ++k) CHECK(er_bound(2, k) == factorial(k));
    CHECK(thm_bound(MonotoneMap::parse("k+3"), 3, 1) == 64);
    CHECK(derived_sf_bound(BetaFn({3, 4}), 3, 14) == 8);
    CHECK(derived_sf_bound(BetaFn({3, 4}), 5, 2) == 4);
}

TEST_CASE("synth_beta") {
    SUBCASE("large flat alpha gives the minimal beta") {
        auto s = synth_beta(MonotoneMap::parse("affine:1,1000000"), 10000);
        CHECK(s.beta.values() == std::vector<std::uint64_t>{3, 4, 5, 6, 7, 8});
        CHECK(s.certificate.ok);
    }
    SUBCASE("k+3") {
        auto alpha = MonotoneMap::parse("k+3");
        auto s = synth_beta(alpha, 10000);
        CHECK(s.beta.values() == std::vector<std::uint64_t>{3, 4, 21, 117, 717});
        for (std::size_t m = 1; m <= s.beta.horizon(); ++m)
            CHECK(BigInt(s.beta.at(m)) + 3 >= factorial(m + 1));
        CHECK(s.certificate.ok);
        CHECK(s.certificate.checked_k == 10000);
        CHECK(gamma_circ(s.beta, 0) == 0);
        for (std::uint64_t k = 0; k <= 10000; ++k) {
            REQUIRE(factorial(gamma_circ(s.beta, k)) <= alpha(k));
            for (std::size_t n : {2, 3})
                REQUIRE(derived_sf_bound(s.beta, n, k) <= thm_bound(alpha, n, k));
        }
    }
    SUBCASE("precondition") {
        CHECK_THROWS_AS((void)synth_beta(MonotoneMap::parse("k+2"), 10), PreconditionError);
    }
}

TEST_CASE("certificate checker rejects a bad beta") {
    auto slow = MonotoneMap::parse("step:3,100,1");
    auto bad = check_beta_certificate(slow, {3, 4, 5}, 63);
    REQUIRE(bad.has_value());
    CHECK(*bad == 15);
    CHECK(factorial(3) > slow(*bad));
    auto alpha = MonotoneMap::parse("k+3");
    // beta values that stop short of the checked range are reported too
    CHECK(check_beta_certificate(alpha, {3, 4}, 20) == std::optional<std::uint64_t>{15});
    CHECK_FALSE(check_beta_certificate(alpha, {3, 4, 21, 117}, 3000).has_value());
}
