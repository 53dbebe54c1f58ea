#include <catch2/catch_amalgamated.hpp>

#include "support/properties.hpp"
#include "support/test_util.hpp"

using namespace rprim;

TEST_CASE("factor on hand-checked values") {
    CHECK(factor(24).factors == std::vector<std::pair<u64, int>>{{2, 3}, {3, 1}});
    CHECK(factor(1).factors.empty());
    CHECK(factor(48).factors == std::vector<std::pair<u64, int>>{{2, 4}, {3, 1}});
}

TEST_CASE("factor rejects out-of-range input") {
    CHECK_THROWS_AS(factor(0), std::out_of_range);
    CHECK_THROWS_AS(factor(1ull << 63), std::out_of_range);
}

TEST_CASE("factor handles large semiprimes") {
    u64 p = 2147483647;  // 2^31 - 1
    u64 q = 2147483629;
    Factorization f = factor(p * q);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0] == std::pair<u64, int>{q, 1});
    CHECK(f.factors[1] == std::pair<u64, int>{p, 1});
}

TEST_CASE("mobius") {
    CHECK(mobius(1) == 1);
    CHECK(mobius(6) == 1);
    CHECK(mobius(12) == 0);
}

TEST_CASE("euler_phi") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(24) == 8);  // direct count of coprime residues
    CHECK(euler_phi(48) == 16);
    // oracle: direct count
    for (u64 m : {24ull, 48ull, 100ull}) {
        u64 cnt = 0;
        for (u64 i = 1; i <= m; ++i)
            if (std::gcd(i, m) == 1) ++cnt;
        CHECK(euler_phi(m) == cnt);
    }
}

TEST_CASE("divisor_count") {
    CHECK(divisor_count(1) == 1);
    CHECK(divisor_count(6) == 4);
    CHECK(divisor_count(48) == 10);
    u64 cnt = 0;
    for (u64 d = 1; d <= 48; ++d)
        if (48 % d == 0) ++cnt;
    CHECK(cnt == 10);
}

TEST_CASE("is_prime") {
    CHECK(is_prime(2));
    CHECK_FALSE(is_prime(1));
    CHECK(is_prime(102829));
    // oracle: trial division up to sqrt
    for (u64 d = 2; d * d <= 102829; ++d) CHECK(102829 % d != 0);
}

TEST_CASE("prime_powers_in") {
    auto pps = prime_powers_in(2, 9);
    REQUIRE(pps.size() == 7);
    std::vector<std::tuple<u64, int, u64>> got;
    for (auto& pp : pps) got.emplace_back(pp.p, pp.k, pp.q);
    std::vector<std::tuple<u64, int, u64>> expect{{2, 1, 2}, {3, 1, 3}, {2, 2, 4}, {5, 1, 5},
                                                  {7, 1, 7}, {2, 3, 8}, {3, 2, 9}};
    CHECK(got == expect);

    auto single = prime_powers_in(41, 41);
    REQUIRE(single.size() == 1);
    CHECK(single[0].q == 41);

    auto cube = prime_powers_in(26, 27);
    REQUIRE(cube.size() == 1);
    CHECK(cube[0].p == 3);
    CHECK(cube[0].k == 3);
}

TEST_CASE("arith property suite") {
    auto failures = testutil::arith_properties();
    for (auto& f : failures) FAIL_CHECK(f);
    CHECK(failures.empty());
}
