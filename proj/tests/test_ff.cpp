#include <catch2/catch_amalgamated.hpp>

#include "support/properties.hpp"
#include "support/test_util.hpp"

using namespace rprim;

TEST_CASE("build_context basics") {
    FieldContext f49(7, 1, 2);
    CHECK(f49.group_order() == 48);
    CHECK(f49.group_factors().factors == std::vector<std::pair<u64, int>>{{2, 4}, {3, 1}});

    FieldContext f81(3, 2, 2);
    CHECK(f81.q() == 9);
    CHECK(f81.group_order() == 80);
    CHECK(f81.subfield().size() == 9);

    FieldContext f37c(37, 1, 3);
    CHECK(f37c.group_order() == 50652);
}

TEST_CASE("build_context rejects bad input") {
    CHECK_THROWS_AS(FieldContext(4, 1, 2), std::invalid_argument);  // p not prime
    CHECK_THROWS_AS(FieldContext(2, 1, 1), std::invalid_argument);  // n < 2
    CHECK_THROWS_AS(FieldContext(2, 1, 30), std::out_of_range);     // over the cap
}

TEST_CASE("field arithmetic axioms") {
    FieldContext ctx(3, 2, 2);
    for (u64 a = 0; a < ctx.group_order(); a += 7) {
        FieldElement x = ctx.exp(a);
        CHECK(ctx.mul(x, ctx.inv(x)) == ctx.one());
        CHECK(ctx.add(x, ctx.neg(x)) == ctx.zero());
    }
    // characteristic 3: 1 + 2 = 0 (index 2 encodes the constant polynomial 2)
    CHECK(ctx.add({1}, {2}) == ctx.zero());
    CHECK_THROWS_AS(ctx.inv(ctx.zero()), std::domain_error);
}

TEST_CASE("order and r-primitivity in F_49") {
    FieldContext ctx(7, 1, 2);
    FieldElement g = ctx.gamma();
    CHECK(ctx.order(g) == 48);
    CHECK(ctx.order(ctx.one()) == 1);
    CHECK(ctx.order(ctx.pow(g, 2)) == 24);

    CHECK(ctx.is_r_primitive(ctx.pow(g, 2), 2));
    CHECK_FALSE(ctx.is_r_primitive(g, 2));

    u64 count = 0;
    for (u64 a = 0; a < 48; ++a)
        if (ctx.is_r_primitive(ctx.exp(a), 2)) ++count;
    CHECK(count == 8);  // euler_phi(24)
    CHECK(count == euler_phi(24));

    CHECK_THROWS_AS(ctx.is_r_primitive(g, 5), std::invalid_argument);
    CHECK_THROWS_AS(ctx.order(ctx.zero()), std::domain_error);
}

TEST_CASE("m-freeness in F_49") {
    FieldContext ctx(7, 1, 2);
    FieldElement g = ctx.gamma();
    for (u64 m : divisors(48ull)) CHECK(ctx.is_m_free(g, m));
    for (u64 m : divisors(48ull)) CHECK(ctx.is_m_free(ctx.one(), m) == (m == 1));
    FieldElement g2 = ctx.pow(g, 2);  // order 24
    CHECK(ctx.is_m_free(g2, 3));
    CHECK_FALSE(ctx.is_m_free(g2, 2));
    CHECK_THROWS_AS(ctx.is_m_free(g, 5), std::invalid_argument);
}

TEST_CASE("generators of the extension") {
    FieldContext ctx(7, 1, 2);
    for (FieldElement s : ctx.subfield()) CHECK_FALSE(ctx.is_generator(s));
    CHECK(ctx.is_generator(ctx.gamma()));

    // n = 4 over F_2: the two elements of the F_4 subfield outside F_2 are
    // fixed by the squared Frobenius, hence not generators
    FieldContext f16(2, 1, 4);
    u64 stride = 15 / 3;
    int non_generators_in_f4 = 0;
    for (u64 j = 0; j < 3; ++j) {
        FieldElement x = f16.exp(j * stride);
        if (x != f16.one()) {
            CHECK_FALSE(f16.is_generator(x));
            ++non_generators_in_f4;
        }
    }
    CHECK(non_generators_in_f4 == 2);
    CHECK(f16.is_generator(f16.gamma()));
}

TEST_CASE("subfield log stride") {
    FieldContext ctx(3, 2, 2);
    u64 stride = ctx.group_order() / (ctx.q() - 1);
    for (FieldElement s : ctx.subfield())
        if (s.index != 0) CHECK(ctx.log(s) % stride == 0);
}

TEST_CASE("order by iteration agrees with the log formula") {
    FieldContext ctx(5, 1, 2);
    for (u64 a = 0; a < ctx.group_order(); ++a) {
        FieldElement x = ctx.exp(a);
        CHECK(ctx.order(x) == testutil::order_by_iteration(ctx, x));
    }
}

TEST_CASE("ff property suite on small fields") {
    for (const auto& f : testutil::desk_fields(512)) {
        FieldContext ctx(f.p, f.k, f.n);
        auto failures = testutil::ff_properties(ctx);
        for (auto& msg : failures) FAIL_CHECK(msg);
        CHECK(failures.empty());
    }
}
