#include <doctest.h>

#include <cmath>

#include "naive.hpp"
#include "sslab/combinatorics.hpp"
#include "sslab/dispatch.hpp"
#include "sslab/hashing.hpp"
#include "sslab/numeric.hpp"
#include "sslab/oracle.hpp"

using namespace sslab;

namespace {

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("small_bin_partition")
{
    const auto parts = small_bin_partition(16, 1.0 / 8.0);
    REQUIRE(parts.size() == 6);
    std::uint64_t seen = 0;
    for (const auto& p : parts) {
        CHECK(p.size() <= 3);
        CHECK((seen & p.mask()) == 0);
        seen |= p.mask();
    }
    CHECK(seen == 0xffff);
    CHECK(small_bin_partition(16, 0.0004).size() == 16);
    CHECK_THROWS_AS(small_bin_partition(16, 0.2), DomainError);
    CHECK_THROWS_AS(small_bin_partition(16, 0.0), DomainError);
}

TEST_CASE("small-bin branch selection")
{
    RandomSource rng(1);
    const auto rich = gen_super_increasing(16, 0x5a5a);
    const auto a = solve_small_bin(rich, 1.0 / 8.0, rng);
    CHECK(contains(a.branch, "many_sums"));
    REQUIRE(a.found());
    CHECK(a.witness->to_hex() == "5a5a");

    const auto poor = gen_all_equal(16, 5, 35);
    const auto b = solve_small_bin(poor, 1.0 / 8.0, rng);
    CHECK(contains(b.branch, "join"));
    REQUIRE(b.found());
    CHECK(poor.is_solution(*b.witness));
    CHECK_FALSE(solve_small_bin(poor.with_target(36), 1.0 / 8.0, rng).found());
    CHECK_THROWS_AS(solve_small_bin(poor, 0.5, rng), DomainError);
}

TEST_CASE("small-bin join is exact")
{
    RandomSource rng(2);
    for (int k = 0; k < 200; ++k) {
        const std::size_t n = 4 + k % 13;
        const auto inst = gen_random_density(n, k % 2 ? 1.0 : 2.0, rng);
        const auto out = small_bin_join(inst, 1.0 / 6.0);
        CHECK(out.found() == naive::solve(inst).has_value());
        if (out.found()) CHECK(inst.is_solution(*out.witness));
    }
}

TEST_CASE("small-bin driver never reports a false witness")
{
    RandomSource rng(3);
    for (int k = 0; k < 30; ++k) {
        const std::size_t n = 8 + k % 9;
        const auto inst = gen_random_density(n, 1.0, rng);
        const auto out = solve_small_bin(inst, 1.0 / 6.0, rng);
        const bool yes = naive::solve(inst).has_value();
        if (out.found()) CHECK(inst.is_solution(*out.witness));
        if (!yes) CHECK_FALSE(out.found());
    }
}

TEST_CASE("large-bin driver")
{
    const auto equal = gen_all_equal(16, 9, 72);
    const auto a = solve_large_bin(equal);
    REQUIRE(a.found());
    CHECK(equal.is_solution(*a.witness));
    CHECK(a.witness->size() == 8);
    CHECK(contains(a.branch, "few_sums"));

    const auto geo = gen_geometric_pairs(12);
    for (std::uint64_t t = 0; t <= 800; t += 7) {
        const auto inst = geo.with_target(t);
        CHECK(solve_large_bin(inst).found() == naive::solve(inst).has_value());
    }

    RandomSource rng(4);
    for (int k = 0; k < 100; ++k) {
        const auto inst = gen_random_density(2 * (k % 7) + 3, 1.0, rng);
        const auto out = solve_large_bin(inst);
        CHECK(out.found() == naive::solve(inst).has_value());
        if (out.found()) CHECK(inst.is_solution(*out.witness));
    }
}

TEST_CASE("auto pipeline")
{
    RandomSource rng(5);
    for (int k = 0; k < 5; ++k) {
        const auto p = gen_planted(16, 16, rng);
        const auto out = solve_auto(p.instance, rng);
        REQUIRE(out.found());
        CHECK(out.verified);
        CHECK(p.instance.is_solution(*out.witness));
        CHECK(contains(out.branch, "auto/"));
    }
    std::vector<BigInt> even;
    for (int i = 0; i < 16; ++i) even.push_back(BigInt(2 * (1 + rng.uniform_below(1u << 15))));
    const Instance none(even, 2 * (1 + rng.uniform_below(1u << 17)) + 1);
    CHECK_FALSE(solve_auto(none, rng).found());
    CHECK_FALSE(solve_auto(none, rng, std::uint64_t{0}).found());

    const auto forced = gen_planted(16, 16, rng);
    const auto out = solve_auto(forced.instance, rng, std::uint64_t{0});
    CHECK(contains(out.branch, "auto/step2/"));
    if (out.found()) CHECK(forced.instance.is_solution(*out.witness));

    // the step-2 hashing reaches density about 1/0.997 up to the log factors of B
    const auto bound = auto_reduction_bound(16);
    CHECK(bound == 10 * (BigInt(1) << 16));
    const auto big = gen_planted(16, 40, rng);
    const auto rec = reduce_bitlength(big.instance, bound, rng);
    CHECK(satisfies_property1(rec.reduced, bound));
    CHECK(log2_big(rec.reduced.target() + 1) <= log2_big(property1_bound(16, bound)));
    CHECK(density(rec.reduced) > density(big.instance));

    CHECK(default_auto_budget(16) > 0);
    const auto zero = solve_auto(Instance(std::vector<BigInt>{}, 0), rng);
    CHECK(zero.found());
}

TEST_CASE("classify examples")
{
    const auto geo = classify(gen_geometric_pairs(12), kEnumerationLimit);
    CHECK(geo.beta == 64);
    CHECK(geo.distinct_sums == 729);
    CHECK_FALSE(geo.large_bin);
    CHECK_FALSE(geo.small_bin);
    CHECK(geo.regime == Regime::Gap);

    const auto sup = classify(gen_super_increasing(12, 100), kEnumerationLimit);
    CHECK(sup.beta == 1);
    CHECK(sup.many_sums);
    CHECK(sup.sums_vs_bin_held);
    CHECK(sup.small_bin);
    CHECK(sup.regime == Regime::SmallBin);

    const auto eq = classify(gen_all_equal(12, 3, 18), kEnumerationLimit);
    CHECK(eq.beta == 924);
    CHECK(eq.large_bin);
    CHECK(eq.regime == Regime::LargeBin);
    CHECK(std::string(regime_name(Regime::LargeBin)) == "large_bin");

    CHECK_THROWS_AS(classify(Instance(std::vector<BigInt>(27, 1), 3), kEnumerationLimit), CapacityError);

    RandomSource rng(6);
    for (const auto& inst : {gen_geometric_pairs(12), gen_super_increasing(12, 77), gen_all_equal(12, 3, 18)}) {
        const auto out = solve_classified(inst, rng, kEnumerationLimit);
        CHECK(out.found() == naive::solve(inst).has_value());
        CHECK(contains(out.branch, "classified:"));
    }
}

TEST_CASE("exact power comparisons")
{
    CHECK(at_least_power(64, 1, 2, 12));
    CHECK_FALSE(at_least_power(63, 1, 2, 12));
    CHECK(at_most_power(64, 1, 2, 12));
    CHECK_FALSE(at_most_power(65, 1, 2, 12));
    // 2^(0.661*12) is about 244.0
    CHECK(at_least_power(245, 661, 1000, 12));
    CHECK_FALSE(at_least_power(243, 661, 1000, 12));
}

TEST_CASE("exponent arithmetic")
{
    CHECK(small_bin_headline_exponent(Rational(1, 6)) == Rational(23, 48));
    CHECK(small_bin_headline_exponent(Rational(0)) == Rational(1, 2));
    const auto e = small_bin_exponents(1.0 / 6.0);
    CHECK(e.headline == doctest::Approx(23.0 / 48.0).epsilon(1e-12));
    CHECK(e.join_term == doctest::Approx((1.0 - 1.0 / 12.0) / 2.0));
    CHECK(e.many_sums_term == doctest::Approx(0.5 + 0.8113 * 0.25 - (1.0 - 1.0 / 12.0) * 0.25));
}

// ---------------------------------------------------------- combinatorics

TEST_CASE("check_udcp examples")
{
    CHECK(check_udcp(UdcpPair(2, {0b00, 0b11}, {0b00, 0b01})));
    CHECK(check_udcp(UdcpPair(2, {0b01, 0b10}, {0b00, 0b11})));
    CHECK_FALSE(check_udcp(UdcpPair(2, {0b00, 0b01, 0b10}, {0b00, 0b01})));
    CHECK(check_udcp(UdcpPair(3, {}, {0b1})));
    CHECK_THROWS_AS(UdcpPair(2, {0b100}, {0}), DomainError);
    const UdcpPair dup(2, {3, 3, 1}, {0});
    CHECK(dup.a() == std::vector<std::uint64_t>{1, 3});
}

TEST_CASE("udcp_from_instance")
{
    const auto geo = udcp_from_instance(gen_geometric_pairs(4), kEnumerationLimit);
    CHECK(geo.a().size() == 9);
    CHECK(geo.b().size() == 4);
    CHECK(check_udcp(geo));
    const auto sup = udcp_from_instance(gen_super_increasing(8, 1), kEnumerationLimit);
    CHECK(sup.a().size() == 256);
    CHECK(sup.b().size() == 1);
    CHECK(check_udcp(sup));
    RandomSource rng(7);
    for (int k = 0; k < 20; ++k) {
        const auto inst = gen_random_density(4 + k % 8, 2.0, rng);
        const auto pair = udcp_from_instance(inst, kEnumerationLimit);
        CHECK(pair.a().size() == naive::sums(inst));
        CHECK(pair.b().size() == naive::beta(inst));
        CHECK(check_udcp(pair));
    }
}

TEST_CASE("bin_l2")
{
    CHECK(bin_l2(gen_all_equal(2, 4, 4), Subset::full(2)) == 6);
    CHECK(bin_l2(gen_super_increasing(5, 1), Subset::full(5)) == 32);
    CHECK(bin_l2(Instance::from_u64({1, 1, 3, 3}, 4), Subset::full(4)) == 36);
    CHECK(bin_l2(Instance::from_u64({1, 1, 3, 3}, 4), Subset::from_mask(0b0011, 4)) == 6);
}

TEST_CASE("count_B_sigma against ternary enumeration")
{
    RandomSource rng(8);
    for (int k = 0; k < 10; ++k) {
        const auto inst = gen_random_density(3 + k % 6, 2.0, rng);
        const auto profile = count_B_sigma_profile(inst);
        REQUIRE(profile.size() == inst.size() + 1);
        for (std::size_t l = 0; l <= inst.size(); ++l) {
            CHECK(profile[l] == naive::b_sigma(inst, l));
            CHECK(count_B_sigma(inst, l) == profile[l]);
        }
        CHECK(profile[0] == 1);
    }
    CHECK_THROWS_AS(count_B_sigma(Instance(std::vector<BigInt>(17, 1), 3), 2), CapacityError);
}

TEST_CASE("l2 identity, Cauchy-Schwarz and sums versus bins")
{
    RandomSource rng(9);
    for (int k = 0; k < 20; ++k) {
        const auto inst = gen_random_density(2 + k % 10, 1.5, rng);
        CHECK(l2_identity_holds(inst));
        CHECK(cauchy_schwarz_holds(inst, true));
        CHECK(cauchy_schwarz_holds(inst, false));
        CHECK(sums_vs_bin_holds(inst));
    }
    CHECK(l2_identity_holds(gen_geometric_pairs(10)));
    CHECK(l2_identity_holds(gen_all_equal(10, 1, 5)));
    CHECK(cauchy_schwarz_holds(gen_all_equal(10, 1, 5), true));
    CHECK_THROWS_AS(cauchy_schwarz_holds(Instance(std::vector<BigInt>(22, 1), 3), true), CapacityError);
}
