#include <doctest.h>

#include <cmath>

#include "naive.hpp"
#include "sslab/classic.hpp"
#include "sslab/oracle.hpp"

using namespace sslab;

namespace {

std::uint64_t mask_or_none(const SolverOutcome& out)
{
    return out.found() ? out.witness->mask() : ~std::uint64_t{0};
}

std::uint64_t naive_or_none(const Instance& inst)
{
    const auto m = naive::solve(inst);
    return m ? *m : ~std::uint64_t{0};
}

}  // namespace

TEST_CASE("histogram of 1,1,3,3")
{
    const auto inst = Instance::from_u64({1, 1, 3, 3}, 4);
    const auto h = enumerate_histogram(inst, Subset::full(4));
    const std::vector<std::pair<BigInt, std::uint64_t>> expected{
        {0, 1}, {1, 2}, {2, 1}, {3, 2}, {4, 4}, {5, 2}, {6, 1}, {7, 2}, {8, 1}};
    CHECK(h.entries == expected);
    CHECK(h.mass() == 16);
    CHECK(h.max_count() == 4);
    CHECK(h.count(4) == 4);
    CHECK(h.count(9) == 0);
}

TEST_CASE("max_bin and distinct_sums examples")
{
    CHECK(max_bin(Instance::from_u64({1, 1, 3, 3}, 4)) == 4);
    CHECK(max_bin(gen_super_increasing(6, 5)) == 1);
    CHECK(max_bin(gen_all_equal(4, 7, 14)) == 6);
    CHECK(distinct_sums(Instance::from_u64({1, 1, 3, 3}, 4)) == 9);
    CHECK(distinct_sums(gen_all_equal(1, 7, 7)) == 2);
    CHECK(distinct_sums(gen_super_increasing(4, 3)) == 16);
    const auto empty = Instance(std::vector<BigInt>{}, 0);
    CHECK(max_bin(empty) == 1);
    CHECK(distinct_sums(empty) == 1);
}

TEST_CASE("brute_solve examples")
{
    const auto a = brute_solve(Instance::from_u64({3, 5, 8}, 11));
    REQUIRE(a.found());
    CHECK(a.witness->mask() == 0b101);
    CHECK(a.verified);
    CHECK(a.branch == "brute");
    CHECK_FALSE(brute_solve(Instance::from_u64({2, 4, 6}, 5)).found());
    const auto zero = brute_solve(Instance::from_u64({2, 4}, 0));
    REQUIRE(zero.found());
    CHECK(zero.witness->to_hex() == "0");
    CHECK_THROWS_AS(brute_solve(Instance(std::vector<BigInt>(27, 1), 3)), CapacityError);
    CHECK_THROWS_AS(max_bin(Instance(std::vector<BigInt>(27, 1), 3)), CapacityError);
}

TEST_CASE("oracle agrees with naive enumeration")
{
    RandomSource rng(101);
    for (int k = 0; k < 60; ++k) {
        const std::size_t n = 1 + k % 12;
        const double d = (k % 3 == 0) ? 0.5 : (k % 3 == 1 ? 1.0 : 2.0);
        const auto inst = gen_random_density(n, d, rng);
        const auto hist = naive::histogram(inst);
        const auto h = enumerate_histogram(inst, Subset::full(n));
        REQUIRE(h.support() == hist.size());
        std::size_t i = 0;
        for (const auto& [s, c] : hist) {
            CHECK(h.entries[i].first == s);
            CHECK(h.entries[i].second == c);
            ++i;
        }
        CHECK(h.mass() == (std::uint64_t{1} << n));
        CHECK(max_bin(inst) == naive::beta(inst));
        CHECK(distinct_sums(inst) == naive::sums(inst));
        CHECK(mask_or_none(brute_solve(inst)) == naive_or_none(inst));
        // pigeonhole: beta * |w(2^[n])| >= 2^n
        CHECK(max_bin(inst) * distinct_sums(inst) >= (std::uint64_t{1} << n));
        // bins of disjoint parts: beta(S u T) <= beta(S) |w(2^T)|
        const std::size_t h1 = n / 2;
        std::uint64_t left = 0, right = 0;
        for (std::size_t j = 0; j < h1; ++j) left |= std::uint64_t{1} << j;
        right = naive::full_mask(n) & ~left;
        CHECK(distinct_sums(inst) <= naive::sums(inst, left) * naive::sums(inst, right));
        CHECK(distinct_sums(inst, Subset::from_mask(left, n)) == naive::sums(inst, left));
    }
}

TEST_CASE("bellman_dp")
{
    const auto a = bellman_dp(Instance::from_u64({3, 5, 8}, 11));
    REQUIRE(a.found());
    CHECK(a.witness->mask() == 0b101);
    CHECK(a.branch == "dp");
    CHECK(a.cost.sums_enumerated <= 3 * 12);
    CHECK_FALSE(bellman_dp(Instance::from_u64({2, 4, 6}, 5)).found());
    RandomSource rng(5);
    for (int k = 0; k < 100; ++k) {
        const auto inst = gen_random_density(10, 1.0, rng);
        const auto out = bellman_dp(inst);
        CHECK(out.found() == naive::solve(inst).has_value());
        if (out.found()) CHECK(inst.is_solution(*out.witness));
        CHECK(out.cost.sums_enumerated <= inst.size() * (static_cast<std::uint64_t>(inst.target()) + 1));
    }
}

TEST_CASE("meet_in_middle")
{
    const auto a = meet_in_middle(Instance::from_u64({3, 5, 8, 13}, 21));
    REQUIRE(a.found());
    CHECK(a.witness->mask() == 0b1011);
    CHECK(a.branch == "mim");
    RandomSource rng(17);
    int found = 0;
    for (int k = 0; k < 500; ++k) {
        const auto p = gen_planted(20, 20, rng);
        const auto out = meet_in_middle(p.instance);
        found += out.found() && p.instance.is_solution(*out.witness);
        CHECK(out.cost.sums_enumerated <= 4 * 1024);
    }
    CHECK(found == 500);
    RandomSource small(3);
    for (int k = 0; k < 200; ++k) {
        const auto inst = gen_random_density(1 + k % 12, 1.0, small);
        CHECK(mask_or_none(meet_in_middle(inst)) == naive_or_none(inst));
    }
}

TEST_CASE("schroeppel_shamir")
{
    const auto a = schroeppel_shamir(gen_super_increasing(8, 170));
    REQUIRE(a.found());
    CHECK(a.witness->to_hex() == "aa");
    CHECK(a.branch == "ss");
    RandomSource rng(23);
    for (int k = 0; k < 1000; ++k) {
        const auto inst = gen_random_density(16, k % 2 ? 1.0 : 0.5, rng);
        const auto ss = schroeppel_shamir(inst);
        const auto mim = meet_in_middle(inst);
        CHECK(mask_or_none(ss) == mask_or_none(mim));
        CHECK(ss.cost.peak_retained <= 8 * 16);
    }
    RandomSource small(4);
    for (int k = 0; k < 200; ++k) {
        const auto inst = gen_random_density(1 + k % 13, 2.0, small);
        CHECK(mask_or_none(schroeppel_shamir(inst)) == naive_or_none(inst));
    }
}

TEST_CASE("residue sampler counts match enumeration")
{
    const auto inst = Instance::from_u64({3, 5, 8, 13, 21, 34}, 29);
    const ResidueSampler sampler(inst, 7);
    std::vector<std::uint64_t> expected(7, 0);
    for (std::uint64_t m = 0; m < 64; ++m) ++expected[static_cast<std::uint64_t>(naive::sum_mask(inst, m) % 7)];
    RandomSource rng(2);
    for (std::uint64_t c = 0; c < 7; ++c) {
        CHECK(sampler.class_size(c) == expected[c]);
        for (int k = 0; k < 20; ++k) {
            const auto m = sampler.draw(c, rng);
            REQUIRE(m.has_value());
            CHECK(naive::sum_mask(inst, *m) % 7 == c);
        }
    }
}

TEST_CASE("modular_sampler")
{
    const auto ones = Instance(std::vector<BigInt>(20, 1), 10);
    RandomSource rng(31);
    int hits = 0;
    for (int k = 0; k < 100; ++k) {
        const auto out = modular_sampler(ones, 0.5, rng, std::uint64_t{1024} * 20);
        if (out.found()) {
            CHECK(ones.is_solution(*out.witness));
            ++hits;
        }
        CHECK(out.cost.samples_drawn <= 1024 * 20);
    }
    CHECK(hits >= 99);
    const auto none = modular_sampler(ones, 0.5, rng, 0);
    CHECK_FALSE(none.found());
    CHECK(none.budget_exhausted);
    CHECK(sampler_modulus_floor(20, 1.0) >= 3);
}

TEST_CASE("no false positives")
{
    RandomSource rng(77);
    for (int k = 0; k < 100; ++k) {
        auto inst = gen_random_density(12, 1.0, rng);
        inst = inst.with_target(inst.total() + 1);
        CHECK_FALSE(brute_solve(inst).found());
        CHECK_FALSE(bellman_dp(inst).found());
        CHECK_FALSE(meet_in_middle(inst).found());
        CHECK_FALSE(schroeppel_shamir(inst).found());
        CHECK_FALSE(modular_sampler(inst, 0.5, rng, 500).found());
    }
}
